#include "symrank/kernels.hpp"

#include <cassert>

#include <immintrin.h>

namespace symrank::simd {

namespace {

// Exact int64 <-> double conversion for 0 <= x < 2^52 using the 2^52 bias.
inline __m256d to_double(__m256i x, __m256i bias_bits, __m256d bias) {
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, bias_bits)), bias);
}

inline __m256i to_int(__m256d x, __m256i bias_bits, __m256d bias) {
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(x, bias)), bias_bits);
}

}  // namespace

void axpy_mod_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c,
                   std::uint64_t m) {
    assert(dst.size() == src.size());
    assert(m <= kAvx2ModulusLimit);
    c %= m;

    const __m256i vm = _mm256_set1_epi64x(static_cast<long long>(m));
    const __m256i vm_minus_1 = _mm256_set1_epi64x(static_cast<long long>(m - 1));
    const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(c));
    const __m256i zero = _mm256_setzero_si256();
    const __m256d inv_m = _mm256_set1_pd(1.0 / static_cast<double>(m));
    const __m256i bias_bits = _mm256_set1_epi64x(0x4330000000000000LL);
    const __m256d bias = _mm256_set1_pd(4503599627370496.0);

    const std::size_t n = dst.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
        // residues < 2^25, so the low 32 bits carry the whole value
        __m256i x = _mm256_add_epi64(_mm256_loadu_si256(d), _mm256_mul_epu32(_mm256_loadu_si256(s), vc));

        __m256d quotient = _mm256_floor_pd(_mm256_mul_pd(to_double(x, bias_bits, bias), inv_m));
        __m256i r = _mm256_sub_epi64(x, _mm256_mul_epu32(to_int(quotient, bias_bits, bias), vm));

        // quotient may be off by one either way
        r = _mm256_add_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(zero, r), vm));
        r = _mm256_sub_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(r, vm_minus_1), vm));
        _mm256_storeu_si256(d, r);
    }
    if (i < n) axpy_mod_scalar(dst.subspan(i), src.subspan(i), c, m);
}

}  // namespace symrank::simd
