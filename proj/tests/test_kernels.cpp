#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "symrank/kernels.hpp"
#include "symrank/rng.hpp"

using namespace symrank;

namespace {

std::vector<std::uint64_t> residues(Rng& rng, std::size_t len, std::uint64_t m) {
    std::vector<std::uint64_t> v(len);
    for (auto& x : v) x = rng.uniform_below(m);
    return v;
}

std::vector<std::uint64_t> naive(std::vector<std::uint64_t> dst, const std::vector<std::uint64_t>& src,
                                 std::uint64_t c, std::uint64_t m) {
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) * src[i] + dst[i]) % m);
    return dst;
}

}  // namespace

TEST_CASE("scalar kernel matches the naive formula") {
    Rng rng(7);
    for (std::uint64_t m : {2ULL, 3ULL, 97ULL, 1ULL << 40, 18446744073709551557ULL}) {
        for (std::size_t len : {0u, 1u, 5u, 33u}) {
            auto dst = residues(rng, len, m);
            const auto src = residues(rng, len, m);
            const std::uint64_t c = rng.uniform_below(m);
            const auto want = naive(dst, src, c, m);
            simd::axpy_mod_scalar(dst, src, c, m);
            CHECK(dst == want);
        }
    }
}

TEST_CASE("avx2 kernel is equivalent to scalar") {
    if (!simd::avx2_available()) {
        MESSAGE("AVX2 not available; equivalence test skipped");
        return;
    }
    Rng rng(11);
    const std::vector<std::uint64_t> moduli{2, 3, 4, 5, 7, 8, 9, 12, 243, 65521, (1u << 24) + 1,
                                            simd::kAvx2ModulusLimit - 1, simd::kAvx2ModulusLimit};
    for (std::uint64_t m : moduli) {
        for (std::size_t len : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 1001u}) {
            for (int rep = 0; rep < 4; ++rep) {
                auto a = residues(rng, len, m);
                auto b = a;
                const auto src = residues(rng, len, m);
                std::uint64_t c = rng.uniform_below(m);
                if (rep == 0) c = m - 1;  // largest products
                if (rep == 1) std::fill(b.begin(), b.end(), m - 1), a = b;
                simd::axpy_mod_scalar(a, src, c, m);
                simd::axpy_mod_avx2(b, src, c, m);
                CAPTURE(m);
                CAPTURE(len);
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("dispatcher honours the selected isa") {
    const auto saved = simd::active_isa();
    Rng rng(3);
    auto x = residues(rng, 17, 1000003);
    auto y = x;
    const auto src = residues(rng, 17, 1000003);

    simd::set_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    simd::axpy_mod(x, src, 12345, 1000003);

    simd::set_isa(simd::Isa::avx2);
    CHECK(simd::active_isa() == (simd::avx2_available() ? simd::Isa::avx2 : simd::Isa::scalar));
    simd::axpy_mod(y, src, 12345, 1000003);
    CHECK(x == y);

    // moduli past the vector limit fall back to scalar
    const std::uint64_t big = simd::kAvx2ModulusLimit * 4 + 1;
    auto u = residues(rng, 9, big);
    const auto want = naive(u, src, 5, big);
    simd::axpy_mod(u, std::vector<std::uint64_t>(src.begin(), src.begin() + 9), 5, big);
    CHECK(u == want);

    simd::set_isa(saved);
    CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
}
