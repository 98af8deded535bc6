#include "symrank/kernels.hpp"

#include <cassert>

namespace symrank::simd {

void axpy_mod_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c,
                     std::uint64_t m) {
    assert(dst.size() == src.size());
    c %= m;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const unsigned __int128 x = static_cast<unsigned __int128>(c) * src[i] + dst[i];
        dst[i] = static_cast<std::uint64_t>(x % m);
    }
}

}  // namespace symrank::simd
