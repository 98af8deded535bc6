#include "symrank/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace symrank::simd {

#ifndef SYMRANK_HAVE_AVX2
void axpy_mod_avx2(std::span<std::uint64_t>, std::span<const std::uint64_t>, std::uint64_t, std::uint64_t) {
    throw std::logic_error("axpy_mod_avx2: not compiled for this target");
}
#endif

bool avx2_available() noexcept {
#ifdef SYMRANK_HAVE_AVX2
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

namespace {

Isa initial_isa() noexcept {
    if (const char* env = std::getenv("SYMRANK_SIMD"); env && std::string(env) == "scalar") return Isa::scalar;
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

void set_isa(Isa isa) noexcept {
    if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
    selected().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpy_mod(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c, std::uint64_t m) {
    if (active_isa() == Isa::avx2 && m <= kAvx2ModulusLimit)
        axpy_mod_avx2(dst, src, c, m);
    else
        axpy_mod_scalar(dst, src, c, m);
}

}  // namespace symrank::simd
