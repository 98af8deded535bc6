#pragma once

// Modular row-update kernel used by the word-size elimination in symmat.
//
// axpy_mod computes dst[i] = (dst[i] + c * src[i]) mod m with every operand a
// residue in [0, m). A scalar reference and an AVX2 variant exist; the
// dispatcher picks AVX2 when the CPU reports it and m fits the vector path,
// and the two are equivalence-tested against each other.

#include <cstdint>
#include <span>
#include <string_view>

namespace symrank::simd {

enum class Isa { scalar, avx2 };

/// Largest modulus the AVX2 path accepts. Products c*src stay below 2^50 so
/// the double-precision quotient estimate is off by at most one.
inline constexpr std::uint64_t kAvx2ModulusLimit = std::uint64_t{1} << 25;

void axpy_mod_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c,
                     std::uint64_t m);

/// Requires avx2_available() and m <= kAvx2ModulusLimit.
void axpy_mod_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c,
                   std::uint64_t m);

/// Runtime-dispatched entry point.
void axpy_mod(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c, std::uint64_t m);

/// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available() noexcept;

/// ISA used by axpy_mod for moduli within the vector limit. Setting
/// SYMRANK_SIMD=scalar in the environment forces the reference path.
Isa active_isa() noexcept;

/// Overrides the dispatch choice (tests and benchmarking). Requesting avx2 on
/// a machine without it keeps scalar.
void set_isa(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

}  // namespace symrank::simd
