#pragma once

// Symmetric matrices over Z_m and the symmetry-preserving elimination steps.
//
// Residues are stored in [0, m-1]. This is the same residue system as
// {1, ..., m} with m identified with 0, so uniform sampling is unaffected.
// Indices are 0-based: the pivot entry is (0, 0) and the case-2 partner is
// row/column 1.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "symrank/arith.hpp"
#include "symrank/rng.hpp"

namespace symrank {

/// n x n symmetric matrix over Z_m, stored as the packed upper triangle
/// (row-major, n(n+1)/2 residues).
class SymMatrix {
public:
    SymMatrix(std::size_t n, std::uint64_t m);
    /// Takes packed upper-triangle residues; throws if any entry is >= m.
    SymMatrix(std::size_t n, std::uint64_t m, std::vector<std::uint64_t> packed);

    static SymMatrix identity(std::size_t n, std::uint64_t m);
    /// Full rows of integers; reduces mod m and rejects asymmetric input.
    static SymMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint64_t m);

    std::size_t dim() const noexcept { return n_; }
    std::uint64_t modulus() const noexcept { return m_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const noexcept { return entries_[index(i, j)]; }
    /// Stores value mod m at (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, std::uint64_t value);

    std::span<const std::uint64_t> packed() const noexcept { return entries_; }

    /// Dense row-major copy.
    std::vector<std::uint64_t> dense() const;

    /// Every entry reduced modulo new_modulus.
    SymMatrix reduced(std::uint64_t new_modulus) const;

    /// Simultaneous swap of rows i, j and columns i, j.
    SymMatrix swapped(std::size_t i, std::size_t j) const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

    static std::size_t packed_size(std::size_t n) noexcept { return n * (n + 1) / 2; }

private:
    std::size_t index(std::size_t i, std::size_t j) const noexcept {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_;
    std::uint64_t m_;
    std::vector<std::uint64_t> entries_;
};

/// Reads the text format: "n m" then n rows of n integers. Entries are
/// reduced mod m; asymmetric input throws std::invalid_argument.
SymMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const SymMatrix& a);

/// (p, mu) when m is a prime power, otherwise nullopt.
std::optional<PrimePower> as_prime_power(std::uint64_t m);

// ---------------------------------------------------------------------------

/// Each of the n(n+1)/2 free entries drawn independently and uniformly.
SymMatrix random_symmetric(std::size_t n, std::uint64_t m, Rng& rng);

/// Determinant of the integer lift (fraction-free elimination).
Integer det_lift(const SymMatrix& a);

/// det(A) mod m; the empty matrix has determinant 1.
std::uint64_t det_mod(const SymMatrix& a);

struct RankProfile {
    std::size_t rank = 0;
    /// Elementary-divisor valuations below mu, nondecreasing. Only filled for
    /// prime-power moduli.
    std::vector<int> valuations;
};

/// m-rank: the largest k with a k x k minor nonzero mod m.
RankProfile m_rank(const SymMatrix& a);

/// True iff det(A) != 0 mod m (equivalently m_rank(a).rank == n).
bool is_full_rank(const SymMatrix& a);

// ---------------------------------------------------------------------------
// Symmetric elimination over Z_{p^mu}

enum class CaseKind { case1 = 1, case2 = 2, case3 = 3, case4 = 4 };

struct ElimStep {
    CaseKind kind;
    /// a(0,0) for cases 1 and 3, the leading 2x2 block determinant for case 2,
    /// p^2 for case 4.
    std::uint64_t pivot_factor;
    /// A', A'' or A-bar, kept over the input modulus p^mu. Its effective
    /// modulus is p^(mu - modulus_shift). Empty for case 4 when mu < 2.
    std::optional<SymMatrix> residual;
    int modulus_shift;
    /// Index swapped with row/column 1 by eliminate() before a case-2 step.
    std::optional<std::size_t> swapped_with;
    /// Dense row-major U (cases 1, 3) or V (case 2) with T A T^t block
    /// diagonal mod p^mu. Empty for case 4.
    std::vector<std::uint64_t> transform;
};

/// Throws std::invalid_argument unless m is a prime power and n >= 1.
CaseKind classify_case(const SymMatrix& a);

/// Case 1 (a(0,0) a unit): clears row/column 0 by a unit lower-triangular
/// congruence. Requires n > 1.
ElimStep eliminate_case1(const SymMatrix& a);

/// Case 2 after permutation (a(0,0) = 0 mod p, a(0,1) a unit): clears rows and
/// columns 0-1 against the invertible 2x2 block. Requires n >= 2; n == 2
/// yields an empty residual.
ElimStep eliminate_case2(const SymMatrix& a);

/// Case 3 (row 0 = 0 mod p, a(0,0) != 0 mod p^2): the case-1 congruence with
/// multipliers solved modulo p^(mu-1). Requires n > 1.
ElimStep eliminate_case3(const SymMatrix& a);

/// Case 4: divides row and column 0 by p and re-randomizes the lost digits.
/// row_offsets[j-1] in [0, p) scales p^(mu-1) on entry (0, j); corner_offset
/// in [0, p^2) scales p^(mu-2) on (0, 0). det(A) = p^2 det(residual) mod p^mu.
ElimStep reduce_case4(const SymMatrix& a, std::span<const std::uint64_t> row_offsets, std::uint64_t corner_offset);

/// Case 4 with offsets drawn from rng (nothing is drawn when mu < 2).
ElimStep reduce_case4(const SymMatrix& a, Rng& rng);

/// Swaps the smallest j >= 1 with a(0, j) != 0 mod p into position 1.
/// Returns nullopt when no such j exists.
std::optional<std::pair<SymMatrix, std::size_t>> case2_permute(const SymMatrix& a);

/// Classifies and applies the matching step (case-2 permutation included).
ElimStep eliminate(const SymMatrix& a, Rng& rng);

}  // namespace symrank
