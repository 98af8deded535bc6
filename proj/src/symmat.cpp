#include "symrank/symmat.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "symrank/kernels.hpp"

namespace symrank {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }
u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 reduce_signed(std::int64_t v, u64 m) {
    const auto sm = static_cast<__int128>(m);
    return static_cast<u64>(((static_cast<__int128>(v) % sm) + sm) % sm);
}

PrimePower require_prime_power(const SymMatrix& a) {
    auto pp = as_prime_power(a.modulus());
    if (!pp) throw std::invalid_argument("modulus " + std::to_string(a.modulus()) + " is not a prime power");
    return *pp;
}

}  // namespace

// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(std::size_t n, std::uint64_t m) : n_(n), m_(m), entries_(packed_size(n), 0) {
    if (m < 2) throw std::invalid_argument("SymMatrix: modulus must be >= 2");
}

SymMatrix::SymMatrix(std::size_t n, std::uint64_t m, std::vector<std::uint64_t> packed)
    : n_(n), m_(m), entries_(std::move(packed)) {
    if (m < 2) throw std::invalid_argument("SymMatrix: modulus must be >= 2");
    if (entries_.size() != packed_size(n)) throw std::invalid_argument("SymMatrix: packed size mismatch");
    for (u64 e : entries_)
        if (e >= m) throw std::invalid_argument("SymMatrix: entry out of residue range");
}

SymMatrix SymMatrix::identity(std::size_t n, std::uint64_t m) {
    SymMatrix a(n, m);
    for (std::size_t i = 0; i < n; ++i) a.set(i, i, 1);
    return a;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint64_t m) {
    const std::size_t n = rows.size();
    SymMatrix a(n, m);
    for (const auto& row : rows)
        if (row.size() != n) throw std::invalid_argument("from_rows: matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const u64 upper = reduce_signed(rows[i][j], m);
            if (upper != reduce_signed(rows[j][i], m))
                throw std::invalid_argument("from_rows: matrix is not symmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            a.entries_[a.index(i, j)] = upper;
        }
    }
    return a;
}

void SymMatrix::set(std::size_t i, std::size_t j, std::uint64_t value) { entries_[index(i, j)] = value % m_; }

std::vector<std::uint64_t> SymMatrix::dense() const {
    std::vector<u64> out(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] = (*this)(i, j);
    return out;
}

SymMatrix SymMatrix::reduced(std::uint64_t new_modulus) const {
    std::vector<u64> packed(entries_);
    for (u64& e : packed) e %= new_modulus;
    return SymMatrix(n_, new_modulus, std::move(packed));
}

SymMatrix SymMatrix::swapped(std::size_t i, std::size_t j) const {
    auto perm = [&](std::size_t k) { return k == i ? j : (k == j ? i : k); };
    SymMatrix out(n_, m_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = r; c < n_; ++c) out.entries_[out.index(r, c)] = (*this)(perm(r), perm(c));
    return out;
}

SymMatrix read_matrix(std::istream& in) {
    long long n = -1, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("matrix header must be 'n m'");
    if (n < 0) throw std::invalid_argument("matrix dimension must be >= 0");
    if (m < 2) throw std::invalid_argument("matrix modulus must be >= 2");
    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n), std::vector<std::int64_t>(n));
    for (auto& row : rows)
        for (auto& v : row)
            if (!(in >> v)) throw std::invalid_argument("matrix body truncated or not integral");
    std::string extra;
    if (in >> extra) throw std::invalid_argument("trailing data after matrix body");
    return SymMatrix::from_rows(rows, static_cast<u64>(m));
}

void write_matrix(std::ostream& out, const SymMatrix& a) {
    out << a.dim() << ' ' << a.modulus() << '\n';
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out << (j ? " " : "") << a(i, j);
        out << '\n';
    }
}

std::optional<PrimePower> as_prime_power(std::uint64_t m) {
    if (m < 2) return std::nullopt;
    auto factors = factorize(m);
    if (factors.size() != 1) return std::nullopt;
    return factors.front();
}

// ---------------------------------------------------------------------------

SymMatrix random_symmetric(std::size_t n, std::uint64_t m, Rng& rng) {
    if (m < 2) throw std::invalid_argument("random_symmetric: modulus must be >= 2");
    std::vector<u64> packed(SymMatrix::packed_size(n));
    for (u64& e : packed) e = rng.uniform_below(m);
    return SymMatrix(n, m, std::move(packed));
}

namespace {

// Fraction-free elimination. Every intermediate is a minor of the input, so
// Wide only has to hold a product of two minors.
template <typename T, typename Wide>
T bareiss(std::vector<T> a, std::size_t n) {
    if (n == 0) return T(1);
    T sign = 1;
    T prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r * n + k] == 0) ++r;
            if (r == n) return T(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
            sign = -sign;
        }
        const T pivot = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const Wide num = Wide(pivot) * Wide(a[i * n + j]) - Wide(a[i * n + k]) * Wide(a[k * n + j]);
                a[i * n + j] = T(num / Wide(prev));
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    return sign * a[n * n - 1];
}

// log2 of the Hadamard bound (sqrt(n) * (m - 1))^n, which dominates every minor.
double log2_minor_bound(std::size_t n, u64 m) {
    if (n == 0 || m < 2) return 0.0;
    return static_cast<double>(n) * (0.5 * std::log2(static_cast<double>(n)) + std::log2(static_cast<double>(m - 1)));
}

}  // namespace

Integer det_lift(const SymMatrix& a) {
    const std::size_t n = a.dim();
    if (log2_minor_bound(n, a.modulus()) < 61.0) {
        std::vector<std::int64_t> d(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i * n + j] = static_cast<std::int64_t>(a(i, j));
        const std::int64_t det = bareiss<std::int64_t, __int128>(std::move(d), n);
        return Integer(static_cast<long>(det));
    }
    std::vector<Integer> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mpz_set_ui(d[i * n + j].get_mpz_t(), a(i, j));
    return bareiss<Integer, Integer>(std::move(d), n);
}

std::uint64_t det_mod(const SymMatrix& a) {
    Integer det = det_lift(a);
    Integer m;
    mpz_set_ui(m.get_mpz_t(), a.modulus());
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), det.get_mpz_t(), m.get_mpz_t());
    return mpz_get_ui(r.get_mpz_t());
}

namespace {

// Elementary-divisor valuations of a dense n x n matrix over Z_{p^mu}.
// Pivots on the entry of least p-adic valuation (ties: lowest row, then
// column), clears its column with the row-update kernel and drops the pivot
// row and column. Stops once every remaining entry is 0 mod p^mu.
std::vector<int> elimination_valuations(std::vector<u64> a, std::size_t n, const PrimePower& pp) {
    const u64 p = pp.prime();
    const int mu = pp.exponent();
    const u64 m = pp.value();

    std::vector<bool> row_live(n, true), col_live(n, true);
    std::vector<int> valuations;
    for (std::size_t step = 0; step < n; ++step) {
        int best = mu;
        std::size_t pr = 0, pc = 0;
        for (std::size_t r = 0; r < n && best > 0; ++r) {
            if (!row_live[r]) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (!col_live[c]) continue;
                const int v = valuation(a[r * n + c], p, mu);
                if (v < best) {
                    best = v;
                    pr = r;
                    pc = c;
                    if (v == 0) break;
                }
            }
        }
        if (best >= mu) break;
        valuations.push_back(best);

        const u64 scale = checked_pow(p, static_cast<unsigned>(best));
        const u64 unit_inv = inverse_mod((a[pr * n + pc] / scale) % m, m);
        std::span<const u64> pivot_row(a.data() + pr * n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!row_live[r] || r == pr) continue;
            const u64 entry = a[r * n + pc];
            if (entry == 0) continue;
            const u64 factor = mul_mod(entry / scale, unit_inv, m);
            simd::axpy_mod(std::span<u64>(a.data() + r * n, n), pivot_row, neg_mod(factor, m), m);
        }
        row_live[pr] = false;
        col_live[pc] = false;
    }
    return valuations;
}

std::size_t rank_from_valuations(const std::vector<int>& valuations, int mu) {
    std::size_t rank = 0;
    int total = 0;
    for (int v : valuations) {
        total += v;
        if (total >= mu) break;
        ++rank;
    }
    return rank;
}

}  // namespace

RankProfile m_rank(const SymMatrix& a) {
    const auto factors = factorize(a.modulus());
    RankProfile profile;
    if (factors.size() == 1) {
        profile.valuations = elimination_valuations(a.dense(), a.dim(), factors.front());
        profile.rank = rank_from_valuations(profile.valuations, factors.front().exponent());
        return profile;
    }
    // A minor is nonzero mod m iff it is nonzero mod some p_i^mu_i.
    for (const auto& pp : factors) {
        const auto v = elimination_valuations(a.reduced(pp.value()).dense(), a.dim(), pp);
        profile.rank = std::max(profile.rank, rank_from_valuations(v, pp.exponent()));
    }
    return profile;
}

bool is_full_rank(const SymMatrix& a) { return m_rank(a).rank == a.dim(); }

// ---------------------------------------------------------------------------

namespace {

struct Congruence {
    std::vector<u64> result;     // T A T^t, dense
    std::vector<u64> transform;  // T, dense
};

// T = I + L where column k < t of L is multipliers[k] (zero in rows < t).
// Row pass then column pass, both through the row-update kernel.
Congruence apply_congruence(const SymMatrix& a, std::size_t t, const std::vector<std::vector<u64>>& multipliers) {
    const std::size_t n = a.dim();
    const u64 m = a.modulus();
    std::vector<u64> d = a.dense();
    auto row = [&](std::size_t i) { return std::span<u64>(d.data() + i * n, n); };

    for (std::size_t i = t; i < n; ++i)
        for (std::size_t k = 0; k < t; ++k) simd::axpy_mod(row(i), row(k), multipliers[k][i], m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < t; ++k) simd::axpy_mod(row(i), multipliers[k], d[i * n + k], m);

    std::vector<u64> transform(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        transform[i * n + i] = 1;
        for (std::size_t k = 0; k < t; ++k)
            if (i >= t) transform[i * n + k] = multipliers[k][i];
    }
    return {std::move(d), std::move(transform)};
}

SymMatrix trailing_block(const std::vector<u64>& dense, std::size_t n, std::size_t t, u64 m) {
    SymMatrix out(n - t, m);
    for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out.set(i - t, j - t, dense[i * n + j]);
    return out;
}

// Shared by cases 1 and 3: multipliers solve a00 * lambda_j = -a0j mod m,
// with a00 = p^shift * unit and every a0j divisible by p^shift.
ElimStep single_pivot(const SymMatrix& a, CaseKind kind, int shift, u64 p) {
    const std::size_t n = a.dim();
    const u64 m = a.modulus();
    const u64 scale = shift == 0 ? 1 : p;
    const u64 unit_inv = inverse_mod((a(0, 0) / scale) % m, m);

    std::vector<std::vector<u64>> lambda(1, std::vector<u64>(n, 0));
    for (std::size_t j = 1; j < n; ++j) lambda[0][j] = neg_mod(mul_mod(a(0, j) / scale, unit_inv, m), m);

    auto c = apply_congruence(a, 1, lambda);
    return ElimStep{kind, a(0, 0), trailing_block(c.result, n, 1, m), shift, std::nullopt, std::move(c.transform)};
}

void expect_case(const SymMatrix& a, CaseKind want, const char* who) {
    if (classify_case(a) != want) throw std::invalid_argument(std::string(who) + ": matrix is not in the expected case");
}

}  // namespace

CaseKind classify_case(const SymMatrix& a) {
    const PrimePower pp = require_prime_power(a);
    if (a.dim() == 0) throw std::invalid_argument("classify_case: empty matrix");
    const u64 p = pp.prime();
    const u64 a00 = a(0, 0);
    if (a00 % p != 0) return CaseKind::case1;
    for (std::size_t j = 1; j < a.dim(); ++j)
        if (a(0, j) % p != 0) return CaseKind::case2;
    // a00 is a residue below p^mu; 0 counts as divisible by every power of p.
    if (a00 != 0 && valuation(a00, p, pp.exponent()) < 2) return CaseKind::case3;
    return CaseKind::case4;
}

ElimStep eliminate_case1(const SymMatrix& a) {
    expect_case(a, CaseKind::case1, "eliminate_case1");
    if (a.dim() <= 1) throw std::invalid_argument("eliminate_case1: need n > 1");
    return single_pivot(a, CaseKind::case1, 0, require_prime_power(a).prime());
}

ElimStep eliminate_case3(const SymMatrix& a) {
    expect_case(a, CaseKind::case3, "eliminate_case3");
    if (a.dim() <= 1) throw std::invalid_argument("eliminate_case3: need n > 1");
    return single_pivot(a, CaseKind::case3, 1, require_prime_power(a).prime());
}

ElimStep eliminate_case2(const SymMatrix& a) {
    expect_case(a, CaseKind::case2, "eliminate_case2");
    const std::size_t n = a.dim();
    if (n < 2) throw std::invalid_argument("eliminate_case2: need n >= 2");
    const u64 p = require_prime_power(a).prime();
    const u64 m = a.modulus();
    if (a(0, 1) % p == 0) throw std::invalid_argument("eliminate_case2: a(0,1) must be a unit (permute first)");

    const u64 a00 = a(0, 0), a01 = a(0, 1), a11 = a(1, 1);
    const u64 block_det = sub_mod(mul_mod(a00, a11, m), mul_mod(a01, a01, m), m);
    const u64 det_inv = inverse_mod(block_det, m);

    // [lambda_j, mu_j]^t = -B^{-1} [a0j, a1j]^t with B^{-1} = det^{-1} [[a11, -a01], [-a01, a00]]
    std::vector<std::vector<u64>> mult(2, std::vector<u64>(n, 0));
    for (std::size_t j = 2; j < n; ++j) {
        const u64 a0j = a(0, j), a1j = a(1, j);
        const u64 x = sub_mod(mul_mod(a11, a0j, m), mul_mod(a01, a1j, m), m);
        const u64 y = sub_mod(mul_mod(a00, a1j, m), mul_mod(a01, a0j, m), m);
        mult[0][j] = neg_mod(mul_mod(det_inv, x, m), m);
        mult[1][j] = neg_mod(mul_mod(det_inv, y, m), m);
    }
    auto c = apply_congruence(a, 2, mult);
    return ElimStep{CaseKind::case2, block_det, trailing_block(c.result, n, 2, m), 0, std::nullopt,
                    std::move(c.transform)};
}

ElimStep reduce_case4(const SymMatrix& a, std::span<const std::uint64_t> row_offsets, std::uint64_t corner_offset) {
    expect_case(a, CaseKind::case4, "reduce_case4");
    const PrimePower pp = require_prime_power(a);
    const u64 p = pp.prime();
    const int mu = pp.exponent();
    const u64 m = a.modulus();
    const std::size_t n = a.dim();
    if (mu < 2) return ElimStep{CaseKind::case4, 0, std::nullopt, 2, std::nullopt, {}};

    if (row_offsets.size() != n - 1) throw std::invalid_argument("reduce_case4: need n-1 row offsets");
    for (u64 t : row_offsets)
        if (t >= p) throw std::invalid_argument("reduce_case4: row offset out of range [0, p)");
    if (corner_offset >= p * p) throw std::invalid_argument("reduce_case4: corner offset out of range [0, p^2)");

    const u64 row_unit = checked_pow(p, static_cast<unsigned>(mu - 1));
    const u64 corner_unit = checked_pow(p, static_cast<unsigned>(mu - 2));
    SymMatrix bar = a;
    bar.set(0, 0, a(0, 0) / (p * p) + corner_offset * corner_unit);
    for (std::size_t j = 1; j < n; ++j) bar.set(0, j, a(0, j) / p + row_offsets[j - 1] * row_unit);
    return ElimStep{CaseKind::case4, (p * p) % m, std::move(bar), 2, std::nullopt, {}};
}

ElimStep reduce_case4(const SymMatrix& a, Rng& rng) {
    expect_case(a, CaseKind::case4, "reduce_case4");
    const PrimePower pp = require_prime_power(a);
    if (pp.exponent() < 2) return reduce_case4(a, {}, 0);
    std::vector<u64> offsets(a.dim() - 1);
    for (u64& t : offsets) t = rng.uniform_below(pp.prime());
    const u64 corner = rng.uniform_below(pp.prime() * pp.prime());
    return reduce_case4(a, offsets, corner);
}

std::optional<std::pair<SymMatrix, std::size_t>> case2_permute(const SymMatrix& a) {
    const u64 p = require_prime_power(a).prime();
    for (std::size_t j = 1; j < a.dim(); ++j)
        if (a(0, j) % p != 0) return std::make_pair(j == 1 ? a : a.swapped(1, j), j);
    return std::nullopt;
}

ElimStep eliminate(const SymMatrix& a, Rng& rng) {
    const CaseKind kind = classify_case(a);
    const u64 m = a.modulus();
    switch (kind) {
        case CaseKind::case1:
        case CaseKind::case3: {
            if (a.dim() == 1) {
                const int shift = kind == CaseKind::case1 ? 0 : 1;
                return ElimStep{kind, a(0, 0), SymMatrix(0, m), shift, std::nullopt, {1}};
            }
            return kind == CaseKind::case1 ? eliminate_case1(a) : eliminate_case3(a);
        }
        case CaseKind::case2: {
            auto [permuted, j] = *case2_permute(a);
            ElimStep step = eliminate_case2(permuted);
            if (j != 1) step.swapped_with = j;
            return step;
        }
        case CaseKind::case4:
            return reduce_case4(a, rng);
    }
    throw std::logic_error("eliminate: unreachable");
}

}  // namespace symrank
