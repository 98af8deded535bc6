#pragma once

// Ground truth for the formula routes: exhaustive enumeration of every
// symmetric matrix over Z_m for tiny (n, m), and a seeded Monte Carlo
// estimator for larger sizes.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "symrank/arith.hpp"
#include "symrank/symmat.hpp"

namespace symrank {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// SYMRANK_BUDGET when set to a positive integer, else kDefaultBudget.
std::uint64_t budget_from_env();

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::optional<std::uint64_t> required, std::uint64_t budget);
    /// nullopt when the count does not even fit 64 bits.
    std::optional<std::uint64_t> required;
    std::uint64_t budget;
};

/// m^(n(n+1)/2), or nullopt on 64-bit overflow.
std::optional<std::uint64_t> enumeration_size(std::size_t n, std::uint64_t m);

/// Calls fn(matrix) for every symmetric n x n matrix over Z_m, odometer over
/// the packed triangle with the last entry fastest, starting at index `first`
/// and visiting `count` matrices.
template <typename Fn>
void for_each_symmetric(std::size_t n, std::uint64_t m, std::uint64_t first, std::uint64_t count, Fn&& fn) {
    const std::size_t len = SymMatrix::packed_size(n);
    std::vector<std::uint64_t> digits(len, 0);
    for (std::size_t i = len; i-- > 0 && first > 0;) {
        digits[i] = first % m;
        first /= m;
    }
    for (std::uint64_t visited = 0; visited < count; ++visited) {
        fn(SymMatrix(n, m, digits));
        for (std::size_t i = len; i-- > 0;) {
            if (++digits[i] < m) break;
            digits[i] = 0;
        }
    }
}

struct ExhaustiveReport {
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t total = 0;
    std::uint64_t full_rank_count = 0;
    std::map<std::uint64_t, std::uint64_t> det_histogram;   // det mod m -> count
    std::map<std::size_t, std::uint64_t> rank_histogram;    // m-rank -> count

    Rational full_rank_fraction() const {
        return make_rational(Integer(static_cast<unsigned long>(full_rank_count)),
                             Integer(static_cast<unsigned long>(total)));
    }
};

/// Throws BudgetExceeded when m^(n(n+1)/2) > budget. Work is sharded over
/// `workers` threads; counts are identical for any worker count.
ExhaustiveReport exhaustive(std::size_t n, std::uint64_t m, std::uint64_t budget = budget_from_env(),
                            unsigned workers = 1);

/// Counts of case 1..4 (index 0..3) over all matrices; m must be a prime power
/// and n >= 1.
struct CaseTally {
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t total = 0;

    Rational fraction(int case_number) const {
        return make_rational(Integer(static_cast<unsigned long>(counts[static_cast<std::size_t>(case_number - 1)])),
                             Integer(static_cast<unsigned long>(total)));
    }
};
CaseTally exhaustive_case_tally(std::size_t n, std::uint64_t m, std::uint64_t budget = budget_from_env());

struct MCEstimate {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    Rational estimate;
    double ci_low = 0.0;  // normal-approximation 99% interval
    double ci_high = 1.0;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    bool covers(const Rational& exact) const {
        const double x = exact.get_d();
        return ci_low <= x && x <= ci_high;
    }
};

/// 99% interval for hits/trials. At 0 or trials hits it falls back to the
/// exact one-sided binomial bound.
std::pair<double, double> confidence_interval_99(std::uint64_t hits, std::uint64_t trials);

/// Estimates P(n, m). Deterministic for fixed (seed, trials, workers): worker w
/// draws its share of trials from Rng::derive_seed(seed, w).
MCEstimate monte_carlo(std::size_t n, std::uint64_t m, std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

/// m-rank histogram over sampled matrices.
std::map<std::size_t, std::uint64_t> rank_histogram_mc(std::size_t n, std::uint64_t m, std::uint64_t trials,
                                                       std::uint64_t seed);

}  // namespace symrank
