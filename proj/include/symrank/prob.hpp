#pragma once

// Probability that a random n x n symmetric matrix over Z_{p^mu} has
// m-rank n, by four independent routes:
//
//   recurrence5  five-term recurrence in (n, mu) with the P(0,.) = 1 and
//                P(., p^mu) = 0 (mu <= 0) boundary, memoized
//   recurrence3  three-term recurrence on odd n, even n recovered from n+1
//   explicit     closed form in Pi_n(q) and T_1, T_3 (and its Q companion)
//   genfun       coefficient of x^mu in the closed-form generating function
//
// Composite moduli go through Q(n, m) = prod Q(n, p_i^mu_i).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "symrank/arith.hpp"

namespace symrank {

enum class Route { recurrence5, recurrence3, explicit_form, genfun, multiplicative };

std::string_view route_name(Route route) noexcept;
/// Accepts "r5", "r3", "explicit", "genfun". Throws std::invalid_argument otherwise.
Route parse_route(std::string_view name);

/// Derived quantities for a query; nothing is cached so they cannot drift.
struct ProbQuery {
    long n;
    std::uint64_t p;
    long mu;

    Rational q() const { return make_rational(1, Integer(static_cast<unsigned long>(p))); }
    /// floor(n/2), used by the explicit solution.
    long k_floor() const { return n / 2; }
    /// ceil(n/2), used by the determinant-value distribution.
    long k_ceil() const { return (n + 1) / 2; }
    /// floor((mu-1)/2).
    long s() const { return (mu - 1) >= 0 ? (mu - 1) / 2 : -((2 - mu) / 2); }
};

struct ProbResult {
    Rational P;
    Rational Q;
    Route route;
};

/// 1 for n == 0 and mu > 0, 0 for mu <= 0, nullopt elsewhere.
std::optional<Rational> p_boundary(long n, long mu);

/// Memoized five-term recurrence for a fixed prime. Total in n >= 0 and any mu.
class FiveTermTable {
public:
    explicit FiveTermTable(std::uint64_t p);
    Rational at(long n, long mu);

private:
    void extend(std::size_t n_max, std::size_t mu_max);

    std::uint64_t p_;
    Rational q_;
    std::vector<Rational> q_pow_;         // q^i
    std::vector<std::vector<Rational>> rows_;  // rows_[mu-1][n], mu >= 1
};

Rational p_recurrence5(long n, std::uint64_t p, long mu);

/// Three-term recurrence. Requires n >= 0, mu >= 1.
Rational p_recurrence3(long n, std::uint64_t p, long mu);

/// Explicit solution. Requires n >= 1, mu >= 1.
Rational p_explicit(long n, std::uint64_t p, long mu);

/// Q = (q^mu (1 - q^n) - R) / (1 - q). Requires n >= 1, mu >= 1.
Rational q_explicit(long n, std::uint64_t p, long mu);

/// The remainder R of q_explicit; 0 <= R, and R = 0 iff floor(n/2) = 0.
Rational r_term(long n, std::uint64_t p, long mu);

/// P(n, p^mu) by the chosen route, boundaries included (n >= 0).
Rational probability(long n, std::uint64_t p, long mu, Route route = Route::explicit_form);

/// P and Q for any modulus m >= 2; composite m multiplies factor-wise Q values.
ProbResult evaluate(long n, std::uint64_t m, Route route = Route::explicit_form);

/// Q(n, m) via the prime-power factorization of m.
Rational q_general(long n, std::uint64_t m, Route route = Route::explicit_form);

/// Enclosure of lim_{n->inf} P(n, p^mu) with width <= eps.
BoundedValue p_limit(std::uint64_t p, long mu, const Rational& eps);
/// Complement of p_limit.
BoundedValue q_limit(std::uint64_t p, long mu, const Rational& eps);
/// [q^mu, q^mu / (1 - q)], the interval known to contain lim Q(n, p^mu).
BoundedValue limit_interval(std::uint64_t p, long mu);

/// Probability that det(A) = d (mod p) for 1 <= d mod p <= p-1 and n >= 1.
Rational det_value_prob(long n, std::uint64_t p, std::int64_t d);

struct MonotonicityViolation {
    long n;
    long mu;
    bool in_n;  // true: P(n+1, mu) > P(n, mu); false: P(n, mu) > P(n, mu+1)
    Rational smaller_expected;
    Rational larger_expected;
};

/// First violation of P(n+1,p^mu) <= P(n,p^mu) <= P(n,p^(mu+1)) over
/// 0 <= n <= n_max, 0 <= mu <= mu_max.
std::optional<MonotonicityViolation> find_monotonicity_violation(long n_max, std::uint64_t p, long mu_max);

bool monotonicity_check(long n_max, std::uint64_t p, long mu_max);

}  // namespace symrank
