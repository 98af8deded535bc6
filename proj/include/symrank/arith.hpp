#pragma once

// Exact rational arithmetic and the q-series helpers used by the probability
// formulas: finite and infinite q-Pochhammer products, the T_beta sums with
// their alternate closed forms, Legendre symbols and small-integer
// factorization.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace symrank {

using Integer = mpz_class;
using Rational = mpq_class;  // gmpxx keeps results canonical (lowest terms, den > 0)

/// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// base^exponent for a nonnegative exponent.
Rational power(const Rational& base, unsigned long exponent);

/// "num/den" in lowest terms, always with an explicit denominator.
std::string to_fraction_string(const Rational& value);

/// Parses "a", "a/b" or a plain decimal such as "1e-9" / "0.001" exactly.
Rational parse_rational(const std::string& text);

/// A prime p together with an exponent mu >= 1.
class PrimePower {
public:
    PrimePower(std::uint64_t p, int mu);

    std::uint64_t prime() const noexcept { return p_; }
    int exponent() const noexcept { return mu_; }
    /// p^mu. Throws std::overflow_error when it does not fit 64 bits.
    std::uint64_t value() const;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;

private:
    std::uint64_t p_;
    int mu_;
};

/// Closed interval [lower, upper] of exact rationals.
struct BoundedValue {
    Rational lower;
    Rational upper;

    BoundedValue(Rational lo, Rational hi);

    Rational width() const { return upper - lower; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
    bool contains(const BoundedValue& other) const {
        return lower <= other.lower && other.upper <= upper;
    }
};

// ---------------------------------------------------------------------------
// q-series

/// prod_{j=1}^{n} (1 - q^j); the empty product is 1.
Rational pochhammer(unsigned n, const Rational& q);

/// Enclosure of prod_{j>=1} (1 - q^j) with width <= eps, for 0 < q < 1.
///
/// Truncates at the first N with q^(N+1)/(1-q) <= eps and uses
/// 1 >= prod_{j>N} (1 - q^j) >= 1 - q^(N+1)/(1-q) for the tail.
BoundedValue pochhammer_infinite(const Rational& q, const Rational& eps);

/// T_beta(k, s) evaluated at q:
///   1                                                         if k == 0
///   sum_{j=0}^{s} q^(beta j) Pi_{k+j-1}(q^2) / (Pi_j(q^2) Pi_{k-1}(q^2))   otherwise.
Rational t_beta(unsigned beta, unsigned k, unsigned s, const Rational& q);

/// Alternate closed form of T_1(k, s) as a finite sum over j < k.
Rational t1_alt(unsigned k, unsigned s, const Rational& q);

/// Alternate closed form of T_3(k, s) as a finite sum over j < k.
Rational t3_alt(unsigned k, unsigned s, const Rational& q);

// ---------------------------------------------------------------------------
// elementary number theory

/// Deterministic primality for 64-bit inputs (Miller-Rabin with fixed bases).
bool is_prime(std::uint64_t n);

/// Legendre symbol (d | p) for an odd prime p. Throws std::invalid_argument
/// when p is 2 or not prime.
int legendre(std::int64_t d, std::uint64_t p);

/// Prime-power factorization by trial division, primes strictly increasing.
/// Throws std::invalid_argument for m < 2.
std::vector<PrimePower> factorize(std::uint64_t m);

/// a^e mod m for m >= 1.
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Inverse of a modulo m, which must be a unit. Throws std::domain_error otherwise.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

/// Largest v with p^v | x, capped at cap (x == 0 yields cap).
int valuation(std::uint64_t x, std::uint64_t p, int cap);

/// p^e, throwing std::overflow_error past 64 bits.
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

}  // namespace symrank
