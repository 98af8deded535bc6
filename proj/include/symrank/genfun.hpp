#pragma once

// Generating functions sum_{mu >= 1} P(n, p^mu) x^mu as exact rational
// functions of x, their power-series expansion, and the functional equations
// linking consecutive n.

#include <cstdint>
#include <vector>

#include "symrank/arith.hpp"

namespace symrank {

/// Dense polynomial in x with exact coefficients; trailing zeros are trimmed.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)

    /// c0 + c1 x, handy for the linear factors everywhere below.
    static Polynomial linear(const Rational& c0, const Rational& c1);
    static Polynomial monomial(const Rational& c, std::size_t degree);

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

/// num / den with den(0) != 0, so the expansion at x = 0 exists. Not reduced;
/// equality is decided by cross-multiplication.
class RationalFunction {
public:
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);

private:
    Polynomial num_;
    Polynomial den_;
};

/// num1 * den2 == num2 * den1 as polynomials.
bool equivalent(const RationalFunction& a, const RationalFunction& b);

struct PowerSeries {
    std::vector<Rational> coefficients;  // index = power of x
};

/// Closed form of the generating function for dimension n at the given q.
RationalFunction gf(unsigned n, const Rational& q);

/// Coefficients of x^0 .. x^order by long division. Throws
/// std::invalid_argument when den(0) == 0.
PowerSeries series(const RationalFunction& f, unsigned order);

/// P(n, p^mu) as the x^mu coefficient of gf(n, 1/p). Requires mu >= 1.
Rational p_genfun(unsigned n, std::uint64_t p, long mu);

/// (1 - q^(n+1) x^2) G_n = (1 - q)(1 + q^n x) G_{n-1} + q (1 - q^(n-1)) G_{n-2}
/// as a rational-function identity, plus agreement of both sides' series up
/// to x^order. For n == 1 the G_{n-2} coefficient vanishes and is dropped.
bool verify_functional_eq(unsigned n, const Rational& q, unsigned order);

/// G_{2k+3} = (1 - q^(2k+3)) / (1 - q^(2k+3) x^2) G_{2k+1}.
bool verify_odd_step(unsigned k, const Rational& q);

/// G_{2k} = (1 - q^(2k+1) x) / (1 - q^(2k+1)) G_{2k+1}.
bool verify_even_step(unsigned k, const Rational& q);

}  // namespace symrank
