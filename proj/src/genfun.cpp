#include "symrank/genfun.hpp"

#include <algorithm>
#include <stdexcept>

namespace symrank {

Polynomial::Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(const Rational& constant) : c_{constant} { trim(); }

Polynomial Polynomial::linear(const Rational& c0, const Rational& c1) { return Polynomial(std::vector<Rational>{c0, c1}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> coeffs(degree + 1, Rational(0));
    coeffs[degree] = c;
    return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
}

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.coeff(0) == 0) throw std::invalid_argument("RationalFunction: denominator vanishes at x = 0");
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

bool equivalent(const RationalFunction& a, const RationalFunction& b) {
    return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

// ---------------------------------------------------------------------------

namespace {

// 1 + c x^2
Polynomial quadratic(const Rational& c) { return Polynomial(std::vector<Rational>{1, 0, c}); }

}  // namespace

RationalFunction gf(unsigned n, const Rational& q) {
    const Polynomial x = Polynomial::monomial(1, 1);
    if (n == 0) return {x, Polynomial::linear(1, -1)};

    const unsigned k = n / 2;
    // Odd form for 2k+1. The (1 - q x^2) factor cancels against the j = 0
    // term of the product, leaving x (1 - q) / ((1 - x)(1 - q x)).
    Polynomial num = Polynomial::monomial(1 - q, 1);
    Polynomial den = Polynomial::linear(1, -1) * Polynomial::linear(1, -q);
    Rational q_odd = q;  // q^(2j+1)
    const Rational q2 = q * q;
    for (unsigned j = 1; j <= k; ++j) {
        q_odd *= q2;
        num = num * Polynomial(1 - q_odd);
        den = den * quadratic(-q_odd);
    }
    if (n % 2 == 1) return {num, den};

    // Even n = 2k: multiply by (1 - q^(2k+1) x) / (1 - q^(2k+1)); q_odd is q^(2k+1) here.
    return {num * Polynomial::linear(1, -q_odd), den * Polynomial(1 - q_odd)};
}

PowerSeries series(const RationalFunction& f, unsigned order) {
    const auto& num = f.numerator();
    const auto& den = f.denominator();
    const Rational lead = den.coeff(0);
    if (lead == 0) throw std::invalid_argument("series: denominator vanishes at x = 0");

    PowerSeries out;
    out.coefficients.reserve(order + 1);
    const long den_degree = den.degree();
    for (unsigned i = 0; i <= order; ++i) {
        Rational c = num.coeff(i);
        for (long j = 1; j <= den_degree && j <= static_cast<long>(i); ++j)
            c -= den.coeff(static_cast<std::size_t>(j)) * out.coefficients[i - static_cast<unsigned>(j)];
        out.coefficients.push_back(c / lead);
    }
    return out;
}

Rational p_genfun(unsigned n, std::uint64_t p, long mu) {
    if (mu < 1) throw std::invalid_argument("p_genfun: need mu >= 1");
    const Rational q = make_rational(1, Integer(static_cast<unsigned long>(p)));
    return series(gf(n, q), static_cast<unsigned>(mu)).coefficients.back();
}

bool verify_functional_eq(unsigned n, const Rational& q, unsigned order) {
    if (n == 0) throw std::invalid_argument("verify_functional_eq: need n >= 1");
    const Rational qn = power(q, n);
    const RationalFunction lhs = RationalFunction(quadratic(-qn * q), Polynomial(Rational(1))) * gf(n, q);
    RationalFunction rhs = RationalFunction(Polynomial::linear(1 - q, (1 - q) * qn), Polynomial(Rational(1))) * gf(n - 1, q);
    if (n >= 2) rhs = rhs + RationalFunction(Polynomial(q * (1 - power(q, n - 1))), Polynomial(Rational(1))) * gf(n - 2, q);

    if (!equivalent(lhs, rhs)) return false;
    return series(lhs, order).coefficients == series(rhs, order).coefficients;
}

bool verify_odd_step(unsigned k, const Rational& q) {
    const Rational c = power(q, 2 * k + 3);
    const RationalFunction step(Polynomial(1 - c), quadratic(-c));
    return equivalent(gf(2 * k + 3, q), step * gf(2 * k + 1, q));
}

bool verify_even_step(unsigned k, const Rational& q) {
    const Rational c = power(q, 2 * k + 1);
    const RationalFunction step(Polynomial::linear(1, -c), Polynomial(1 - c));
    return equivalent(gf(2 * k, q), step * gf(2 * k + 1, q));
}

}  // namespace symrank
