#include "symrank/prob.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "symrank/genfun.hpp"

namespace symrank {

namespace {

Rational inverse_of(std::uint64_t p) { return make_rational(1, Integer(static_cast<unsigned long>(p))); }

void require_prime(std::uint64_t p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

void require_interior(long n, long mu, const char* who) {
    if (n < 1 || mu < 1) throw std::invalid_argument(std::string(who) + ": need n >= 1 and mu >= 1");
}

}  // namespace

std::string_view route_name(Route route) noexcept {
    switch (route) {
        case Route::recurrence5: return "r5";
        case Route::recurrence3: return "r3";
        case Route::explicit_form: return "explicit";
        case Route::genfun: return "genfun";
        case Route::multiplicative: return "multiplicative";
    }
    return "?";
}

Route parse_route(std::string_view name) {
    if (name == "r5") return Route::recurrence5;
    if (name == "r3") return Route::recurrence3;
    if (name == "explicit") return Route::explicit_form;
    if (name == "genfun") return Route::genfun;
    throw std::invalid_argument("unknown route '" + std::string(name) + "' (expected r5|r3|explicit|genfun)");
}

std::optional<Rational> p_boundary(long n, long mu) {
    if (mu <= 0) return Rational(0);
    if (n == 0) return Rational(1);
    return std::nullopt;
}

// ---------------------------------------------------------------------------

FiveTermTable::FiveTermTable(std::uint64_t p) : p_(p), q_(inverse_of(p)), q_pow_{Rational(1)} {
    require_prime(p, "FiveTermTable");
}

void FiveTermTable::extend(std::size_t n_max, std::size_t mu_max) {
    while (q_pow_.size() < n_max + 2) q_pow_.push_back(q_pow_.back() * q_);
    if (rows_.size() < mu_max) rows_.resize(mu_max);

    // Row mu needs rows mu-1 and mu-2 at the same or smaller n, so filling
    // rows in increasing mu and each row in increasing n is enough.
    auto value = [&](long n, long mu) -> const Rational& {
        static const Rational zero = 0, one = 1;
        if (mu <= 0) return zero;
        if (n == 0) return one;
        return rows_[static_cast<std::size_t>(mu - 1)][static_cast<std::size_t>(n)];
    };
    const Rational& q = q_;
    for (std::size_t mu = 1; mu <= mu_max; ++mu) {
        auto& row = rows_[mu - 1];
        if (row.empty()) row.emplace_back(1);  // n = 0
        for (std::size_t n = row.size(); n <= n_max; ++n) {
            const long ln = static_cast<long>(n), lmu = static_cast<long>(mu);
            Rational v = (1 - q) * value(ln - 1, lmu);
            if (n >= 2) v += q * (1 - q_pow_[n - 1]) * value(ln - 2, lmu);
            v += q_pow_[n] * (1 - q) * value(ln - 1, lmu - 1);
            v += q_pow_[n + 1] * value(ln, lmu - 2);
            row.push_back(std::move(v));
        }
    }
}

Rational FiveTermTable::at(long n, long mu) {
    if (n < 0) throw std::invalid_argument("FiveTermTable: need n >= 0");
    if (auto b = p_boundary(n, mu)) return *b;
    const auto un = static_cast<std::size_t>(n), umu = static_cast<std::size_t>(mu);
    if (rows_.size() < umu || rows_[umu - 1].size() <= un) extend(un, umu);
    return rows_[umu - 1][un];
}

Rational p_recurrence5(long n, std::uint64_t p, long mu) { return FiveTermTable(p).at(n, mu); }

// ---------------------------------------------------------------------------

namespace {

// Odd n only: P(1, p^mu) = 1 - q^mu, then
// P(n, p^mu) = (1 - q^n) P(n-2, p^mu) + q^n P(n, p^(mu-2)).
class OddChain {
public:
    explicit OddChain(std::uint64_t p) : q_(inverse_of(p)) {}

    const Rational& at(long n, long mu) {
        static const Rational zero = 0;
        if (mu <= 0) return zero;
        auto key = std::make_pair(n, mu);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Rational v;
        if (n == 1) {
            v = 1 - power(q_, static_cast<unsigned long>(mu));
        } else {
            const Rational qn = power(q_, static_cast<unsigned long>(n));
            v = (1 - qn) * at(n - 2, mu) + qn * at(n, mu - 2);
        }
        return memo_.emplace(key, std::move(v)).first->second;
    }

    const Rational& q() const { return q_; }

private:
    Rational q_;
    std::map<std::pair<long, long>, Rational> memo_;
};

}  // namespace

Rational p_recurrence3(long n, std::uint64_t p, long mu) {
    require_prime(p, "p_recurrence3");
    if (n < 0 || mu < 1) throw std::invalid_argument("p_recurrence3: need n >= 0 and mu >= 1");
    OddChain chain(p);
    if (n % 2 == 1) return chain.at(n, mu);
    // even n from odd n+1: P(n) = (P(n+1, p^mu) - q^(n+1) P(n+1, p^(mu-1))) / (1 - q^(n+1))
    const Rational qn1 = power(chain.q(), static_cast<unsigned long>(n + 1));
    return (chain.at(n + 1, mu) - qn1 * chain.at(n + 1, mu - 1)) / (1 - qn1);
}

// ---------------------------------------------------------------------------

Rational p_explicit(long n, std::uint64_t p, long mu) {
    require_prime(p, "p_explicit");
    require_interior(n, mu, "p_explicit");
    const ProbQuery query{n, p, mu};
    const Rational q = query.q();
    const Rational q2 = q * q;
    const auto k = static_cast<unsigned>(query.k_floor());
    const auto s = static_cast<unsigned>(query.s());

    const Rational prefactor = pochhammer(2 * k, q) / ((1 - q) * pochhammer(k, q2));
    return prefactor * ((1 - power(q, 2 * k + 1)) * t_beta(3, k, s, q) -
                        power(q, static_cast<unsigned long>(mu)) * (1 - power(q, static_cast<unsigned long>(n))) *
                            t_beta(1, k, s, q));
}

Rational r_term(long n, std::uint64_t p, long mu) {
    require_prime(p, "r_term");
    require_interior(n, mu, "r_term");
    const ProbQuery query{n, p, mu};
    const Rational q = query.q();
    const auto k = query.k_floor();
    const auto s = static_cast<unsigned long>(query.s());

    const Rational lead = power(q, static_cast<unsigned long>(mu)) * (1 - power(q, static_cast<unsigned long>(n)));
    const Rational q_2s2 = power(q, 2 * s + 2);
    const Rational q2 = q * q;

    // weight_j = q^(2j) Pi_{2j}(q) Pi_{j+s}(q^2) / (Pi_j(q^2)^2 Pi_s(q^2)), weight_0 = 1, and
    // weight_j / weight_{j-1} = q^2 (1 - q^(2j-1)) (1 - q^(2j+2s)) / (1 - q^(2j)).
    Rational sum = 0;
    Rational weight = 1;
    Rational q_odd = q;  // q^(2j+1)
    for (long j = 0; j < k; ++j) {
        if (j > 0) {
            const auto uj = static_cast<unsigned long>(j);
            weight *= q2 * (1 - power(q, 2 * uj - 1)) * (1 - power(q, 2 * uj + 2 * s)) / (1 - power(q, 2 * uj));
        }
        sum += (lead - q_2s2 * (1 - q_odd)) * weight;
        q_odd *= q2;
    }
    return power(q, s + 1) * sum;
}

Rational q_explicit(long n, std::uint64_t p, long mu) {
    require_prime(p, "q_explicit");
    require_interior(n, mu, "q_explicit");
    const Rational q = inverse_of(p);
    const Rational lead = power(q, static_cast<unsigned long>(mu)) * (1 - power(q, static_cast<unsigned long>(n)));
    return (lead - r_term(n, p, mu)) / (1 - q);
}

// ---------------------------------------------------------------------------

Rational probability(long n, std::uint64_t p, long mu, Route route) {
    require_prime(p, "probability");
    if (n < 0) throw std::invalid_argument("probability: need n >= 0");
    if (auto b = p_boundary(n, mu)) return *b;
    switch (route) {
        case Route::recurrence5: return p_recurrence5(n, p, mu);
        case Route::recurrence3: return p_recurrence3(n, p, mu);
        case Route::explicit_form: return 1 - q_explicit(n, p, mu);
        case Route::genfun: return p_genfun(static_cast<unsigned>(n), p, mu);
        case Route::multiplicative: break;
    }
    throw std::invalid_argument("probability: multiplicative is not a prime-power route");
}

Rational q_general(long n, std::uint64_t m, Route route) {
    if (m < 2) throw std::invalid_argument("q_general: need m >= 2");
    if (n < 0) throw std::invalid_argument("q_general: need n >= 0");
    Rational product = 1;
    for (const auto& pp : factorize(m)) product *= 1 - probability(n, pp.prime(), pp.exponent(), route);
    return product;
}

ProbResult evaluate(long n, std::uint64_t m, Route route) {
    if (route == Route::multiplicative) route = Route::explicit_form;
    const auto factors = factorize(m);
    Rational q = q_general(n, m, route);
    Rational p = 1 - q;
    return {std::move(p), std::move(q), factors.size() == 1 ? route : Route::multiplicative};
}

// ---------------------------------------------------------------------------

BoundedValue limit_interval(std::uint64_t p, long mu) {
    const Rational q = inverse_of(p);
    const Rational qmu = power(q, static_cast<unsigned long>(mu));
    return {qmu, qmu / (1 - q)};
}

BoundedValue p_limit(std::uint64_t p, long mu, const Rational& eps) {
    require_prime(p, "p_limit");
    if (mu < 1) throw std::invalid_argument("p_limit: need mu >= 1");
    if (eps <= 0) throw std::invalid_argument("p_limit: need eps > 0");

    const ProbQuery query{0, p, mu};
    const Rational q = query.q();
    const Rational q2 = q * q;
    const auto s = static_cast<unsigned long>(query.s());

    // sum_{j=0}^{s} (q^(3j) - q^(mu+j)) / Pi_j(q^2), every term positive
    Rational sum = 0;
    for (unsigned long j = 0; j <= s; ++j)
        sum += (power(q, 3 * j) - power(q, static_cast<unsigned long>(mu) + j)) / pochhammer(static_cast<unsigned>(j), q2);
    const Rational scale = sum / (1 - q);

    Rational inner = eps / 4;
    for (;;) {
        const BoundedValue num = pochhammer_infinite(q, inner);
        const BoundedValue den = pochhammer_infinite(q2, inner);
        if (den.lower > 0) {
            BoundedValue result(num.lower * scale / den.upper, num.upper * scale / den.lower);
            if (result.width() <= eps) return result;
        }
        inner /= 4;
    }
}

BoundedValue q_limit(std::uint64_t p, long mu, const Rational& eps) {
    const BoundedValue pl = p_limit(p, mu, eps);
    return {1 - pl.upper, 1 - pl.lower};
}

// ---------------------------------------------------------------------------

Rational det_value_prob(long n, std::uint64_t p, std::int64_t d) {
    require_prime(p, "det_value_prob");
    if (n < 1) throw std::invalid_argument("det_value_prob: need n >= 1");
    const auto sp = static_cast<std::int64_t>(p);
    if (d % sp == 0) throw std::invalid_argument("det_value_prob: d must be nonzero mod p (use q_explicit for 0)");

    const ProbQuery query{n, p, 1};
    const Rational q = query.q();
    const auto k = static_cast<unsigned>(query.k_ceil());

    int sign_s = 0;
    if (p != 2 && n % 2 == 0) {
        const bool odd_power = (static_cast<std::uint64_t>(k) * ((p - 1) / 2)) % 2 == 1;
        sign_s = legendre(d, p) * (odd_power ? -1 : 1);
    }
    return q / (1 - q) * pochhammer(2 * k, q) / pochhammer(k, q * q) * (1 + sign_s * power(q, k));
}

// ---------------------------------------------------------------------------

std::optional<MonotonicityViolation> find_monotonicity_violation(long n_max, std::uint64_t p, long mu_max) {
    FiveTermTable table(p);
    for (long n = 0; n <= n_max; ++n) {
        for (long mu = 0; mu <= mu_max; ++mu) {
            Rational here = table.at(n, mu);
            Rational next_n = table.at(n + 1, mu);
            Rational next_mu = table.at(n, mu + 1);
            if (next_n > here) return MonotonicityViolation{n, mu, true, std::move(next_n), std::move(here)};
            if (here > next_mu) return MonotonicityViolation{n, mu, false, std::move(here), std::move(next_mu)};
        }
    }
    return std::nullopt;
}

bool monotonicity_check(long n_max, std::uint64_t p, long mu_max) {
    return !find_monotonicity_violation(n_max, p, mu_max).has_value();
}

}  // namespace symrank
