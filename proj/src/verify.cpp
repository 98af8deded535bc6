#include "symrank/verify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "symrank/arith.hpp"
#include "symrank/genfun.hpp"
#include "symrank/oracle.hpp"
#include "symrank/prob.hpp"

namespace symrank {

namespace {

std::string point(long n, std::uint64_t p, long mu) {
    std::ostringstream out;
    out << "n=" << n << " p=" << p << " mu=" << mu;
    return out.str();
}

std::string pair_of(std::string_view a_name, const Rational& a, std::string_view b_name, const Rational& b) {
    std::ostringstream out;
    out << a_name << '=' << to_fraction_string(a) << ' ' << b_name << '=' << to_fraction_string(b);
    return out.str();
}

std::string grid_summary(long n_lo, long n_max, long mu_max) {
    std::ostringstream out;
    out << "n in [" << n_lo << ',' << n_max << "], mu in [1," << mu_max << ']';
    return out.str();
}

Rational q_of(std::uint64_t p) { return make_rational(1, Integer(static_cast<unsigned long>(p))); }

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Records the first failure only; later ones would just repeat the story.
struct Collector {
    CheckLine line;
    explicit Collector(std::string label, std::string summary) {
        line.label = std::move(label);
        line.detail = std::move(summary);
    }
    void fail(std::string detail) {
        if (!line.pass) return;
        line.pass = false;
        line.detail = std::move(detail);
    }
};

void check_grid(const VerifyGrid& g) {
    if (g.p_list.empty()) throw std::invalid_argument("verify: empty prime list");
    for (auto p : g.p_list)
        if (!is_prime(p)) throw std::invalid_argument("verify: " + std::to_string(p) + " is not prime");
    if (g.n_max < 0 || g.mu_max < 1) throw std::invalid_argument("verify: need n-max >= 0 and mu-max >= 1");
}

SuiteReport crossroute(const VerifyGrid& g) {
    SuiteReport rep{"crossroute", {}};
    for (auto p : g.p_list) {
        const Rational q = q_of(p);
        const std::string ps = std::to_string(p);
        FiveTermTable table(p);

        Collector routes("routes r5/r3/explicit/genfun agree, p=" + ps, grid_summary(0, g.n_max, g.mu_max));
        Collector complement("explicit P + Q = 1, p=" + ps, grid_summary(1, g.n_max, g.mu_max));
        for (long n = 0; n <= g.n_max; ++n) {
            const PowerSeries gen = series(gf(static_cast<unsigned>(n), q), static_cast<unsigned>(g.mu_max));
            for (long mu = 1; mu <= g.mu_max; ++mu) {
                const Rational r5 = table.at(n, mu);
                const Rational r3 = p_recurrence3(n, p, mu);
                const Rational ex = probability(n, p, mu, Route::explicit_form);
                const Rational& gc = gen.coefficients[static_cast<std::size_t>(mu)];
                if (r3 != r5) routes.fail(point(n, p, mu) + ": " + pair_of("r5", r5, "r3", r3));
                if (ex != r5) routes.fail(point(n, p, mu) + ": " + pair_of("r5", r5, "explicit", ex));
                if (gc != r5) routes.fail(point(n, p, mu) + ": " + pair_of("r5", r5, "genfun", gc));
                if (n >= 1) {
                    const Rational pe = p_explicit(n, p, mu);
                    const Rational qe = q_explicit(n, p, mu);
                    if (pe + qe != 1) complement.fail(point(n, p, mu) + ": " + pair_of("P", pe, "Q", qe));
                }
            }
        }
        rep.lines.push_back(routes.line);
        rep.lines.push_back(complement.line);

        // Odd closed form and the even-from-odd bridge, checked against r5.
        Collector odd("odd closed form, p=" + ps, grid_summary(1, g.n_max, g.mu_max));
        Collector bridge("even/odd difference, p=" + ps, grid_summary(0, g.n_max, g.mu_max));
        const Rational q2 = q * q;
        for (long k = 0; 2 * k + 1 <= g.n_max; ++k) {
            const auto uk = static_cast<unsigned>(k);
            for (long mu = 1; mu <= g.mu_max; ++mu) {
                const auto s = static_cast<unsigned>((mu - 1) / 2);
                const Rational t1 = t_beta(1, uk, s, q);
                const Rational t3 = t_beta(3, uk, s, q);
                const Rational p_odd = table.at(2 * k + 1, mu);
                const Rational closed = pochhammer(2 * uk + 1, q) / ((1 - q) * pochhammer(uk, q2)) *
                                        (t3 - power(q, static_cast<unsigned long>(mu)) * t1);
                if (closed != p_odd) odd.fail(point(2 * k + 1, p, mu) + ": " + pair_of("r5", p_odd, "closed", closed));
                const Rational diff = table.at(2 * k, mu) - p_odd;
                const Rational want = power(q, static_cast<unsigned long>(2 * k + mu)) * pochhammer(2 * uk, q) /
                                      pochhammer(uk, q2) * t1;
                if (diff != want) bridge.fail(point(2 * k, p, mu) + ": " + pair_of("difference", diff, "closed", want));
            }
        }
        rep.lines.push_back(odd.line);
        rep.lines.push_back(bridge.line);
    }
    return rep;
}

SuiteReport oracle_suite(const VerifyGrid&) {
    SuiteReport rep{"oracle", {}};
    const std::uint64_t budget = budget_from_env();
    for (const auto& [n, m] : oracle_grid()) {
        std::ostringstream label;
        label << "exhaustive (n=" << n << ", m=" << m << ')';
        CheckLine line;
        line.label = label.str();
        try {
            const ExhaustiveReport r = exhaustive(static_cast<std::size_t>(n), m, budget, worker_count());
            const ProbResult exact = evaluate(n, m);
            const Rational counted = r.full_rank_fraction();
            std::ostringstream detail;
            detail << r.full_rank_count << '/' << r.total << " = " << to_fraction_string(counted);
            if (counted != exact.P) {
                line.pass = false;
                detail << "; " << pair_of("formula", exact.P, "enumerated", counted);
            }
            line.detail = detail.str();
        } catch (const BudgetExceeded& e) {
            line.detail = std::string("skipped: ") + e.what();
        }
        rep.lines.push_back(std::move(line));
    }
    return rep;
}

SuiteReport bounds(const VerifyGrid& g) {
    SuiteReport rep{"bounds", {}};
    const Rational eps = make_rational(1, Integer("1000000000000"));
    for (auto p : g.p_list) {
        const Rational q = q_of(p);
        const std::string ps = std::to_string(p);
        Collector r_line("0 <= R, R^2 < q^(3mu), R = 0 iff floor(n/2) = 0, p=" + ps, grid_summary(1, g.n_max, g.mu_max));
        for (long n = 1; n <= g.n_max; ++n) {
            for (long mu = 1; mu <= g.mu_max; ++mu) {
                const Rational r = r_term(n, p, mu);
                const Rational cap = power(q, static_cast<unsigned long>(3 * mu));
                if (r < 0) r_line.fail(point(n, p, mu) + ": R=" + to_fraction_string(r) + " is negative");
                else if (r * r >= cap)
                    r_line.fail(point(n, p, mu) + ": " + pair_of("R^2", r * r, "q^(3mu)", cap));
                else if ((r == 0) != (n / 2 == 0))
                    r_line.fail(point(n, p, mu) + ": R=" + to_fraction_string(r) + " against floor(n/2)=" +
                                std::to_string(n / 2));
            }
        }
        rep.lines.push_back(r_line.line);

        Collector lim("limit of Q inside [q^mu, q^mu/(1-q)] and above Q(n-max), p=" + ps,
                      "mu in [1," + std::to_string(g.mu_max) + "], eps=1e-12");
        for (long mu = 1; mu <= g.mu_max; ++mu) {
            const BoundedValue enc = q_limit(p, mu, eps);
            const BoundedValue box = limit_interval(p, mu);
            if (enc.lower < box.lower || enc.upper > box.upper)
                lim.fail(point(-1, p, mu) + ": enclosure [" + to_fraction_string(enc.lower) + ", " +
                         to_fraction_string(enc.upper) + "] leaves the interval");
            const Rational qn = q_explicit(std::max(1L, g.n_max), p, mu);
            if (qn > enc.upper)
                lim.fail(point(g.n_max, p, mu) + ": " + pair_of("Q", qn, "limit_upper", enc.upper));
        }
        rep.lines.push_back(lim.line);
    }
    return rep;
}

SuiteReport monotone(const VerifyGrid& g) {
    SuiteReport rep{"monotone", {}};
    for (auto p : g.p_list) {
        Collector c("P(n+1) <= P(n) <= P(n, mu+1), p=" + std::to_string(p), grid_summary(0, g.n_max, g.mu_max));
        if (auto v = find_monotonicity_violation(g.n_max, p, g.mu_max)) {
            c.fail(point(v->n, p, v->mu) + (v->in_n ? " (in n): " : " (in mu): ") +
                   pair_of("smaller", v->smaller_expected, "larger", v->larger_expected));
        }
        rep.lines.push_back(c.line);
    }
    return rep;
}

SuiteReport genfun_suite(const VerifyGrid& g) {
    SuiteReport rep{"genfun", {}};
    const auto order = static_cast<unsigned>(g.mu_max + 4);
    for (auto p : g.p_list) {
        const Rational q = q_of(p);
        const std::string qs = "q=1/" + std::to_string(p);
        Collector fe("three-term functional equation, " + qs, "n in [1," + std::to_string(g.n_max) + "]");
        for (long n = 1; n <= g.n_max; ++n)
            if (!verify_functional_eq(static_cast<unsigned>(n), q, order)) fe.fail("fails at n=" + std::to_string(n));
        rep.lines.push_back(fe.line);

        Collector odd("odd step G(2k+1) -> G(2k+3), " + qs, "2k+3 <= " + std::to_string(g.n_max));
        for (long k = 0; 2 * k + 3 <= g.n_max; ++k)
            if (!verify_odd_step(static_cast<unsigned>(k), q)) odd.fail("fails at k=" + std::to_string(k));
        rep.lines.push_back(odd.line);

        Collector even("even step G(2k+1) -> G(2k), " + qs, "2k <= " + std::to_string(g.n_max));
        for (long k = 0; 2 * k <= g.n_max; ++k)
            if (!verify_even_step(static_cast<unsigned>(k), q)) even.fail("fails at k=" + std::to_string(k));
        rep.lines.push_back(even.line);
    }
    return rep;
}

SuiteReport detdist(const VerifyGrid& g) {
    SuiteReport rep{"detdist", {}};
    const std::uint64_t budget = budget_from_env();
    static const std::vector<std::pair<long, std::uint64_t>> points{{1, 3}, {2, 3}, {2, 5}, {3, 3}, {1, 2}, {2, 2}};
    for (const auto& [n, p] : points) {
        std::ostringstream label;
        label << "det histogram (n=" << n << ", p=" << p << ')';
        Collector c(label.str(), "");
        try {
            const ExhaustiveReport r = exhaustive(static_cast<std::size_t>(n), p, budget, worker_count());
            const Integer total(static_cast<unsigned long>(r.total));
            std::ostringstream summary;
            summary << '{';
            for (std::uint64_t d = 0; d < p; ++d) {
                const auto it = r.det_histogram.find(d);
                const std::uint64_t count = it == r.det_histogram.end() ? 0 : it->second;
                const Rational seen = make_rational(Integer(static_cast<unsigned long>(count)), total);
                const Rational want = d == 0 ? q_general(n, p) : det_value_prob(n, p, static_cast<std::int64_t>(d));
                if (seen != want) c.fail("d=" + std::to_string(d) + ": " + pair_of("formula", want, "enumerated", seen));
                summary << (d ? ", " : "") << d << ':' << count;
            }
            summary << "} of " << r.total;
            if (c.line.pass) c.line.detail = summary.str();
        } catch (const BudgetExceeded& e) {
            c.line.detail = std::string("skipped: ") + e.what();
        }
        rep.lines.push_back(c.line);
    }
    for (auto p : g.p_list) {
        Collector sum("sum over d of P(det = d) + Q = 1, p=" + std::to_string(p),
                      "n in [1," + std::to_string(g.n_max) + "]");
        for (long n = 1; n <= g.n_max; ++n) {
            Rational total = q_general(n, p);
            for (std::uint64_t d = 1; d < p; ++d) total += det_value_prob(n, p, static_cast<std::int64_t>(d));
            if (total != 1) sum.fail(point(n, p, 1) + ": total=" + to_fraction_string(total));
        }
        rep.lines.push_back(sum.line);
    }
    return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"crossroute", "oracle", "bounds", "monotone", "genfun", "detdist"};
    return names;
}

const std::vector<std::pair<long, std::uint64_t>>& oracle_grid() {
    static const std::vector<std::pair<long, std::uint64_t>> grid{{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}, {2, 4},
                                                                  {2, 9}, {2, 12}, {3, 2}, {3, 3}, {3, 4}, {4, 2}};
    return grid;
}

SuiteReport run_suite(std::string_view name, const VerifyGrid& grid) {
    check_grid(grid);
    if (name == "crossroute") return crossroute(grid);
    if (name == "oracle") return oracle_suite(grid);
    if (name == "bounds") return bounds(grid);
    if (name == "monotone") return monotone(grid);
    if (name == "genfun") return genfun_suite(grid);
    if (name == "detdist") return detdist(grid);
    throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace symrank
