// symrank: nonsingularity probabilities of random symmetric matrices over Z_m.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or IO error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "symrank/arith.hpp"
#include "symrank/oracle.hpp"
#include "symrank/prob.hpp"
#include "symrank/render.hpp"
#include "symrank/symmat.hpp"
#include "symrank/verify.hpp"

namespace {

using namespace symrank;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
}

std::string fraction_line(const char* name, const Rational& v) {
    return std::string(name) + " = " + to_fraction_string(v) + "  (" + to_decimal(v) + ")";
}

// ---------------------------------------------------------------------------

struct ProbArgs {
    long n = 0;
    std::uint64_t m = 0;
    std::string route = "explicit";
    bool json = false;
};

int cmd_prob(const ProbArgs& a) {
    if (a.n < 0) throw UsageError("--n must be >= 0");
    if (a.m < 2) throw UsageError("--m must be >= 2");
    Route route;
    try {
        route = parse_route(a.route);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const OutputRecord rec = make_record(a.n, a.m, route);
    if (a.json) {
        std::cout << to_json(rec).dump(2) << '\n';
        return kOk;
    }
    std::cout << "n = " << rec.n << ", m = " << rec.m;
    if (rec.p) std::cout << " (p = " << *rec.p << ", mu = " << *rec.mu << ')';
    std::cout << ", route " << route_name(rec.route) << '\n'
              << fraction_line("P", rec.P) << '\n'
              << fraction_line("Q", rec.Q) << '\n';
    return kOk;
}

struct TableArgs {
    std::uint64_t p = 0;
    long n_max = 6;
    long mu_max = 3;
    std::string format = "csv";
    std::string out;
};

int cmd_table(const TableArgs& a) {
    require_prime(a.p);
    if (a.n_max < 0 || a.mu_max < 1) throw UsageError("need --n-max >= 0 and --mu-max >= 1");

    std::vector<OutputRecord> rows;
    for (long n = 0; n <= a.n_max; ++n) {
        for (long mu = 1; mu <= a.mu_max; ++mu) {
            std::uint64_t m = 0;
            try {
                m = checked_pow(a.p, static_cast<unsigned>(mu));
            } catch (const std::overflow_error&) {
                throw UsageError("p^mu does not fit 64 bits at mu = " + std::to_string(mu));
            }
            rows.push_back(make_record(n, m));
        }
    }

    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::binary);
        if (!file) throw UsageError("cannot open " + a.out + " for writing");
    }
    std::ostream& out = a.out.empty() ? std::cout : file;
    if (a.format == "csv") {
        out << kCsvHeader << '\n';
        for (const auto& r : rows) out << to_csv_row(r) << '\n';
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        out << arr.dump(2) << '\n';
    }
    out.flush();
    if (!out) throw UsageError("write failed" + (a.out.empty() ? std::string() : ": " + a.out));
    return kOk;
}

struct VerifyArgs {
    std::string suite = "all";
    VerifyGrid grid;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<std::string> suites;
    if (a.suite == "all") {
        suites = suite_names();
    } else {
        suites.push_back(a.suite);
    }
    std::vector<SuiteReport> reports;
    try {
        for (const auto& s : suites) reports.push_back(run_suite(s, a.grid));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    std::size_t checks = 0, failures = 0;
    for (const auto& rep : reports) {
        std::cout << "== " << rep.suite << '\n';
        for (const auto& line : rep.lines) {
            ++checks;
            if (!line.pass) ++failures;
            std::cout << (line.pass ? "PASS " : "FAIL ") << line.label;
            if (!line.detail.empty()) std::cout << ": " << line.detail;
            std::cout << '\n';
        }
    }
    std::cout << (failures ? "FAILED " : "OK ") << checks - failures << '/' << checks << " checks passed\n";
    return failures ? kVerifyFailed : kOk;
}

struct SampleArgs {
    long n = 0;
    std::uint64_t m = 0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

int cmd_sample(const SampleArgs& a) {
    if (a.n < 0) throw UsageError("--n must be >= 0");
    if (a.m < 2) throw UsageError("--m must be >= 2");
    if (a.trials < 1) throw UsageError("--trials must be >= 1");
    if (a.workers < 1) throw UsageError("--workers must be >= 1");
    const MCEstimate est = monte_carlo(static_cast<std::size_t>(a.n), a.m, a.trials, a.seed, a.workers);
    const Rational exact = evaluate(a.n, a.m).P;
    std::cout << "n = " << a.n << ", m = " << a.m << ", trials = " << est.trials << ", seed = " << est.seed
              << ", workers = " << est.workers << '\n'
              << "hits = " << est.hits << '\n'
              << fraction_line("estimate", est.estimate) << '\n'
              << "99% CI = [" << to_decimal(Rational(est.ci_low)) << ", " << to_decimal(Rational(est.ci_high)) << "]\n"
              << fraction_line("exact P", exact) << '\n'
              << (est.covers(exact) ? "covered" : "not covered") << '\n';
    return kOk;
}

struct LimitArgs {
    std::uint64_t p = 0;
    long mu = 1;
    std::string eps = "1e-9";
};

void print_interval(const char* name, const BoundedValue& b) {
    std::cout << name << " in [" << to_decimal(b.lower) << ", " << to_decimal(b.upper)
              << "]  width " << to_decimal(b.width(), 3) << '\n';
}

int cmd_limit(const LimitArgs& a) {
    require_prime(a.p);
    if (a.mu < 1) throw UsageError("--mu must be >= 1");
    Rational eps;
    try {
        eps = parse_rational(a.eps);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --eps: ") + e.what());
    }
    if (eps <= 0) throw UsageError("--eps must be positive");
    print_interval("lim P", p_limit(a.p, a.mu, eps));
    print_interval("lim Q", q_limit(a.p, a.mu, eps));
    const BoundedValue box = limit_interval(a.p, a.mu);
    std::cout << "lim Q lies in [q^mu, q^mu/(1-q)] = [" << to_fraction_string(box.lower) << ", "
              << to_fraction_string(box.upper) << "]\n";
    return kOk;
}

struct DetArgs {
    long n = 1;
    std::uint64_t p = 0;
    bool exhaustive = false;
};

int cmd_detdist(const DetArgs& a) {
    require_prime(a.p);
    if (a.n < 1) throw UsageError("--n must be >= 1");
    std::optional<ExhaustiveReport> rep;
    if (a.exhaustive) rep = exhaustive(static_cast<std::size_t>(a.n), a.p, budget_from_env(),
                                       std::max(1u, std::thread::hardware_concurrency()));

    std::cout << "d\tprobability\tdecimal";
    if (rep) std::cout << "\tcount/" << rep->total << "\tmatch";
    std::cout << '\n';
    bool all_match = true;
    for (std::uint64_t d = 0; d < a.p; ++d) {
        const Rational prob = d == 0 ? q_general(a.n, a.p) : det_value_prob(a.n, a.p, static_cast<std::int64_t>(d));
        std::cout << d << '\t' << to_fraction_string(prob) << '\t' << to_decimal(prob);
        if (rep) {
            const auto it = rep->det_histogram.find(d);
            const std::uint64_t count = it == rep->det_histogram.end() ? 0 : it->second;
            const bool match = make_rational(Integer(static_cast<unsigned long>(count)),
                                             Integer(static_cast<unsigned long>(rep->total))) == prob;
            all_match = all_match && match;
            std::cout << '\t' << count << '\t' << (match ? "yes" : "no");
        }
        std::cout << '\n';
    }
    return all_match ? kOk : kVerifyFailed;
}

int cmd_rank(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw UsageError("cannot open " + path);
        in = &file;
    }
    SymMatrix a = [&] {
        try {
            return read_matrix(*in);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("bad matrix: ") + e.what());
        }
    }();
    const RankProfile prof = m_rank(a);
    std::cout << "n = " << a.dim() << ", m = " << a.modulus() << '\n' << "m-rank = " << prof.rank << '\n';
    if (auto pp = as_prime_power(a.modulus())) {
        std::cout << "valuations (p = " << pp->prime() << ", mu = " << pp->exponent() << "):";
        if (prof.valuations.empty()) std::cout << " none";
        for (int v : prof.valuations) std::cout << ' ' << v;
        std::cout << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probability that a random symmetric matrix over Z_m is nonsingular"};
    app.require_subcommand(1);

    ProbArgs prob;
    auto* sc_prob = app.add_subcommand("prob", "P(n, m) and Q(n, m) as exact fractions");
    sc_prob->add_option("--n", prob.n, "matrix dimension (>= 0)")->required();
    sc_prob->add_option("--m", prob.m, "modulus (>= 2)")->required();
    sc_prob->add_option("--route", prob.route, "r5 | r3 | explicit | genfun")->capture_default_str();
    sc_prob->add_flag("--json", prob.json, "print one JSON record");

    TableArgs table;
    auto* sc_table = app.add_subcommand("table", "P and Q for n <= n-max, m = p^mu with mu <= mu-max");
    sc_table->add_option("--p", table.p, "prime")->required();
    sc_table->add_option("--n-max", table.n_max)->capture_default_str();
    sc_table->add_option("--mu-max", table.mu_max)->capture_default_str();
    sc_table->add_option("--format", table.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sc_table->add_option("--out", table.out, "output file (default stdout)");

    VerifyArgs verify;
    auto* sc_verify = app.add_subcommand("verify", "run invariant suites; exit 1 on any failure");
    std::vector<std::string> suite_choices = suite_names();
    suite_choices.push_back("all");
    sc_verify->add_option("--suite", verify.suite)->check(CLI::IsMember(suite_choices))->capture_default_str();
    sc_verify->add_option("--n-max", verify.grid.n_max)->capture_default_str();
    sc_verify->add_option("--mu-max", verify.grid.mu_max)->capture_default_str();
    sc_verify->add_option("--p-list", verify.grid.p_list, "comma-separated primes")->delimiter(',');

    SampleArgs sample;
    auto* sc_sample = app.add_subcommand("sample", "Monte Carlo estimate of P(n, m)");
    sc_sample->add_option("--n", sample.n)->required();
    sc_sample->add_option("--m", sample.m)->required();
    sc_sample->add_option("--trials", sample.trials)->capture_default_str();
    sc_sample->add_option("--seed", sample.seed)->capture_default_str();
    sc_sample->add_option("--workers", sample.workers)->capture_default_str();

    LimitArgs limit;
    auto* sc_limit = app.add_subcommand("limit", "enclosures of the n -> infinity limits");
    sc_limit->add_option("--p", limit.p)->required();
    sc_limit->add_option("--mu", limit.mu)->capture_default_str();
    sc_limit->add_option("--eps", limit.eps, "target width, e.g. 1e-9 or 1/1000")->capture_default_str();

    DetArgs det;
    auto* sc_det = app.add_subcommand("detdist", "distribution of det(A) mod p");
    sc_det->add_option("--n", det.n)->required();
    sc_det->add_option("--p", det.p)->required();
    sc_det->add_flag("--exhaustive", det.exhaustive, "enumerate all matrices alongside");

    std::string input;
    auto* sc_rank = app.add_subcommand("rank", "m-rank of a matrix in the text format");
    sc_rank->add_option("--input", input, "file, or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sc_prob) return cmd_prob(prob);
        if (*sc_table) return cmd_table(table);
        if (*sc_verify) return cmd_verify(verify);
        if (*sc_sample) return cmd_sample(sample);
        if (*sc_limit) return cmd_limit(limit);
        if (*sc_det) return cmd_detdist(det);
        if (*sc_rank) return cmd_rank(input);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
