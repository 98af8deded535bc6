#include "symrank/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <tuple>

namespace symrank {

std::uint64_t budget_from_env() {
    if (const char* env = std::getenv("SYMRANK_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

namespace {

std::string budget_message(std::optional<std::uint64_t> required, std::uint64_t budget) {
    return "exhaustive enumeration needs " + (required ? std::to_string(*required) : std::string("more than 2^64")) +
           " matrices, over the budget of " + std::to_string(budget) + " (set SYMRANK_BUDGET to raise it)";
}

std::uint64_t check_budget(std::size_t n, std::uint64_t m, std::uint64_t budget) {
    const auto size = enumeration_size(n, m);
    if (!size || *size > budget) throw BudgetExceeded(size, budget);
    return *size;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::optional<std::uint64_t> req, std::uint64_t b)
    : std::runtime_error(budget_message(req, b)), required(req), budget(b) {}

std::optional<std::uint64_t> enumeration_size(std::size_t n, std::uint64_t m) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < SymMatrix::packed_size(n); ++i) {
        if (total > UINT64_MAX / m) return std::nullopt;
        total *= m;
    }
    return total;
}

ExhaustiveReport exhaustive(std::size_t n, std::uint64_t m, std::uint64_t budget, unsigned workers) {
    if (m < 2) throw std::invalid_argument("exhaustive: need m >= 2");
    const std::uint64_t total = check_budget(n, m, budget);
    workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, total)));

    std::vector<ExhaustiveReport> partial(workers);
    auto run = [&](unsigned w) {
        const auto first = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * w / workers);
        const auto last = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (w + 1) / workers);
        auto& report = partial[w];
        for_each_symmetric(n, m, first, last - first, [&](const SymMatrix& a) {
            const std::uint64_t det = det_mod(a);
            ++report.det_histogram[det];
            ++report.rank_histogram[m_rank(a).rank];
            if (det != 0) ++report.full_rank_count;
        });
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }

    ExhaustiveReport merged;
    merged.n = n;
    merged.m = m;
    merged.total = total;
    for (const auto& r : partial) {
        merged.full_rank_count += r.full_rank_count;
        for (const auto& [k, v] : r.det_histogram) merged.det_histogram[k] += v;
        for (const auto& [k, v] : r.rank_histogram) merged.rank_histogram[k] += v;
    }
    return merged;
}

CaseTally exhaustive_case_tally(std::size_t n, std::uint64_t m, std::uint64_t budget) {
    if (n == 0) throw std::invalid_argument("exhaustive_case_tally: need n >= 1");
    CaseTally tally;
    tally.total = check_budget(n, m, budget);
    for_each_symmetric(n, m, 0, tally.total, [&](const SymMatrix& a) {
        ++tally.counts[static_cast<std::size_t>(classify_case(a)) - 1];
    });
    return tally;
}

// ---------------------------------------------------------------------------

std::pair<double, double> confidence_interval_99(std::uint64_t hits, std::uint64_t trials) {
    constexpr double z = 2.5758293035489004;  // two-sided 99% normal quantile
    constexpr double alpha = 0.01;
    const double nt = static_cast<double>(trials);
    if (hits == 0) return {0.0, 1.0 - std::pow(alpha, 1.0 / nt)};
    if (hits == trials) return {std::pow(alpha, 1.0 / nt), 1.0};
    const double phat = static_cast<double>(hits) / nt;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nt);
    return {std::max(0.0, phat - half), std::min(1.0, phat + half)};
}

MCEstimate monte_carlo(std::size_t n, std::uint64_t m, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials == 0) throw std::invalid_argument("monte_carlo: need trials >= 1");
    if (m < 2) throw std::invalid_argument("monte_carlo: need m >= 2");
    workers = std::max(1u, workers);

    std::vector<std::uint64_t> hits(workers, 0);
    auto run = [&](unsigned w) {
        const std::uint64_t share = trials / workers + (w < trials % workers ? 1 : 0);
        Rng rng(Rng::derive_seed(seed, w));
        std::uint64_t local = 0;
        for (std::uint64_t t = 0; t < share; ++t)
            if (is_full_rank(random_symmetric(n, m, rng))) ++local;
        hits[w] = local;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }

    MCEstimate est;
    est.trials = trials;
    for (auto h : hits) est.hits += h;
    est.estimate = make_rational(Integer(static_cast<unsigned long>(est.hits)), Integer(static_cast<unsigned long>(trials)));
    std::tie(est.ci_low, est.ci_high) = confidence_interval_99(est.hits, trials);
    est.seed = seed;
    est.workers = workers;
    return est;
}

std::map<std::size_t, std::uint64_t> rank_histogram_mc(std::size_t n, std::uint64_t m, std::uint64_t trials,
                                                       std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("rank_histogram_mc: need trials >= 1");
    Rng rng(Rng::derive_seed(seed, 0));
    std::map<std::size_t, std::uint64_t> histogram;
    for (std::uint64_t t = 0; t < trials; ++t) ++histogram[m_rank(random_symmetric(n, m, rng)).rank];
    return histogram;
}

}  // namespace symrank
