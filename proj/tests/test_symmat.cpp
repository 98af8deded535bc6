#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "brute.hpp"
#include "symrank/oracle.hpp"
#include "symrank/symmat.hpp"

using namespace symrank;

namespace {

SymMatrix rows(std::vector<std::vector<std::int64_t>> r, std::uint64_t m) { return SymMatrix::from_rows(r, m); }

brute::Dense to_dense(const SymMatrix& a) {
    brute::Dense d(a.dim(), std::vector<std::int64_t>(a.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) d[i][j] = static_cast<std::int64_t>(a(i, j));
    return d;
}

bool is_symmetric(const std::vector<std::uint64_t>& dense, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (dense[i * n + j] != dense[j * n + i]) return false;
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

TEST_CASE("construction and storage") {
    SymMatrix a(3, 5);
    a.set(0, 2, 7);
    CHECK(a(0, 2) == 2);
    CHECK(a(2, 0) == 2);
    CHECK(a.packed().size() == 6);
    CHECK_THROWS(SymMatrix(2, 1));
    CHECK_THROWS(SymMatrix(2, 3, {0, 1, 3}));
    CHECK_THROWS(SymMatrix(2, 3, {0, 1}));
    CHECK_THROWS(rows({{1, 2}, {0, 1}}, 5));
    CHECK(rows({{1, 7}, {2, 1}}, 5)(0, 1) == 2);  // symmetric once reduced
    CHECK(rows({{-1, 0}, {0, 9}}, 4) == rows({{3, 0}, {0, 1}}, 4));
    const SymMatrix s = rows({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}}, 7).swapped(0, 2);
    CHECK(s(0, 0) == 6);
    CHECK(s(0, 1) == 5);
    CHECK(s(2, 2) == 1);
}

TEST_CASE("text format") {
    std::istringstream ok("2 4\n3 1\n1 6\n");
    const SymMatrix a = read_matrix(ok);
    CHECK(a == rows({{3, 1}, {1, 2}}, 4));
    std::ostringstream out;
    write_matrix(out, a);
    std::istringstream back(out.str());
    CHECK(read_matrix(back) == a);

    for (const char* bad : {"", "2", "2 4\n1 2\n3 4\n", "2 4\n1 2\n2\n", "2 1\n0 0\n0 0\n", "2 4\n1 x\nx 1\n",
                            "1 4\n1\n9\n", "-1 4\n"}) {
        std::istringstream in(bad);
        CAPTURE(bad);
        CHECK_THROWS_AS(read_matrix(in), std::invalid_argument);
    }
}

TEST_CASE("random_symmetric") {
    Rng r1(5), r2(5);
    CHECK(random_symmetric(0, 5, r1).dim() == 0);
    const SymMatrix a = random_symmetric(6, 8, r1);
    CHECK(a == random_symmetric(6, 8, r2));
    for (auto v : a.packed()) CHECK(v < 8);
    // all residues show up
    std::map<std::uint64_t, int> hist;
    Rng r3(6);
    for (int i = 0; i < 50; ++i) {
        const SymMatrix b = random_symmetric(3, 5, r3);
        for (auto v : b.packed()) ++hist[v];
    }
    CHECK(hist.size() == 5);
}

TEST_CASE("determinants") {
    CHECK(det_mod(SymMatrix::identity(5, 9)) == 1);
    CHECK(det_mod(rows({{2, 1}, {1, 3}}, 4)) == 1);
    CHECK(det_mod(rows({{2, 0}, {0, 2}}, 4)) == 0);
    CHECK(det_mod(SymMatrix(0, 7)) == 1);
    CHECK(det_lift(rows({{2, 1}, {1, 3}}, 4)) == 5);

    // Bareiss fast path and big-integer path agree with permutation expansion.
    Rng rng(99);
    for (std::uint64_t m : {7ULL, 1000003ULL, 4294967291ULL}) {
        for (std::size_t n = 1; n <= 6; ++n) {
            const SymMatrix a = random_symmetric(n, m, rng);
            std::int64_t want = 0;
            if (m < 3037000499ULL / 8) want = brute::det_mod(to_dense(a), static_cast<std::int64_t>(m));
            else continue;
            CHECK(det_mod(a) == static_cast<std::uint64_t>(want));
        }
    }
    // large entries force the big-integer branch; compare the lift mod a small prime
    const SymMatrix big = rows({{4294967290, 123456789, 5}, {123456789, 4294967000, 77}, {5, 77, 4294967289}},
                               4294967291ULL);
    Integer lift = det_lift(big);
    Integer m13 = lift % 13;
    if (m13 < 0) m13 += 13;
    brute::Dense d13 = to_dense(big);
    for (auto& row : d13)
        for (auto& x : row) x %= 13;
    CHECK(m13.get_si() == brute::det_mod(d13, 13));
}

TEST_CASE("m-rank examples") {
    CHECK(m_rank(SymMatrix(3, 4)).rank == 0);
    CHECK(m_rank(SymMatrix::identity(4, 6)).rank == 4);
    const RankProfile prof = m_rank(rows({{2, 0}, {0, 2}}, 4));
    CHECK(prof.rank == 1);
    CHECK(prof.valuations == std::vector<int>{1, 1});
    CHECK(is_full_rank(SymMatrix::identity(3, 5)));
    CHECK_FALSE(is_full_rank(SymMatrix(2, 5)));
    CHECK_FALSE(is_full_rank(rows({{2, 1}, {1, 2}}, 3)));
    CHECK(m_rank(SymMatrix(0, 3)).rank == 0);
}

TEST_CASE("m-rank agrees with brute-force minor search") {
    for (std::uint64_t m : {2ULL, 3ULL, 4ULL}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            std::uint64_t checked = 0;
            for_each_symmetric(n, m, 0, *enumeration_size(n, m), [&](const SymMatrix& a) {
                const std::size_t rank = m_rank(a).rank;
                const std::size_t want = brute::minor_rank(to_dense(a), static_cast<std::int64_t>(m));
                if (rank != want) {
                    std::ostringstream s;
                    write_matrix(s, a);
                    FAIL_CHECK("rank mismatch " << rank << " vs " << want << " for\n" << s.str());
                }
                CHECK((rank == n) == (det_mod(a) != 0));
                ++checked;
            });
            CHECK(checked == *enumeration_size(n, m));
        }
    }
}

TEST_CASE("m-rank on composite moduli matches minor search and factor ranks") {
    for (std::uint64_t m : {6ULL, 12ULL}) {
        for (std::size_t n = 1; n <= 2; ++n) {
            for_each_symmetric(n, m, 0, *enumeration_size(n, m), [&](const SymMatrix& a) {
                const std::size_t rank = m_rank(a).rank;
                CHECK(rank == brute::minor_rank(to_dense(a), static_cast<std::int64_t>(m)));
                std::size_t best = 0;
                for (const auto& f : factorize(m)) best = std::max(best, m_rank(a.reduced(f.value())).rank);
                CHECK(rank == best);
            });
        }
    }
}

TEST_CASE("case classification examples") {
    CHECK(classify_case(rows({{1, 0}, {0, 2}}, 4)) == CaseKind::case1);
    CHECK(classify_case(rows({{2, 1}, {1, 0}}, 4)) == CaseKind::case2);
    CHECK(classify_case(rows({{2, 2}, {2, 0}}, 4)) == CaseKind::case3);
    CHECK(classify_case(rows({{0, 2}, {2, 1}}, 4)) == CaseKind::case4);
    CHECK_THROWS(classify_case(SymMatrix(2, 6)));
    CHECK_THROWS(classify_case(SymMatrix(0, 4)));
}

TEST_CASE("case-1 elimination examples") {
    const ElimStep s1 = eliminate_case1(rows({{1, 1}, {1, 1}}, 4));
    REQUIRE(s1.residual);
    CHECK(*s1.residual == rows({{0}}, 4));
    const ElimStep s2 = eliminate_case1(rows({{3, 1}, {1, 2}}, 4));
    CHECK(s2.pivot_factor == 3);
    CHECK(*s2.residual == rows({{3}}, 4));
    CHECK(s2.modulus_shift == 0);
    CHECK(s2.transform == std::vector<std::uint64_t>{1, 0, 1, 1});  // lambda_2 = 1
    CHECK_THROWS(eliminate_case1(rows({{2, 1}, {1, 0}}, 4)));
}

TEST_CASE("case-2 elimination examples") {
    const SymMatrix a = rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 2);
    const ElimStep s = eliminate_case2(a);
    CHECK(s.kind == CaseKind::case2);
    CHECK(s.pivot_factor == 1);
    REQUIRE(s.residual);
    CHECK(s.residual->dim() == 1);
    CHECK(det_mod(*s.residual) == 0);
    // n = 2 is terminal: the block is the whole matrix
    const ElimStep t = eliminate_case2(rows({{0, 1}, {1, 0}}, 3));
    CHECK(t.residual->dim() == 0);
    CHECK(t.pivot_factor == 2);
    // permutation brings a unit into position (0, 1)
    const auto perm = case2_permute(rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 1}}, 2));
    REQUIRE(perm);
    CHECK(perm->second == 2);
    CHECK(perm->first(0, 1) == 1);
}

TEST_CASE("case-4 reduction examples") {
    Rng rng(1);
    const ElimStep deg = reduce_case4(rows({{0, 0}, {0, 3}}, 4), rng);
    CHECK(deg.kind == CaseKind::case4);
    CHECK(deg.modulus_shift == 2);  // effective modulus p^0: any residual satisfies the congruence
    REQUIRE(deg.residual);
    CHECK(mulmod(4, det_mod(*deg.residual), 4) == det_mod(rows({{0, 0}, {0, 3}}, 4)));
    CHECK_FALSE(reduce_case4(rows({{0, 0}, {0, 1}}, 2), rng).residual);  // mu = 1: nothing to materialize

    const SymMatrix a = rows({{4, 2}, {2, 4}}, 8);
    CHECK(det_mod(a) == 4);
    for (std::uint64_t off = 0; off < 2; ++off) {
        for (std::uint64_t corner = 0; corner < 4; ++corner) {
            const std::vector<std::uint64_t> offsets{off};
            const ElimStep s = reduce_case4(a, offsets, corner);
            REQUIRE(s.residual);
            CHECK((*s.residual)(0, 0) == 1 + 2 * corner);
            CHECK((*s.residual)(0, 1) == 1 + 4 * off);
            CHECK((*s.residual)(1, 1) == 4);
            CHECK(det_mod(*s.residual) % 2 == 1);
            CHECK(mulmod(4, det_mod(*s.residual), 8) == det_mod(a));
        }
    }
    CHECK_THROWS(reduce_case4(rows({{1, 0}, {0, 1}}, 8), rng));
}

TEST_CASE("transforms preserve symmetry and determinant congruences") {
    Rng rng(2024);
    for (std::uint64_t m : {2ULL, 3ULL, 4ULL, 8ULL, 9ULL, 27ULL}) {
        const auto pp = *as_prime_power(m);
        const std::uint64_t p = pp.prime();
        for (std::size_t n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 200; ++trial) {
                const SymMatrix a = random_symmetric(n, m, rng);
                const ElimStep s = eliminate(a, rng);
                const std::uint64_t det = det_mod(a);
                CAPTURE(m);
                CAPTURE(n);
                switch (s.kind) {
                    case CaseKind::case1:
                    case CaseKind::case2:
                    case CaseKind::case3: {
                        REQUIRE(s.residual);
                        const std::size_t drop = s.kind == CaseKind::case2 ? 2 : 1;
                        CHECK(s.residual->dim() == n - drop);
                        CHECK(s.modulus_shift == (s.kind == CaseKind::case3 ? 1 : 0));
                        CHECK(mulmod(s.pivot_factor, det_mod(*s.residual), m) == det);
                        if (!s.transform.empty() && n >= 2) {
                            // T A T^t is block diagonal with the pivot block in front
                            const SymMatrix src = s.swapped_with ? a.swapped(1, *s.swapped_with) : a;
                            const auto t = s.transform;
                            const auto d = src.dense();
                            std::vector<std::uint64_t> tat(n * n, 0);
                            for (std::size_t i = 0; i < n; ++i)
                                for (std::size_t j = 0; j < n; ++j) {
                                    unsigned __int128 acc = 0;
                                    for (std::size_t k = 0; k < n; ++k)
                                        for (std::size_t l = 0; l < n; ++l)
                                            acc += static_cast<unsigned __int128>(t[i * n + k]) * d[k * n + l] % m *
                                                   t[j * n + l] % m;
                                    tat[i * n + j] = static_cast<std::uint64_t>(acc % m);
                                }
                            CHECK(is_symmetric(tat, n));
                            for (std::size_t i = 0; i < drop; ++i)
                                for (std::size_t j = drop; j < n; ++j) CHECK(tat[i * n + j] == 0);
                            for (std::size_t i = drop; i < n; ++i)
                                for (std::size_t j = drop; j < n; ++j)
                                    CHECK(tat[i * n + j] == (*s.residual)(i - drop, j - drop));
                        }
                        break;
                    }
                    case CaseKind::case4:
                        CHECK(s.modulus_shift == 2);
                        if (s.residual) {
                            CHECK(s.residual->dim() == n);
                            CHECK(mulmod(p * p % m, det_mod(*s.residual), m) == det);
                        }
                        break;
                }
            }
        }
    }
}

TEST_CASE("case-1 residuals are uniform") {
    for (std::uint64_t m : {2ULL, 3ULL, 4ULL}) {
        std::map<std::vector<std::uint64_t>, std::uint64_t> seen;
        for_each_symmetric(2, m, 0, *enumeration_size(2, m), [&](const SymMatrix& a) {
            if (classify_case(a) != CaseKind::case1) return;
            const ElimStep s = eliminate_case1(a);
            const auto r = s.residual->packed();
            ++seen[std::vector<std::uint64_t>(r.begin(), r.end())];
        });
        CHECK(seen.size() == m);
        const std::uint64_t first = seen.begin()->second;
        for (const auto& [res, count] : seen) CHECK(count == first);
    }
}

TEST_CASE("case-4 residuals are uniform over inputs and offsets") {
    for (std::uint64_t m : {4ULL, 8ULL, 9ULL}) {
        const std::uint64_t p = as_prime_power(m)->prime();
        std::map<std::vector<std::uint64_t>, std::uint64_t> seen;
        std::uint64_t produced = 0;
        for_each_symmetric(2, m, 0, *enumeration_size(2, m), [&](const SymMatrix& a) {
            if (classify_case(a) != CaseKind::case4) return;
            for (std::uint64_t off = 0; off < p; ++off)
                for (std::uint64_t corner = 0; corner < p * p; ++corner) {
                    const std::vector<std::uint64_t> offsets{off};
                    const ElimStep s = reduce_case4(a, offsets, corner);
                    const auto r = s.residual->packed();
                    ++seen[std::vector<std::uint64_t>(r.begin(), r.end())];
                    ++produced;
                }
        });
        CAPTURE(m);
        // every symmetric 2x2 matrix over Z_m exactly once
        CHECK(produced == m * m * m);
        CHECK(seen.size() == m * m * m);
    }
}

TEST_CASE("prime-power detection") {
    CHECK(as_prime_power(8) == PrimePower(2, 3));
    CHECK(as_prime_power(97) == PrimePower(97, 1));
    CHECK_FALSE(as_prime_power(12));
    CHECK_FALSE(as_prime_power(1));
}
