#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lcentral/quartic.hpp"

using namespace lcentral;
using arith::i64;
using arith::u64;
using quartic::BTuple;

namespace {

BTuple random_tuple(std::mt19937_64& rng, i64 q, i64 hi) {
    std::uniform_int_distribution<i64> d(1, hi);
    BTuple t;
    do {
        for (auto& b : t.b) b = d(rng);
    } while (!t.coprime_to(q));
    return t;
}

// N1 by full enumeration of (s, s1..s4), independent of the histogram path.
i64 n1_brute(i64 rho, const BTuple& t) {
    std::vector<i64> units;
    for (i64 x = 0; x < rho; ++x) {
        if (arith::gcd(x, rho) == 1) units.push_back(x);
    }
    i64 bbar[4];
    for (int i = 0; i < 4; ++i) bbar[i] = arith::mod_inverse(t[static_cast<std::size_t>(i)], rho);
    i64 n = 0;
    for (i64 s : units)
        for (i64 a : units)
            for (i64 b : units)
                for (i64 c : units)
                    for (i64 d : units) {
                        const i64 si[4] = {a, b, c, d};
                        if ((a + b + c + d) % rho != 0) continue;
                        bool ok = true;
                        for (int i = 0; i < 4 && ok; ++i) ok = (s * si[i] % rho * si[i]) % rho == bbar[i] % rho;
                        n += ok;
                    }
    return n;
}

}  // namespace

TEST(GNaive, Examples) {
    const auto g = quartic::g_naive(5, {{1, 1, 1, 1}});
    EXPECT_NEAR(g.re, 160.0, 1e-9);  // oracle
    EXPECT_LE(std::abs(g.im), g.err);
    EXPECT_NEAR(quartic::g_naive(1, {{3, 7, 2, 9}}).re, 1.0, 1e-15);
    EXPECT_THROW(quartic::g_naive(6, {{1, 2, 1, 1}}), not_coprime_error);
}

TEST(GNaive, MultiplicativityOverCoprimeFactors) {
    std::mt19937_64 rng(41);
    int pairs = 0;
    for (i64 q1 = 2; q1 <= 40 && pairs < 50; ++q1) {
        for (i64 q2 = q1 + 1; q1 * q2 <= 400 && pairs < 50; q2 += 3) {
            if (arith::gcd(q1, q2) != 1) continue;
            const auto t = random_tuple(rng, q1 * q2, q1 * q2);
            const auto g = quartic::g_naive(q1 * q2, t).re;
            const auto g1 = quartic::g_naive(q1, t).re;
            const auto g2 = quartic::g_naive(q2, t).re;
            ASSERT_NEAR(g, g1 * g2, 1e-5) << q1 << " " << q2;
            ++pairs;
        }
    }
    EXPECT_EQ(pairs, 50);
    const BTuple t{{1, 2, 4, 7}};
    EXPECT_NEAR(quartic::g_naive(15, t).re, quartic::g_naive(3, t).re * quartic::g_naive(5, t).re, 1e-6);
}

TEST(GNaive, RealWithinError) {
    std::mt19937_64 rng(2);
    for (i64 q : {7, 12, 27, 32, 49, 60}) {
        for (int k = 0; k < 5; ++k) {
            const auto g = quartic::g_naive(q, random_tuple(rng, q, q));
            ASSERT_LE(std::abs(g.im), g.err);
        }
    }
}

TEST(GSweep, MatchesNaivePointwise) {
    const auto s = quartic::g_sweep(5, 2);
    ASSERT_EQ(s.entries.size(), 16u);
    EXPECT_EQ(s.skipped, 0u);
    for (const auto& e : s.entries) ASSERT_NEAR(e.g, quartic::g_naive(5, e.b).re, 1e-9);
    for (std::size_t i = 1; i < s.entries.size(); ++i) ASSERT_LT(s.entries[i - 1].b, s.entries[i].b);

    const auto one = quartic::g_sweep(3, 1);
    ASSERT_EQ(one.entries.size(), 1u);
    EXPECT_EQ(one.entries[0].b, (BTuple{{1, 1, 1, 1}}));

    std::mt19937_64 rng(9);
    const auto big = quartic::g_sweep(101, 10, 2);
    ASSERT_EQ(big.entries.size(), 10000u);
    for (int k = 0; k < 20; ++k) {
        const auto& e = big.entries[std::uniform_int_distribution<std::size_t>(0, 9999)(rng)];
        ASSERT_NEAR(e.g, quartic::g_naive(101, e.b).re, 1e-5);
    }
}

TEST(GSweep, SkipsNonCoprimeAndRejectsLargeB) {
    const auto s = quartic::g_sweep(6, 4);
    EXPECT_EQ(s.entries.size(), 1u);  // only b = 1 is a unit in [1, 4]
    EXPECT_EQ(s.skipped, 255u);
    EXPECT_THROW(quartic::g_sweep(5, 6), precondition_error);
    EXPECT_THROW(quartic::g_sweep(0, 1), precondition_error);
}

TEST(GSweep, ThreadCountDoesNotChangeBits) {
    const auto a = quartic::g_sweep(45, 12, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        const auto b = quartic::g_sweep(45, 12, t);
        ASSERT_EQ(a.entries.size(), b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) ASSERT_EQ(a.entries[i].g, b.entries[i].g);
        ASSERT_EQ(quartic::a_sum(a), quartic::a_sum(b));
    }
}

TEST(ASum, Examples) {
    EXPECT_NEAR(quartic::a_sum(5, 1), 160.0, 1e-9);
    EXPECT_NEAR(quartic::a_sum(3, 2), 162.0, 1e-9);  // oracle
    EXPECT_EQ(quartic::a_sum(quartic::g_sweep(2, 1)), std::abs(quartic::g_naive(2, {{1, 1, 1, 1}}).re));
    EXPECT_EQ(quartic::a_sum(quartic::g_sweep(6, 1)), std::abs(quartic::g_naive(6, {{1, 1, 1, 1}}).re));
    // no coprime tuples: every b in [1, B] shares a factor... impossible for b = 1, so use an empty grid
    quartic::SweepResult empty;
    EXPECT_EQ(quartic::a_sum(empty), 0.0);
}

TEST(Envelope, Examples) {
    EXPECT_NEAR(quartic::theorem12_envelope(25, 2), 16 * std::pow(25.0, 2.5) + 4 * std::pow(25.0, 3) + 2 * std::pow(25.0, 3.5),
                1e-6);
    EXPECT_NEAR(quartic::theorem12_envelope(8, 1),
                std::pow(8.0, 2.5) / std::sqrt(2.0) + std::pow(8.0, 3) * 2 + std::pow(8.0, 3.5) * std::sqrt(2.0), 1e-9);
    const double q = 101;
    const double env = quartic::theorem12_envelope(101, 101);
    EXPECT_GT(std::pow(q, 4) * std::pow(q, 2.5), 0.9 * env);
    EXPECT_THROW(quartic::theorem12_envelope(5, 6), precondition_error);
}

TEST(InD, Examples) {
    EXPECT_TRUE(quartic::in_D(5, {{1, 1, 2, 2}}));
    EXPECT_FALSE(quartic::in_D(5, {{1, 2, 3, 4}}));
    EXPECT_TRUE(quartic::in_D(5, {{1, 6, 2, 7}}));
    EXPECT_TRUE(quartic::in_D(7, {{3, 3, 3, 3}}));
    EXPECT_FALSE(quartic::in_D(7, {{3, 3, 3, 4}}));
    EXPECT_THROW(quartic::in_D(6, {{1, 1, 1, 1}}), precondition_error);
}

TEST(N1, Examples) {
    EXPECT_EQ(quartic::n1_count(1, {{1, 1, 1, 1}}), 1);
    EXPECT_EQ(quartic::n1_count(2, {{1, 3, 5, 7}}), 1);
    EXPECT_EQ(quartic::n1_count(5, {{1, 1, 1, 1}}), 12);   // oracle
    EXPECT_EQ(quartic::n1_count(7, {{1, 2, 3, 4}}), 0);    // oracle
    EXPECT_THROW(quartic::n1_count(4, {{1, 2, 1, 1}}), not_coprime_error);
}

TEST(N1, MatchesEnumeration) {
    std::mt19937_64 rng(13);
    for (i64 rho = 1; rho <= 13; ++rho) {
        for (int k = 0; k < 4; ++k) {
            const auto t = random_tuple(rng, rho, 50);
            ASSERT_EQ(quartic::n1_count(rho, t), n1_brute(rho, t)) << rho;
        }
    }
}

TEST(N1, Multiplicative) {
    std::mt19937_64 rng(17);
    for (i64 r1 = 1; r1 <= 20; ++r1) {
        for (i64 r2 = r1 + 1; r1 * r2 <= 400 && r2 <= 20; ++r2) {
            if (arith::gcd(r1, r2) != 1) continue;
            const auto t = random_tuple(rng, r1 * r2, 400);
            ASSERT_EQ(quartic::n1_count(r1 * r2, t), quartic::n1_count(r1, t) * quartic::n1_count(r2, t)) << r1 << " " << r2;
        }
    }
}

TEST(N2, Examples) {
    EXPECT_EQ(quartic::n2_count(1, 1, {{1, 1, 1, 1}}), 1);
    EXPECT_EQ(quartic::n2_count(5, 5, {{1, 1, 1, 1}}), 12);  // oracle
    EXPECT_EQ(quartic::n2_count(3, 3, {{1, 2, 1, 2}}), 0);   // oracle
    EXPECT_THROW(quartic::n2_count(9, 9, {{1, 1, 1, 1}}), precondition_error);
    EXPECT_THROW(quartic::n2_count(5, 5, {{5, 1, 1, 1}}), not_coprime_error);
}

TEST(N2, MembershipIsRepresentativeIndependent) {
    for (i64 p : {3, 5, 7}) {
        for (const BTuple& t : {BTuple{{1, 1, 1, 1}}, BTuple{{1, 2, 3, 4}}, BTuple{{2, 2, 1, 1}}}) {
            if (!t.coprime_to(p)) continue;
            for (i64 u = 1; u < p; ++u) {
                for (i64 a = 1; a < p; ++a) {
                    for (i64 b = 1; b < p; ++b) {
                        const std::array<i64, 4> us{a, b, a, b};
                        const bool base = quartic::n2_member(p, p, t, u, us);
                        for (i64 c = 1; c < p; ++c) {
                            std::array<i64, 4> shifted{};
                            for (std::size_t i = 0; i < 4; ++i) shifted[i] = us[i] * (1 + c * p);
                            ASSERT_EQ(quartic::n2_member(p, p, t, u, shifted), base);
                        }
                    }
                }
            }
        }
    }
}

TEST(N2, CountAgreesWithMembership) {
    for (i64 rho : {2, 3, 4, 5, 6}) {
        const i64 rs = arith::factor(static_cast<u64>(rho)).qstar;
        const BTuple t{{1, 1, 1, 1}};
        i64 n = 0;
        for (i64 u = 0; u < rho; ++u)
            for (i64 a = 0; a < rho; ++a)
                for (i64 b = 0; b < rho; ++b)
                    for (i64 c = 0; c < rho; ++c)
                        for (i64 d = 0; d < rho; ++d) n += quartic::n2_member(rho, rs, t, u, {a, b, c, d});
        ASSERT_EQ(quartic::n2_count(rho, rs, t), n) << rho;
    }
}

TEST(Theorem12, ReportShape) {
    const std::vector<i64> qs{8, 27};
    const auto r = quartic::theorem12_report(qs, 12);
    ASSERT_EQ(r.grid.size(), 2u);
    EXPECT_EQ(r.grid[0].bmax, 8);
    EXPECT_EQ(r.grid[1].bmax, 12);
    for (const auto& p : r.grid) EXPECT_DOUBLE_EQ(p.ratio, p.value / p.envelope);
    EXPECT_EQ(r.max_ratio, std::max(r.grid[0].ratio, r.grid[1].ratio));
}
