#include <gtest/gtest.h>

#include <random>

#include "lcentral/arith.hpp"
#include "lcentral/dirichlet/characters.hpp"

using namespace lcentral;
using arith::i64;
using arith::u64;

TEST(Factor, Examples) {
    const auto fm = arith::factor(360);
    ASSERT_EQ(fm.factors.size(), 3u);
    EXPECT_EQ(fm.factors[0], (arith::PrimePower{2, 3, 8}));
    EXPECT_EQ(fm.factors[1], (arith::PrimePower{3, 2, 9}));
    EXPECT_EQ(fm.factors[2], (arith::PrimePower{5, 1, 5}));
    EXPECT_EQ(fm.qstar, 30);
    EXPECT_EQ(fm.qring, 2);
    EXPECT_EQ(fm.phi, 96);

    for (i64 p : {2, 3, 101, 7919}) {
        const auto f = arith::factor(static_cast<u64>(p));
        EXPECT_EQ(f.qring, 1);
        EXPECT_EQ(f.phistar, p - 2);
    }

    const auto one = arith::factor(1);
    EXPECT_TRUE(one.factors.empty());
    EXPECT_EQ(one.qstar, 1);
    EXPECT_EQ(one.qring, 1);
    EXPECT_EQ(one.phi, 1);
    EXPECT_EQ(one.phistar, 1);

    EXPECT_THROW(arith::factor(0), precondition_error);
    EXPECT_THROW(arith::factor((u64{1} << 63) + 1), precondition_error);
}

TEST(Factor, LargeCofactors) {
    // 1000003 * 1000033, both above the trial-division bound
    const auto fm = arith::factor(1000003ULL * 1000033ULL);
    ASSERT_EQ(fm.factors.size(), 2u);
    EXPECT_EQ(fm.factors[0].prime, 1000003);
    EXPECT_EQ(fm.factors[1].prime, 1000033);
    const auto big = arith::factor(u64{1} << 63);
    ASSERT_EQ(big.factors.size(), 1u);
    EXPECT_EQ(big.factors[0].exponent, 63);
    EXPECT_EQ(big.qring, 2);
    EXPECT_TRUE(arith::is_prime(9223372036854775783ULL));
}

TEST(Factor, ProductAndDivisibilityProperty) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> dist(1, 1'000'000);
    for (int k = 0; k < 5000; ++k) {
        const u64 n = k < 2000 ? static_cast<u64>(k + 1) : dist(rng);
        const auto fm = arith::factor(n);
        i64 prod = 1, last = 1;
        for (const auto& f : fm.factors) {
            ASSERT_GT(f.prime, last);
            ASSERT_GE(f.exponent, 1);
            ASSERT_TRUE(arith::is_prime(static_cast<u64>(f.prime)));
            last = f.prime;
            prod *= f.value;
        }
        ASSERT_EQ(static_cast<u64>(prod), n);
        ASSERT_EQ(fm.qstar % fm.qring, 0);
        ASSERT_EQ(static_cast<i64>(n) % fm.qstar, 0);
    }
}

TEST(Factor, PhistarMatchesMobiusConvolution) {
    for (i64 q = 1; q <= 2000; ++q) {
        const auto fm = arith::factor(static_cast<u64>(q));
        i64 s = 0;
        for (i64 d : arith::divisors(fm)) s += arith::mobius(d) * arith::euler_phi(q / d);
        ASSERT_EQ(fm.phistar, s) << q;
        if (q % 4 == 2 && q > 2) {
            ASSERT_EQ(fm.phistar, 0) << q;
        }
    }
}

TEST(Factor, PhistarMatchesPrimitiveCharacterCount) {
    for (i64 q = 1; q <= 500; ++q) {
        const dirichlet::CharacterGroup g(q);
        i64 n = 0;
        for (i64 i = 0; i < g.size(); ++i) n += g.primitive(i);
        ASSERT_EQ(n, arith::factor(static_cast<u64>(q)).phistar) << q;
    }
}

TEST(Decompose, Examples) {
    const auto a = arith::decompose_six_one(arith::factor(360));
    EXPECT_EQ(a.rho, 5);
    EXPECT_EQ(a.c, 3);
    EXPECT_EQ(a.d, 2);
    EXPECT_EQ(a.dstar, 2);
    EXPECT_FALSE(a.three_odd);

    const auto b = arith::decompose_six_one(arith::factor(27));
    EXPECT_EQ(b.rho, 1);
    EXPECT_EQ(b.c, 3);
    EXPECT_EQ(b.d, 1);
    EXPECT_EQ(b.dstar, 1);
    EXPECT_TRUE(b.three_odd);
    EXPECT_EQ(b.c_part(), 27);

    const auto c = arith::decompose_six_one(arith::factor(101));
    EXPECT_EQ(c.rho, 101);
    EXPECT_EQ(c.c, 1);
    EXPECT_EQ(c.d, 1);
    EXPECT_EQ(c.dstar, 1);
}

TEST(Decompose, ReassemblesAndSatisfiesInvariants) {
    for (i64 q = 1; q <= 100000; ++q) {
        const auto fm = arith::factor(static_cast<u64>(q));
        const auto d = arith::decompose_six_one(fm);
        ASSERT_EQ(d.rho * d.c_part() * d.d_part(), q) << q;
        ASSERT_EQ(arith::gcd(d.rho, d.c_part()), 1);
        ASSERT_EQ(arith::gcd(d.rho, d.d_part()), 1);
        ASSERT_EQ(arith::gcd(d.c_part(), d.d_part()), 1);
        ASSERT_NE(arith::mobius(d.rho), 0);
        ASSERT_EQ(arith::factor(static_cast<u64>(d.d_part())).qstar, d.dstar);
        for (const auto& f : arith::factor(static_cast<u64>(d.d_part())).factors) {
            ASSERT_TRUE(f.exponent % 2 == 1 && f.exponent >= 3) << q;
        }
    }
}

TEST(ModInverse, Examples) {
    EXPECT_EQ(arith::mod_inverse(3, 10), 7);
    for (i64 q : {2, 7, 100, 999983}) EXPECT_EQ(arith::mod_inverse(1, q), 1);
    EXPECT_THROW(arith::mod_inverse(2, 4), not_coprime_error);
    EXPECT_EQ(arith::mod_inverse(-3, 10), 3);
}

TEST(ModInverse, RandomPairs) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<i64> dist(2, i64{1} << 40);
    int checked = 0;
    while (checked < 10000) {
        const i64 q = dist(rng), a = dist(rng) % q;
        if (arith::gcd(a, q) != 1) continue;
        const i64 u = arith::mod_inverse(a, q);
        ASSERT_GE(u, 0);
        ASSERT_LT(u, q);
        ASSERT_EQ(arith::mulmod(static_cast<u64>(a), static_cast<u64>(u), static_cast<u64>(q)), 1u);
        ++checked;
    }
}

TEST(Crt, Examples) {
    EXPECT_EQ(arith::crt_pair(1, 3, 2, 5), 7);
    EXPECT_EQ(arith::crt_pair(0, 7, 0, 11), 0);
    EXPECT_EQ(arith::crt_pair(2, 4, 1, 9), 10);
    EXPECT_THROW(arith::crt_pair(1, 4, 1, 6), not_coprime_error);
}

TEST(Crt, MatchesScan) {
    for (i64 q1 = 1; q1 <= 15; ++q1) {
        for (i64 q2 = 1; q2 <= 15; ++q2) {
            if (arith::gcd(q1, q2) != 1) continue;
            for (i64 r = 0; r < q1 * q2; ++r) ASSERT_EQ(arith::crt_pair(r % q1, q1, r % q2, q2), r);
        }
    }
}

TEST(Arith, GcdConventionAndMobius) {
    EXPECT_EQ(arith::gcd(0, 12), 12);
    EXPECT_EQ(arith::gcd3(0, 0, 9), 9);
    EXPECT_EQ(arith::gcd3(4, 6, 10), 2);
    const int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
    for (int n = 1; n <= 10; ++n) EXPECT_EQ(arith::mobius(n), mu[n - 1]);
    EXPECT_EQ(arith::divisor_count(arith::factor(360)), 24);
    EXPECT_EQ(arith::divisors(arith::factor(12)), (std::vector<i64>{1, 2, 3, 4, 6, 12}));
}

TEST(Crt, UnreducedResidues) {
    EXPECT_EQ(arith::crt_pair(-1, 4, 10, 9), 19);
    EXPECT_EQ(arith::crt_pair(7, 3, 2, 5), 7);
}
