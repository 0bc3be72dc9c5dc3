#include <random>
#include <set>

#include <gtest/gtest.h>

#include "logimap/ring.hpp"

using namespace logimap;

TEST(MakeModulus, ComputesExactPower) {
    EXPECT_EQ(make_modulus(3, 3).value(), 27u);
    EXPECT_EQ(make_modulus(3, 7).value(), 2187u);
    EXPECT_EQ(make_modulus(2, 62).value(), std::uint64_t{1} << 62);
    EXPECT_EQ(make_modulus(3, 39).value(), 4052555153018976267ull);
}

TEST(MakeModulus, RejectsBadInput) {
    EXPECT_THROW(make_modulus(4, 2), not_prime);
    EXPECT_THROW(make_modulus(1, 2), not_prime);
    EXPECT_THROW(make_modulus(91, 1), not_prime);
    EXPECT_THROW(make_modulus(3, 0), invalid_exponent);
    EXPECT_THROW(make_modulus(3, 40), modulus_too_wide);
    EXPECT_THROW(make_modulus(2, 63), modulus_too_wide);
}

TEST(Step, MatchesFigureCycle) {
    const auto m = make_modulus(3, 3);
    EXPECT_EQ(step(3, 19, m), 12u);
    EXPECT_EQ(step(12, 19, m), 21u);
    EXPECT_EQ(step(21, 19, m), 3u);
    for (residue mu = 0; mu < 27; ++mu) EXPECT_EQ(step(0, mu, m), 0u);
}

TEST(Step, NoOverflowNearWordLimit) {
    const auto m = make_modulus(3, 39);
    const residue x = m.value() - 1;
    const residue mu = m.value() - 2;
    const big_int expect = big_int(mu) * x * (big_int(x) + 1) % m.value();
    EXPECT_EQ(big_int(step(x, mu, m)), expect);
    EXPECT_EQ(step(big_int(x), big_int(mu), big_int(m.value())), expect);
}

TEST(Iterate, Examples) {
    EXPECT_EQ(iterate(3, 19, make_modulus(3, 3), 3), 3u);
    EXPECT_EQ(iterate(50, 20, make_modulus(3, 7), 0), 50u);
    EXPECT_EQ(iterate(3, 19, make_modulus(3, 4), 9), 3u);
    EXPECT_NE(iterate(3, 19, make_modulus(3, 4), 3), 3u);
}

TEST(Iterate, CompositionCoherence) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const unsigned p = std::array{2u, 3u, 5u, 7u}[rng() % 4];
        const auto m = make_modulus(p, 1 + rng() % 6);
        const residue x0 = rng() % m.value();
        const residue mu = rng() % m.value();
        const std::uint64_t a = rng() % 40;
        const std::uint64_t b = rng() % 40;
        EXPECT_EQ(iterate(x0, mu, m, a + b), iterate(iterate(x0, mu, m, a), mu, m, b));
    }
}

TEST(EvalUnreduced, Examples) {
    EXPECT_EQ(eval_f_unreduced(3, 2, 1), 24);
    EXPECT_EQ(eval_f_unreduced(3, 2, 2), 1200);
    EXPECT_EQ(eval_f_unreduced(0, 17, 4), 0);
}

TEST(EvalUnreduced, ReductionCoherence) {
    for (unsigned p : {2u, 3u, 5u}) {
        const auto m = make_modulus(p, 3);
        for (residue mu = 0; mu < m.value(); ++mu)
            for (residue x = 0; x < m.value(); ++x)
                ASSERT_EQ(big_int(step(x, mu, m)), eval_f_unreduced(x, mu, 1) % m.value()) << p << " " << mu << " " << x;
    }
}

TEST(ComposePoly, Examples) {
    auto as_ints = [](const int_poly& p) {
        std::vector<long long> out;
        for (const auto& c : p.coefficients()) out.push_back(c.convert_to<long long>());
        return out;
    };
    EXPECT_EQ(as_ints(compose_poly(5, 2)), (std::vector<long long>{0, 25, 150, 250, 125}));
    EXPECT_EQ(as_ints(compose_poly(1, 1)), (std::vector<long long>{0, 1, 1}));
    // Independently expanded with a computer algebra system.
    EXPECT_EQ(as_ints(compose_poly(2, 3)), (std::vector<long long>{0, 8, 56, 224, 560, 896, 896, 512, 128}));
}

TEST(ComposePoly, DegreeCap) {
    EXPECT_THROW(compose_poly(2, 13), degree_cap_exceeded);
    EXPECT_THROW(compose_poly(2, 5, 4), degree_cap_exceeded);
    EXPECT_EQ(compose_poly(2, 4, 4).degree(), 16);
    EXPECT_THROW(compose_poly(2, 0), invalid_argument);
}

TEST(ComposePoly, CoefficientStructure) {
    for (unsigned mu = 1; mu <= 20; ++mu) {
        for (unsigned reps = 1; reps <= 6; ++reps) {
            const auto poly = compose_poly(mu, reps);
            const big_int bmu = mu;
            big_int square = 0;
            for (unsigned i = reps; i <= 2 * reps - 1; ++i) square += boost::multiprecision::pow(bmu, i);
            ASSERT_EQ(poly.degree(), 1L << reps);
            EXPECT_EQ(poly.coeff(0), 0);
            EXPECT_EQ(poly.coeff(1), boost::multiprecision::pow(bmu, reps));
            EXPECT_EQ(poly.coeff(2), square);
            for (long i = 3; i <= poly.degree(); ++i) EXPECT_GT(poly.coeff(i), 0) << mu << " " << reps << " " << i;
        }
    }
}

TEST(ComposePoly, AgreesWithIterationPointwise) {
    for (unsigned p : {2u, 3u, 5u}) {
        const auto m = make_modulus(p, 3);
        for (residue mu : {1u, 2u, 7u, 19u}) {
            for (unsigned reps = 1; reps <= 5; ++reps) {
                const auto poly = compose_poly(mu, reps);
                for (residue x = 0; x < m.value(); ++x) {
                    ASSERT_EQ(poly.eval_mod(x, m.value()), iterate(x, m.reduce(mu), m, reps));
                    ASSERT_EQ(poly(big_int(x)), eval_f_unreduced(x, mu, reps));
                }
            }
        }
    }
}

TEST(Valuation, Examples) {
    EXPECT_EQ(p_adic_valuation(1197, 3), valuation::finite(2));
    EXPECT_EQ(p_adic_valuation(0, 3), valuation::infinite());
    EXPECT_EQ(p_adic_valuation(7, 3), valuation::finite(0));
    EXPECT_EQ(p_adic_valuation(-162, 3), valuation::finite(4));
    EXPECT_EQ(p_adic_valuation(big_int(1) << 200, 2), valuation::finite(200));
}

TEST(Valuation, Multiplicativity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const unsigned p = std::array{2u, 3u, 5u, 7u}[rng() % 4];
        const long long a = static_cast<long long>(rng() % 20000) - 10000;
        const long long b = static_cast<long long>(rng() % 20000) - 10000;
        EXPECT_EQ(p_adic_valuation(big_int(a) * b, p), p_adic_valuation(a, p) + p_adic_valuation(b, p));
    }
}

TEST(PermutationOnH, EveryCoprimeMuIsBijective) {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        for (unsigned n = 1; n <= 5; ++n) {
            const auto m = make_modulus(p, n);
            int sampled = 0;
            for (residue mu = 1; sampled < 50; ++mu) {
                if (mu % p == 0) continue;
                ++sampled;
                std::set<residue> image;
                for (residue x = 0; x < m.value(); x += p) {
                    const residue y = step(x, m.reduce(mu), m);
                    ASSERT_TRUE(m.in_h(y));
                    image.insert(y);
                }
                ASSERT_EQ(image.size(), m.h_size()) << "p=" << p << " n=" << n << " mu=" << mu;
            }
        }
    }
}
