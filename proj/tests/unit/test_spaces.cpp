#include <gtest/gtest.h>

#include <cmath>

#include <genhilbert/errors.hpp>
#include <genhilbert/spaces.hpp>

#include "oracles.hpp"

using namespace genhilbert;

TEST(Exponent, InfinityIsATag) {
    EXPECT_TRUE(Exponent::infinity().is_infinite());
    EXPECT_FALSE(Exponent::finite(2.0).is_infinite());
    EXPECT_THROW(Exponent::infinity().value(), std::logic_error);
    EXPECT_THROW(Exponent::finite(0.5), DomainError);
    EXPECT_THROW(Exponent::finite(INFINITY), DomainError);
}

TEST(WeightValue, Examples) {
    EXPECT_DOUBLE_EQ(weight_value(W1{OperatorParams(0, 0), 2.0}, 7), 1.0);
    EXPECT_DOUBLE_EQ(weight_value(W2Bar{OperatorParams(0, 3)}, 0), 1.0);
    const double want = std::pow(oracle::pochhammer(3.0, 0.5), -2.0) * oracle::pochhammer(3.0, 1.0);
    EXPECT_LT(oracle::rel_err(weight_value(W1{OperatorParams(0.5, 1.0), 2.0}, 3), want), 1e-14);
    EXPECT_THROW(validate(W1{OperatorParams(0, 0), 0.5}), DomainError);
}

TEST(WeightValue, MatchesDefinitionAndIsPositive) {
    gen::Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        const OperatorParams prm = rng.params();
        const double a = prm.alpha();
        const double b = prm.beta();
        const double p = rng.uniform(1.0, 5.0);
        for (std::size_t m : {0ul, 1ul, 17ul, 999ul, 10000ul}) {
            const double md = static_cast<double>(m);
            const std::vector<std::pair<WeightSpec, double>> cases{
                {W1{prm, p}, std::pow(oracle::pochhammer(md, a), -p) * oracle::pochhammer(md, b)},
                {W2{prm, p}, std::pow(oracle::pochhammer(md + b - a, a), -p) * oracle::pochhammer(md, b)},
                {W1Bar{prm}, 1.0 / oracle::pochhammer(md, a)},
                {W2Bar{prm}, 1.0 / oracle::pochhammer(md + b - a, a)},
                {PowerWeight{b}, std::pow(md + 1.0, b)},
                {UnitWeight{}, 1.0}};
            for (const auto& [spec, want] : cases) {
                const double got = weight_value(spec, m);
                EXPECT_GT(got, 0.0);
                EXPECT_LT(oracle::rel_err(got, want), 1e-11) << "m=" << m << " index=" << spec.index();
                EXPECT_NEAR(log_weight(spec, md), std::log(want), 1e-11 * std::max(1.0, std::fabs(std::log(want))));
            }
        }
    }
}

TEST(PNorm, Examples) {
    EXPECT_DOUBLE_EQ(p_norm({{3.0, 4.0}, UnitWeight{}, Exponent::finite(2.0)}), 5.0);
    EXPECT_DOUBLE_EQ(p_norm({{1.0, 1.0, 1.0}, UnitWeight{}, Exponent::infinity()}), 1.0);
    EXPECT_DOUBLE_EQ(p_norm({{1.0, 2.0}, PowerWeight{1.0}, Exponent::finite(1.0)}), 5.0);
}

TEST(PNorm, UnitWeightP2IsEuclidean) {
    gen::Rng rng(32);
    for (int i = 0; i < 100; ++i) {
        auto v = rng.nonneg_vector(rng.index(1, 200));
        for (double& x : v) {
            x *= rng.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
        }
        oracle::mp acc = 0;
        for (double x : v) {
            acc += oracle::mp(x) * x;
        }
        const double want = static_cast<double>(sqrt(acc));
        EXPECT_LT(oracle::rel_err(p_norm({v, UnitWeight{}, Exponent::finite(2.0)}), want), 1e-14);
    }
}

TEST(ExtremalLp, Examples) {
    const OperatorParams h(0, 0);
    const auto a = extremal_sequence_lp(h, 2.0, 0.1, 4);
    EXPECT_DOUBLE_EQ(a[0], 1.0);
    EXPECT_LT(oracle::rel_err(a[3], std::pow(4.0, -0.6)), 1e-15);

    const OperatorParams p(0.5, 1.0);
    const double want = oracle::pochhammer(5.0, 0.5) * std::pow(oracle::pochhammer(5.0, 1.0), -0.5) *
                        std::pow(7.0, -(0.5 + 0.2));
    EXPECT_LT(oracle::rel_err(extremal_sequence_lp(p, 2.0, 0.2, 6)[5], want), 1e-14);

    EXPECT_THROW(extremal_sequence_lp(h, 2.0, 0.5, 3), DomainError);
    EXPECT_THROW(extremal_sequence_lp(h, 2.0, 0.0, 3), DomainError);
}

TEST(ExtremalLp, WeightedPowerTelescopesToTailMassSequence) {
    gen::Rng rng(33);
    for (int i = 0; i < 30; ++i) {
        const OperatorParams prm = rng.params();
        const double p = rng.uniform(1.0, 4.0);
        const double eps = rng.uniform(0.01, 0.99) * (prm.beta() + 1.0) / p;
        const auto a = extremal_sequence_lp(prm, p, eps, 300);
        for (std::size_t m = 0; m < a.size(); ++m) {
            const double lhs = weight_value(W1{prm, p}, m) * std::pow(a[m], p);
            const double rhs = lemma26_sequence(prm.beta(), p, eps, m);
            EXPECT_LT(oracle::rel_err(lhs, rhs), 1e-11) << m;
        }
    }
}

TEST(ExtremalLp, FullNormPowerEnclosesZeta) {
    const OperatorParams h(0, 0);
    const Interval z = extremal_lp_norm_power(h, 2.0, 0.1);
    EXPECT_TRUE(z.contains(oracle::hurwitz_integer_q(1.2, 1))) << z.lo << " " << z.hi;
    EXPECT_LE(z.width(), 1e-12 * z.hi);
    const Interval zb = extremal_lp_norm_power(OperatorParams(0.3, 1.0), 2.0, 0.25);
    EXPECT_TRUE(zb.contains(oracle::hurwitz_integer_q(1.5, 2)));
}

TEST(ExtremalInf, Examples) {
    for (double x : extremal_sequence_inf(OperatorParams(0, 0), 10)) {
        EXPECT_EQ(x, 1.0);
    }
    EXPECT_NEAR(extremal_sequence_inf(OperatorParams(1, 1), 5)[4], 5.0, 1e-14);
    EXPECT_LT(oracle::rel_err(extremal_sequence_inf(OperatorParams(0.5, 1), 3)[2], oracle::pochhammer(2.0, 0.5)),
              1e-15);
}

TEST(TailMassSequence, Examples) {
    EXPECT_DOUBLE_EQ(lemma26_sequence(0.0, 1.0, 0.5, 0), 1.0);
    EXPECT_LT(oracle::rel_err(lemma26_sequence(0.0, 2.0, 0.25, 1), std::pow(2.0, -1.5)), 1e-15);
    EXPECT_LT(oracle::rel_err(lemma26_sequence(1.0, 2.0, 0.1, 3), std::pow(5.0, -1.2)), 1e-15);
}

TEST(DirichletNorm, Examples) {
    EXPECT_DOUBLE_EQ(dirichlet_norm({1.0, 1.0}, 1.0), std::sqrt(2.0));
    for (double lambda : {-1.0, 0.0, 0.5, 2.0}) {
        EXPECT_DOUBLE_EQ(dirichlet_norm({1.0, 0.0, 0.0}, lambda), 1.0);
    }
    EXPECT_DOUBLE_EQ(dirichlet_norm({0.0, 1.0}, 0.0), std::sqrt(2.0));
}

TEST(WeightEquivalence, Examples) {
    const auto [lo0, hi0] = weight_equivalence_check(0.0, 100);
    EXPECT_EQ(lo0, 1.0);
    EXPECT_EQ(hi0, 1.0);
    // (n+1)_1 = Gamma(n+2)/Gamma(n+1) = n+1, so the ratio is identically 1.
    const auto [lo1, hi1] = weight_equivalence_check(1.0, 1000);
    EXPECT_NEAR(hi1, 1.0, 1e-13);
    EXPECT_NEAR(lo1, 1.0, 1e-13);
    const auto [lo, hi] = weight_equivalence_check(0.5, 1000);
    EXPECT_GT(lo, 0.5);
    EXPECT_LT(hi, 2.0);
    EXPECT_LT(hi / lo, 2.0);
}
