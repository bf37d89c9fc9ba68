#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <genhilbert/errors.hpp>
#include <genhilbert/special_functions.hpp>

#include "oracles.hpp"

using namespace genhilbert;

TEST(OperatorParams, AcceptsInteriorAndRejectsEachInvariant) {
    EXPECT_NO_THROW(OperatorParams(0.0, 0.0));
    EXPECT_NO_THROW(OperatorParams(-0.3, 0.2));
    try {
        OperatorParams(-1.5, 0.0);
        FAIL() << "alpha = -1.5 accepted";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("alpha > -1"), std::string::npos);
    }
    try {
        OperatorParams(0.0, -1.0);
        FAIL() << "beta = -1 accepted";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("beta > -1"), std::string::npos);
    }
    try {
        OperatorParams(2.0, 0.5);
        FAIL() << "beta - alpha = -1.5 accepted";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("beta - alpha > -1"), std::string::npos);
    }
    EXPECT_THROW(OperatorParams(std::nan(""), 0.0), DomainError);
}

TEST(LogGamma, Examples) {
    EXPECT_EQ(log_gamma(1.0), 0.0);
    EXPECT_EQ(log_gamma(2.0), 0.0);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-15);
    EXPECT_LT(oracle::rel_err(log_gamma(0.5), oracle::lgamma(0.5)), 1e-15);
    EXPECT_THROW(log_gamma(0.0), DomainError);
    EXPECT_THROW(log_gamma(-2.0), DomainError);
}

TEST(LogGamma, MatchesHighPrecisionOracle) {
    gen::Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const double x = std::pow(10.0, rng.uniform(-3.0, 4.0));
        const double want = oracle::lgamma(x);
        EXPECT_NEAR(log_gamma(x), want, 4e-15 * std::max(1.0, std::fabs(want))) << "x=" << x;
    }
}

TEST(LogGammaRatio, KeepsRelativeAccuracyForLargeArguments) {
    gen::Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const double x = std::pow(10.0, rng.uniform(-1.0, 6.0));
        const double s = rng.uniform(-0.99, 5.0) * (rng.uniform(0, 1) < 0.5 ? 1.0 : 0.001);
        if (!(x + s > 0.0)) {
            continue;
        }
        const double want = oracle::lgamma_ratio(x, s);
        EXPECT_NEAR(log_gamma_ratio(x, s), want, 1e-13 * std::max(1.0, std::fabs(want)))
            << "x=" << x << " s=" << s;
    }
}

TEST(LogGammaRatio, Additivity) {
    gen::Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        const double x = rng.uniform(0.1, 500.0);
        const double s = rng.uniform(0.0, 20.0);
        const double t = rng.uniform(0.0, 20.0);
        const double lhs = log_gamma_ratio(x, s + t);
        const double rhs = log_gamma_ratio(x, s) + log_gamma_ratio(x + s, t);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::fabs(lhs)));
    }
}

TEST(Pochhammer, Examples) {
    EXPECT_EQ(pochhammer_shifted(0.7, 0.0), 1.0);
    EXPECT_NEAR(pochhammer_shifted(0.0, 2.0), 2.0, 1e-15);
    EXPECT_LT(oracle::rel_err(pochhammer_shifted(2.0, 0.5), oracle::pochhammer(2.0, 0.5)), 1e-14);
    EXPECT_LT(oracle::rel_err(pochhammer_shifted(2.0, 0.5), std::tgamma(3.5) / std::tgamma(3.0)), 1e-14);
}

TEST(Pochhammer, ZeroShiftIsExactOneEvenForHugeGamma) {
    for (double g : {-0.999, 0.0, 1e-300, 7.5, 1e300}) {
        EXPECT_EQ(pochhammer_shifted(g, 0.0), 1.0) << g;
    }
}

TEST(Pochhammer, Recurrence) {
    gen::Rng rng(14);
    for (int i = 0; i < 500; ++i) {
        const double g = rng.uniform(-0.95, 200.0);
        const double s = rng.uniform(-0.9, 10.0);
        if (!(g + s > -1.0)) {
            continue;
        }
        const double lhs = pochhammer_shifted(g, s + 1.0);
        const double rhs = pochhammer_shifted(g, s) * (g + s + 1.0);
        EXPECT_LT(oracle::rel_err(lhs, rhs), 1e-12) << "g=" << g << " s=" << s;
    }
}

TEST(RealBinomial, Examples) {
    for (double g : {-7.3, -1.0, 0.0, 2.5, 100.0}) {
        EXPECT_EQ(real_binomial(g, 0), 1.0);
    }
    EXPECT_EQ(real_binomial(5.0, 2), 10.0);
    EXPECT_EQ(real_binomial(-3.0, 2), 6.0);
    EXPECT_EQ(real_binomial(4.0, 7), 0.0);
}

TEST(Kernel, Examples) {
    const OperatorParams hilbert(0.0, 0.0);
    EXPECT_EQ(log_kernel(0, 0, hilbert), 0.0);
    EXPECT_NEAR(log_kernel(2, 3, hilbert), std::log(10.0), 1e-15);
    EXPECT_EQ(kernel(2, 3, hilbert), 10.0);
    const OperatorParams p(0.5, 1.0);
    const double want = std::log(std::tgamma(4.0) / (std::tgamma(2.5) * std::tgamma(2.5)));
    EXPECT_NEAR(log_kernel(1, 1, p), want, 1e-14);
    EXPECT_NEAR(log_kernel(1, 1, p), oracle::log_kernel(1, 1, 0.5, 1.0), 1e-15);
}

TEST(Kernel, MatchesOracleOverRandomParameters) {
    gen::Rng rng(15);
    for (int i = 0; i < 400; ++i) {
        const OperatorParams p = rng.params();
        const auto m = rng.index(0, 300);
        const auto n = rng.index(0, 300);
        const double want = oracle::log_kernel(m, n, p.alpha(), p.beta());
        EXPECT_NEAR(log_kernel(m, n, p), want, 1e-12 * std::max(1.0, std::fabs(want)))
            << "alpha=" << p.alpha() << " beta=" << p.beta() << " m=" << m << " n=" << n;
        if (m + n < 120) {
            EXPECT_LT(oracle::rel_err(kernel(m, n, p), oracle::kernel(m, n, p.alpha(), p.beta())), 1e-12);
        }
    }
}

TEST(Kernel, OverflowIsReportedNotInfinite) {
    const OperatorParams p(0.0, 0.0);
    EXPECT_THROW(kernel(5000, 5000, p), OverflowError);
    EXPECT_TRUE(std::isfinite(log_kernel(10000, 10000, p)));
}

TEST(Kernel, HilbertCaseIsTheBinomial) {
    const OperatorParams p(0.0, 0.0);
    for (std::uint64_t m = 0; m <= 60; ++m) {
        for (std::uint64_t n = 0; m + n <= 60; ++n) {
            const double b = real_binomial(static_cast<double>(n + m), m);
            EXPECT_LT(oracle::rel_err(kernel(m, n, p), b), 1e-12) << m << "," << n;
        }
    }
}

TEST(KernelAltForms, Examples) {
    const auto a = kernel_alt_forms(0, 0, OperatorParams(0.0, 0.0));
    EXPECT_EQ(a.m_form, 1.0);
    EXPECT_EQ(a.n_form, 1.0);
    const auto b = kernel_alt_forms(2, 3, OperatorParams(0.0, 0.0));
    EXPECT_NEAR(b.m_form, 10.0, 1e-13);
    EXPECT_NEAR(b.n_form, 10.0, 1e-13);
    const OperatorParams p(0.5, 1.0);
    const auto c = kernel_alt_forms(3, 2, p);
    const double k = std::exp(log_kernel(3, 2, p));
    EXPECT_LT(oracle::rel_err(c.m_form, k), 1e-12);
    EXPECT_LT(oracle::rel_err(c.n_form, k), 1e-12);
}

TEST(KernelAltForms, AgreeWithKernelEverywhere) {
    gen::Rng rng(16);
    for (int i = 0; i < 6; ++i) {
        const OperatorParams p = rng.params(0.1);
        for (std::uint64_t m = 0; m <= 200; m += 7) {
            for (std::uint64_t n = 0; n <= 200; n += 5) {
                const double lk = log_kernel(m, n, p);
                if (lk > 700.0) {
                    continue;
                }
                const double k = std::exp(lk);
                const auto f = kernel_alt_forms(m, n, p);
                EXPECT_LE(std::fabs(f.m_form - k), 1e-11 * k) << m << "," << n;
                EXPECT_LE(std::fabs(f.n_form - k), 1e-11 * k) << m << "," << n;
            }
        }
    }
}

TEST(LogBeta, Examples) {
    EXPECT_NEAR(log_beta(1.0, 1.0), 0.0, 1e-16);
    EXPECT_NEAR(log_beta(0.5, 0.5), std::log(std::numbers::pi), 1e-15);
    EXPECT_NEAR(log_beta(3.0, 4.0), std::log(2.0 * 6.0 / 720.0), 1e-15);
}

TEST(LogBeta, SymmetricAndMatchesOracle) {
    gen::Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        const double x = std::pow(10.0, rng.uniform(-2.0, 4.0));
        const double y = std::pow(10.0, rng.uniform(-2.0, 4.0));
        EXPECT_EQ(log_beta(x, y), log_beta(y, x));
        const double want = oracle::log_beta_fn(x, y);
        EXPECT_NEAR(log_beta(x, y), want, 2e-13 * std::max(1.0, std::fabs(want)));
    }
}

TEST(HurwitzZeta, MatchesRiemannZetaOracle) {
    for (double s : {1.01, 1.1, 1.6, 2.0, 2.6, 5.0}) {
        for (unsigned q : {1u, 2u, 7u}) {
            EXPECT_LT(oracle::rel_err(hurwitz_zeta(s, q), oracle::hurwitz_integer_q(s, q)), 1e-13)
                << "s=" << s << " q=" << q;
        }
        EXPECT_LT(oracle::rel_err(hurwitz_zeta(s, 0.5), oracle::hurwitz_half(s)), 1e-13) << s;
    }
}
