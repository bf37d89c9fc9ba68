#pragma once

// Reference values computed independently of the library: 50-digit
// Boost.Multiprecision special functions and a dense Eigen eigensolver.

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <genhilbert/special_functions.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline double lgamma(double x) { return static_cast<double>(boost::math::lgamma(mp(x))); }

inline mp lgamma_mp(const mp& x) { return boost::math::lgamma(x); }

// ln Gamma(x+s) - ln Gamma(x) in 50 digits.
inline double lgamma_ratio(double x, double s) {
    return static_cast<double>(lgamma_mp(mp(x) + mp(s)) - lgamma_mp(mp(x)));
}

inline double pochhammer(double gamma, double s) {
    return static_cast<double>(exp(lgamma_mp(mp(gamma) + mp(s) + 1) - lgamma_mp(mp(gamma) + 1)));
}

inline double kernel(std::uint64_t m, std::uint64_t n, double alpha, double beta) {
    const mp md(m), nd(n), a(alpha), b(beta);
    return static_cast<double>(
        exp(lgamma_mp(nd + md + b + 1) - lgamma_mp(md + a + 1) - lgamma_mp(nd + b - a + 1)));
}

inline double log_kernel(std::uint64_t m, std::uint64_t n, double alpha, double beta) {
    const mp md(m), nd(n), a(alpha), b(beta);
    return static_cast<double>(lgamma_mp(nd + md + b + 1) - lgamma_mp(md + a + 1) -
                               lgamma_mp(nd + b - a + 1));
}

inline double beta_fn(double x, double y) {
    return static_cast<double>(exp(lgamma_mp(mp(x)) + lgamma_mp(mp(y)) - lgamma_mp(mp(x) + mp(y))));
}

inline double log_beta_fn(double x, double y) {
    return static_cast<double>(lgamma_mp(mp(x)) + lgamma_mp(mp(y)) - lgamma_mp(mp(x) + mp(y)));
}

// sum_{k>=0} (k+q)^{-s} for integer q >= 1 from the Riemann zeta function.
inline double hurwitz_integer_q(double s, unsigned q) {
    mp z = boost::math::zeta(mp(s));
    for (unsigned k = 1; k < q; ++k) {
        z -= pow(mp(k), -mp(s));
    }
    return static_cast<double>(z);
}

// sum_{k>=0} (k+1/2)^{-s} = (2^s - 1) zeta(s).
inline double hurwitz_half(double s) {
    return static_cast<double>((pow(mp(2), mp(s)) - 1) * boost::math::zeta(mp(s)));
}

// Largest eigenvalue of the N x N Hilbert matrix 1/(i+j+1).
inline double hilbert_top_eigenvalue(int N) {
    Eigen::MatrixXd H(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            H(i, j) = 1.0 / (i + j + 1.0);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    return es.eigenvalues().maxCoeff();
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

}  // namespace oracle

namespace gen {

// Small seeded generator for property tests; the seed is fixed per test so
// failures reproduce.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    std::uint64_t index(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(eng_);
    }

    // alpha, beta drawn inside the admissible region with a margin.
    genhilbert::OperatorParams params(double margin = 0.05) {
        for (;;) {
            const double a = uniform(-1.0 + margin, 3.0);
            const double b = uniform(-1.0 + margin, 3.0);
            if (b - a > -1.0 + margin) {
                return genhilbert::OperatorParams(a, b);
            }
        }
    }

    // Nonnegative vector; roughly a third of the entries are zero.
    std::vector<double> nonneg_vector(std::size_t len) {
        std::vector<double> v(len);
        for (double& x : v) {
            x = uniform(0.0, 1.0) < 0.3 ? 0.0 : uniform(0.0, 1.0) * std::pow(10.0, uniform(-3.0, 1.0));
        }
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace gen
