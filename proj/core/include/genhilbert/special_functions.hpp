#pragma once

#include <cstdint>
#include <utility>

namespace genhilbert {

// The pair (alpha, beta) of the generalized kernel. Construction enforces
// alpha > -1, beta > -1 and beta - alpha > -1, so every Gamma argument used
// by the kernel is strictly positive.
class OperatorParams {
public:
    OperatorParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    // beta - alpha, the shift that appears in the n-side Gamma factor.
    double gap() const noexcept { return beta_ - alpha_; }

    friend bool operator==(const OperatorParams&, const OperatorParams&) = default;

private:
    double alpha_;
    double beta_;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// ln Gamma(x + s) - ln Gamma(x), requires x > 0 and x + s > 0. Uses a Stirling
// difference when both arguments are large so that the result keeps relative
// accuracy even when each log-Gamma is huge.
double log_gamma_ratio(double x, double s);

// (gamma+1)_s = Gamma(gamma+s+1) / Gamma(gamma+1).
double pochhammer_shifted(double gamma, double s);
double log_pochhammer_shifted(double gamma, double s);

// gamma (gamma-1) ... (gamma-m+1) / m!, literal product (gamma may be negative).
double real_binomial(double gamma, std::uint64_t m);

// ln k(m,n) with k(m,n) = Gamma(n+m+beta+1) / (Gamma(m+alpha+1) Gamma(n+beta-alpha+1)).
double log_kernel(std::uint64_t m, std::uint64_t n, const OperatorParams& params);
// Real-argument extension, used by integral tail comparisons (m, n >= 0).
double log_kernel_real(double m, double n, const OperatorParams& params);

// exp(log_kernel); throws OverflowError instead of returning infinity.
double kernel(std::uint64_t m, std::uint64_t n, const OperatorParams& params);

struct KernelAltForms {
    double m_form;
    double n_form;
};

// The two binomial rewrites of the kernel:
//   m-form: (-1)^m C(-n-beta-1, m) (m+1)_alpha^{-1} (n+beta-alpha+1)_alpha
//   n-form: (-1)^n C(-m-beta-1, n) (n+1)_{beta-alpha}^{-1} (m+alpha+1)_{beta-alpha}
KernelAltForms kernel_alt_forms(std::uint64_t m, std::uint64_t n, const OperatorParams& params);

// ln B(x, y) for x, y > 0.
double log_beta(double x, double y);

// Hurwitz zeta sum_{k>=0} (k+q)^{-s}, s > 1, q > 0 (Euler-Maclaurin; value only,
// certified enclosures live in series.hpp).
double hurwitz_zeta(double s, double q);

}  // namespace genhilbert
