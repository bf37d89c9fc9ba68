#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "genhilbert/special_functions.hpp"

namespace genhilbert {

// passed <=> worst_residual <= tolerance.
struct CheckResult {
    std::string name;
    bool passed;
    double worst_residual;
    std::string worst_input;
    std::size_t samples;
    double tolerance;
};

// Kernel against both binomial rewrites, all m <= m_max, n <= n_max (relative).
CheckResult check_lemma21(const OperatorParams& params, std::size_t m_max, std::size_t n_max,
                          double tol = 1e-11);

// sum_m k(m,n) t^m (m+1)_alpha against (1-t)^{-n-beta-1} (n+beta-alpha+1)_alpha.
CheckResult check_lemma22_row(const OperatorParams& params, double t, std::size_t n,
                              double tol = 1e-8, std::size_t max_terms = 1'000'000);
// sum_n k(m,n) (1-t)^n (n+1)_{beta-alpha} against t^{-m-beta-1} (m+alpha+1)_{beta-alpha}.
CheckResult check_lemma22_col(const OperatorParams& params, double t, std::size_t m,
                              double tol = 1e-8, std::size_t max_terms = 1'000'000);

// (1-t)/(1-t e^{-x}) >= exp(-t x/(1-t)); residual is the largest violation.
CheckResult check_lemma23(const std::vector<double>& x_grid, const std::vector<double>& t_grid,
                          double tol = 1e-14);

// y^{-z} = Gamma(z)^{-1} int_0^inf e^{-yx} x^{z-1} dx by quadrature on [0, X]
// plus an incomplete-Gamma tail bound (relative residual).
CheckResult check_lemma24(const std::vector<double>& y_grid, const std::vector<double>& z_grid,
                          double quad_tol = 1e-8);

// (n+1)_s <= (n+s+1)^s for s >= 0 and (n+1)_s <= (n+1)^{s+1}/(n+s+1) for s in (-1, 0).
CheckResult check_lemma25(std::size_t n_max, const std::vector<double>& s_grid,
                          double tol = 1e-12);

struct Lemma26Result {
    double epsilon_found;
    CheckResult check;
};

// Searches eps = 2^{-k}, k = 1..40 (admissible ones), for
//   sum_{n>N} a_n(eps) >= (1-rho) sum_{n>=0} a_n(eps),  a_n = (n+beta+1)^{-1-p eps},
// with certified sums; asserts every smaller tested eps also succeeds.
// Throws BudgetExhausted when no eps succeeds.
Lemma26Result check_lemma26(double beta, double p, double rho, std::size_t N);

// C_mu(0, p) for Lebesgue against pi csc(pi/p) (closed form and quadrature),
// plus the bound C for p=2 section norms (size N) and extremal Rayleigh ratios
// with M explicit rows.
CheckResult check_classical_hilbert(const std::vector<double>& p_grid, std::size_t N,
                                    std::size_t M_truncation, double tol = 1e-10);

struct VerifyConfig {
    std::vector<OperatorParams> lemma21_params;
    std::size_t lemma21_max = 100;
    std::vector<OperatorParams> lemma22_params;
    std::vector<double> lemma22_t;
    std::vector<std::size_t> lemma22_indices;
    double lemma22_tol = 1e-8;
    std::size_t lemma22_budget = 1'000'000;
    std::vector<double> lemma23_x;
    std::vector<double> lemma23_t;
    std::vector<double> lemma24_y;
    std::vector<double> lemma24_z;
    double lemma24_tol = 1e-8;
    std::size_t lemma25_n_max = 10'000;
    std::vector<double> lemma25_s;
    double lemma26_beta = 0.0;
    double lemma26_p = 2.0;
    std::vector<double> lemma26_rho;
    std::vector<std::size_t> lemma26_N;
    std::vector<double> hilbert_p;
    std::size_t hilbert_N = 64;
    std::size_t hilbert_M = 256;
    // Replaces every check's tolerance when set.
    std::optional<double> tol_override;
};

VerifyConfig default_verify_config();

// Names accepted by run_verification's filter, in output order.
const std::vector<std::string>& verification_check_names();

// One aggregated row per check (worst residual over the check's grid). An
// empty filter runs everything; unknown names throw DomainError.
std::vector<CheckResult> run_verification(const VerifyConfig& config,
                                          const std::vector<std::string>& only = {});

}  // namespace genhilbert
