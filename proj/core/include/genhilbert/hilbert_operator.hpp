#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "genhilbert/measure.hpp"
#include "genhilbert/sequence_generator.hpp"
#include "genhilbert/series.hpp"
#include "genhilbert/spaces.hpp"
#include "genhilbert/special_functions.hpp"

namespace genhilbert {

// N x M leading block of the operator matrix,
// entries[n][m] = k(m,n) * int t^m (1-t)^n dmu, stored row-major.
class SectionMatrix {
public:
    SectionMatrix(OperatorParams params, Measure measure, std::size_t rows, std::size_t cols,
                  std::vector<double> entries);

    const OperatorParams& params() const noexcept { return params_; }
    const Measure& measure() const noexcept { return measure_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t n, std::size_t m) const { return entries_[n * cols_ + m]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    // y[n] = sum_m entries[n][m] x[m]; x.size() must equal cols().
    std::vector<double> multiply(const std::vector<double>& x) const;

private:
    OperatorParams params_;
    Measure measure_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

// Throws OverflowError naming (n, m) if an entry is not representable.
SectionMatrix build_section(const OperatorParams& params, const Measure& mu, std::size_t N,
                            std::size_t M);

// (H a)(n) for n in [0, n_max]; exact finite sum since a has finite support.
std::vector<double> apply(const OperatorParams& params, const Measure& mu,
                          const std::vector<double>& a, std::size_t n_max);

struct TailOptions {
    double tol = 1e-10;
    // Maximum truncation index per row and component.
    std::size_t max_terms = 1'000'000;
};

// Certified enclosures of (H a)(n), n in [0, n_max], for an infinite generator.
// Each interval has width <= tol * hi. Atom components use a geometric tail
// bound, density components an integral comparison on the convex tail.
// A divergent row series is reported as [inf, inf].
std::vector<Interval> apply_tail_bounded(const OperatorParams& params, const Measure& mu,
                                         const Generator& gen, std::size_t n_max,
                                         const TailOptions& opts = {});

struct PowerIterationOptions {
    double rel_tol = 1e-12;
    std::size_t max_iterations = 100'000;
};

// Largest singular value of B = diag(w2^{1/2}) S diag(w1^{-1/2}) (p = 2 weights)
// for the N x N section S. Power iteration on B^T B from the all-ones and the
// alternating-sign start; the larger value is returned. Throws BudgetExhausted
// (with the Collatz-Wielandt bracket) when the iteration cap is reached.
double two_norm_section(const OperatorParams& params, const Measure& mu, std::size_t N,
                        const PowerIterationOptions& opts = {});

// Certified ||H a||_{p,w2}^p for finitely supported inputs of length <= L:
// exact rows n < N plus a column-wise Minkowski bound on the rows n >= N.
// N is enlarged automatically until the atom tails are geometric.
class FiniteInputNorm {
public:
    FiniteInputNorm(const OperatorParams& params, const Measure& mu, double p, std::size_t L,
                    std::size_t N);

    std::size_t rows() const noexcept { return section_.rows(); }
    Interval norm_power(const std::vector<double>& a) const;
    // Interval of ||H a||_{p,w2}.
    Interval norm(const std::vector<double>& a) const;

private:
    double p_;
    SectionMatrix section_;
    std::vector<double> w2_;
    // tau_[m] bounds (sum_{n>=N} w2(n) entries[n][m]^p)^{1/p}.
    std::vector<double> tau_;
};

struct RayleighOptions {
    // Output rows evaluated explicitly.
    std::size_t rows = 1000;
    TailOptions tail{1e-9, 1'000'000};
    // Add the analytic lower bound for rows >= `rows` (extremal_lp input only).
    bool output_tail_bound = true;
};

struct RayleighResult {
    // (numerator_lo / denominator_hi)^{1/p}; +inf when the output diverges.
    double ratio;
    double numerator_lo;
    double denominator_hi;
    std::size_t rows;
};

// ||H a||_{p,w2} / ||a||_{p,w1} with the lower end of the numerator and the
// upper end of the denominator. For p = inf the weights are w2bar / w1bar.
RayleighResult rayleigh_ratio(const OperatorParams& params, const Measure& mu, Exponent p,
                              const std::vector<double>& a, const RayleighOptions& opts = {});
RayleighResult rayleigh_ratio(const OperatorParams& params, const Measure& mu, Exponent p,
                              const Generator& gen, const RayleighOptions& opts = {});

// Lower bound for sum_{n>=M} w2(n) (H a)(n)^p with a the extremal_lp sequence,
// from an explicit minorant of each row that increases with n.
double extremal_output_tail_lower(const OperatorParams& params, const Measure& mu, double p,
                                  double epsilon, std::size_t M);

struct LowerBound {
    // 0 for the p = inf family, which has no epsilon.
    double epsilon;
    std::size_t truncation;
    double ratio;
};

// Rayleigh ratios of extremal_lp(eps) for every (eps, M) pair, where M is the
// number of explicitly evaluated output rows. Sorted by eps descending, then M.
std::vector<LowerBound> lower_bound_sweep(const OperatorParams& params, const Measure& mu, double p,
                                          const std::vector<double>& epsilons,
                                          const std::vector<std::size_t>& truncations,
                                          const RayleighOptions& opts = {});

struct InfNormCheck {
    Interval computed_sup;
    IntegralResult constant;
    // w2bar(n) (H a)(n) for n in [0, n_cap].
    std::vector<Interval> rows;
};

// sup_n w2bar(n) (H a)(n) with a_m = (m+1)_alpha, against C_mu(beta, inf).
InfNormCheck inf_norm_check(const OperatorParams& params, const Measure& mu, std::size_t n_cap,
                            double tol);

enum class Verdict { bounded_with_norm, unbounded_detected, inconclusive };
std::string_view to_string(Verdict v);

struct SectionPoint {
    std::size_t n;
    double two_norm;
};

struct NormReport {
    IntegralResult constant;
    std::vector<LowerBound> lower_bounds;
    std::vector<SectionPoint> section_curve;
    Verdict verdict;
};

struct ReportConfig {
    std::vector<double> epsilons;
    std::vector<std::size_t> truncations;
    std::vector<std::size_t> section_sizes;
    // unbounded_detected when some ratio exceeds growth_factor * the first ratio.
    double growth_factor = 10.0;
    RayleighOptions rayleigh{};
};

// Default schedules; epsilons outside (0, (beta+1)/p) are dropped.
ReportConfig default_report_config(const OperatorParams& params, Exponent p);

NormReport norm_report(const OperatorParams& params, const Measure& mu, Exponent p,
                       const ReportConfig& config);

}  // namespace genhilbert
