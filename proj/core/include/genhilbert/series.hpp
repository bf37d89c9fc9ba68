#pragma once

#include <cstddef>
#include <functional>

namespace genhilbert {

// Closed real interval [lo, hi] used for certified sums.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const noexcept { return 0.5 * (lo + hi); }
    double width() const noexcept { return hi - lo; }
    double radius() const noexcept { return 0.5 * (hi - lo); }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }

    Interval& operator+=(const Interval& o) noexcept {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    friend Interval operator+(Interval a, const Interval& b) noexcept { return a += b; }
    friend Interval operator*(double c, const Interval& a) noexcept { return {c * a.lo, c * a.hi}; }
};

// Neumaier compensated accumulation.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Certified enclosure of sum_{k>=K} (k+q)^{-s} (s > 1, k+q > 0 for k >= K)
// using only the convexity bounds
//   int_K^inf f + f(K)/2  <=  sum  <=  int_{K-1/2}^inf f.
Interval hurwitz_tail_bounds(double s, double q, std::size_t K);

// Certified enclosure of the full Hurwitz sum sum_{k>=0} (k+q)^{-s}: explicit
// terms up to an adaptively chosen K plus hurwitz_tail_bounds(K).
// Relative width <= rel_tol (throws BudgetExhausted past max_terms).
Interval hurwitz_zeta_interval(double s, double q, double rel_tol = 1e-12,
                               std::size_t max_terms = 50'000'000);
// Same for sum_{k>=start}.
Interval hurwitz_zeta_interval_from(double s, double q, std::size_t start, double rel_tol = 1e-12,
                                    std::size_t max_terms = 50'000'000);

// int_X^inf f(x) dx for f given as log f, decaying like x^{-kappa} (kappa > 1).
// Substitutes x = X w^{-1/(kappa-1)} so the integrand is bounded on w in (0, 1].
struct TailIntegral {
    double value;
    double abs_error;
};
TailIntegral power_tail_integral(const std::function<double(double)>& log_f, double X, double kappa,
                                 double rel_tol = 1e-11);

// Sum of f(k) over integers k >= K when f is decreasing on [K-1, inf) and
// decays like x^{-kappa}: [int_K^inf f, int_{K-1}^inf f] = [I(K), f(K) + I(K)]
// widened by the quadrature error. Caller must ensure monotonicity.
Interval monotone_tail_bounds(const std::function<double(double)>& log_f, std::size_t K,
                              double kappa, double rel_tol = 1e-11);

// Same sum when f is convex and decreasing on [K-1/2, inf):
// [int_K^inf f + f(K)/2, int_{K-1/2}^inf f]. The gap is about |f'(K)|/8, far
// tighter than the monotone bound.
Interval convex_tail_bounds(const std::function<double(double)>& log_f, std::size_t K, double kappa,
                            double rel_tol = 1e-11);

// Numerical guard for the convexity assumption: log f has positive second
// differences on a geometric grid starting at x0 (log-convex implies convex).
bool looks_log_convex(const std::function<double(double)>& log_f, double x0);

}  // namespace genhilbert
