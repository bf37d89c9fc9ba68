#include "genhilbert/series.hpp"

#include <cfloat>
#include <cmath>

#include "genhilbert/errors.hpp"
#include "genhilbert/quadrature.hpp"

namespace genhilbert {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

namespace {

// int_X^inf (x+q)^{-s} dx
double hurwitz_integral(double s, double q, double X) {
    return std::exp((1.0 - s) * std::log(X + q)) / (s - 1.0);
}

constexpr double kRoundingGuard = 8.0 * DBL_EPSILON;

}  // namespace

Interval hurwitz_tail_bounds(double s, double q, std::size_t K) {
    const double k = static_cast<double>(K);
    if (!(s > 1.0) || !(k - 0.5 + q > 0.0)) {
        throw DomainError("hurwitz_tail_bounds requires s > 1 and K - 1/2 + q > 0");
    }
    const double lo = hurwitz_integral(s, q, k) + 0.5 * std::pow(k + q, -s);
    const double hi = hurwitz_integral(s, q, k - 0.5);
    return {lo, hi};
}

Interval hurwitz_zeta_interval_from(double s, double q, std::size_t start, double rel_tol,
                                    std::size_t max_terms) {
    if (!(s > 1.0) || !(static_cast<double>(start) + q > 0.0)) {
        throw DomainError("hurwitz_zeta_interval requires s > 1 and start + q > 0");
    }
    CompensatedSum partial;
    std::size_t k = start;
    std::size_t target = start + 64;
    for (;;) {
        for (; k < target; ++k) {
            partial.add(std::pow(static_cast<double>(k) + q, -s));
        }
        const Interval tail = hurwitz_tail_bounds(s, q, k);
        const double p = partial.value();
        Interval total{p + tail.lo, p + tail.hi};
        total.lo -= kRoundingGuard * std::fabs(total.lo);
        total.hi += kRoundingGuard * std::fabs(total.hi);
        if (total.width() <= rel_tol * total.lo) {
            return total;
        }
        if (k - start >= max_terms) {
            throw BudgetExhausted("hurwitz_zeta_interval: term budget exhausted", total.lo,
                                  total.hi);
        }
        // The convexity gap shrinks roughly like K^{-s-1}.
        const double ratio = tail.width() / (rel_tol * total.lo);
        double grow = std::pow(std::max(ratio, 1.0), 1.0 / (s + 1.0)) * 1.25;
        grow = std::min(std::max(grow, 2.0), 64.0);
        const double next = (static_cast<double>(k) + q) * grow - q;
        target = std::min<std::size_t>(start + max_terms, static_cast<std::size_t>(next) + 1);
        if (target <= k) {
            target = k + 1;
        }
    }
}

Interval hurwitz_zeta_interval(double s, double q, double rel_tol, std::size_t max_terms) {
    return hurwitz_zeta_interval_from(s, q, 0, rel_tol, max_terms);
}

TailIntegral power_tail_integral(const std::function<double(double)>& log_f, double X, double kappa,
                                 double rel_tol) {
    if (!(kappa > 1.0) || !(X > 0.0)) {
        throw DomainError("power_tail_integral requires kappa > 1 and X > 0");
    }
    const double e = 1.0 / (kappa - 1.0);
    const double log_x0 = std::log(X);
    constexpr double kLogXMax = 690.0;
    QuadOptions opts;
    opts.rel_tol = rel_tol;
    opts.max_depth = 24;

    if (e < 1.0) {
        // Fast decay: w^e would be non-smooth at w = 0. Use x = X e^u instead,
        // where the integrand falls off like e^{-(kappa-1) u}.
        auto h = [&](double u) { return std::exp(log_f(std::exp(log_x0 + u)) + log_x0 + u); };
        const double u_cut = std::min(std::max(kLogXMax - log_x0, 1.0), 700.0 / (kappa - 1.0));
        const QuadResult body = integrate(h, 0.0, u_cut, opts);
        // Power-law remainder past the cut.
        return {body.value + h(u_cut) / (kappa - 1.0), body.abs_error};
    }

    const double log_scale = log_x0 + std::log(e);
    // Beyond x = 1e300 the integrand in w is constant to within O(1/x).
    const double log_w_min = (log_x0 - kLogXMax) / e;
    const double w_min = log_w_min < -700.0 ? 0.0 : std::exp(log_w_min);

    auto log_g = [&](double w) {
        const double lw = std::log(w);
        const double x = std::exp(log_x0 - e * lw);
        return log_f(x) + log_scale - (e + 1.0) * lw;
    };
    auto g = [&](double w) { return std::exp(log_g(w)); };

    const QuadResult body = integrate(g, w_min, 1.0, opts);
    double value = body.value;
    if (w_min > 0.0) {
        value += w_min * g(w_min);
    }
    return {value, body.abs_error};
}

Interval monotone_tail_bounds(const std::function<double(double)>& log_f, std::size_t K,
                              double kappa, double rel_tol) {
    const double k = static_cast<double>(K);
    const TailIntegral ti = power_tail_integral(log_f, k, kappa, rel_tol);
    const double head = std::exp(log_f(k));
    double lo = ti.value - ti.abs_error;
    double hi = head + ti.value + ti.abs_error;
    lo -= kRoundingGuard * std::fabs(lo);
    hi += kRoundingGuard * std::fabs(hi);
    return {std::max(lo, 0.0), hi};
}

Interval convex_tail_bounds(const std::function<double(double)>& log_f, std::size_t K, double kappa,
                            double rel_tol) {
    const double k = static_cast<double>(K);
    const TailIntegral ti = power_tail_integral(log_f, k, kappa, rel_tol);
    QuadOptions opts;
    opts.rel_tol = rel_tol;
    const QuadResult half = integrate([&](double x) { return std::exp(log_f(x)); }, k - 0.5, k, opts);
    double lo = ti.value - ti.abs_error + 0.5 * std::exp(log_f(k));
    double hi = ti.value + ti.abs_error + half.value + half.abs_error;
    lo -= kRoundingGuard * std::fabs(lo);
    hi += kRoundingGuard * std::fabs(hi);
    return {std::max(lo, 0.0), hi};
}

bool looks_log_convex(const std::function<double(double)>& log_f, double x0) {
    for (double x = 1.25 * x0; x < 1e250; x *= 2.0) {
        const double h = 0.2 * x;
        const double d2 = log_f(x - h) - 2.0 * log_f(x) + log_f(x + h);
        const double scale = std::fabs(log_f(x)) + 1.0;
        // Ignore differences at rounding level.
        if (d2 < -1e-12 * scale) {
            return false;
        }
    }
    return true;
}

}  // namespace genhilbert
