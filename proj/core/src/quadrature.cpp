#include "genhilbert/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

unsigned substitution_power(double c) {
    // Smallest k with k*c - 1 >= 1.
    return static_cast<unsigned>(std::max(1.0, std::ceil(2.0 / c)));
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts) {
    if (a == b) {
        return {0.0, 0.0};
    }
    double error = 0.0;
    double l1 = 0.0;
    const double value = GK::integrate(f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
    if (!std::isfinite(value)) {
        throw ConvergenceError("quadrature produced a non-finite value", value, error);
    }
    const double target = std::max(opts.rel_tol * l1, opts.abs_tol);
    // The Kronrod estimate is pessimistic by design; allow a small factor.
    if (error > 10.0 * target && error > 1e-300) {
        std::ostringstream os;
        os.precision(6);
        os << "adaptive quadrature budget exhausted on [" << a << ", " << b << "]: error estimate "
           << error << " exceeds target " << target;
        throw ConvergenceError(os.str(), value, error);
    }
    return {value, error};
}

QuadResult integrate_beta_weighted(const std::function<double(double)>& h, double c0, double c1,
                                   const QuadOptions& opts, const std::vector<double>& breaks) {
    if (!(c0 > 0.0) || !(c1 > 0.0)) {
        throw DomainError("integrate_beta_weighted requires positive endpoint exponents");
    }
    const unsigned k0 = substitution_power(c0);
    const unsigned k1 = substitution_power(c1);

    // Left half: t = s^{k0}/2,  dt = (k0/2) s^{k0-1} ds.
    const double left_scale = 0.5 * k0 * std::pow(0.5, c0 - 1.0);
    auto left = [&](double s) {
        const double t = 0.5 * std::pow(s, k0);
        const double w = std::pow(s, k0 * c0 - 1.0);
        return left_scale * w * std::pow(1.0 - t, c1 - 1.0) * h(t);
    };
    // Right half: 1 - t = s^{k1}/2.
    const double right_scale = 0.5 * k1 * std::pow(0.5, c1 - 1.0);
    auto right = [&](double s) {
        const double u = 0.5 * std::pow(s, k1);
        const double t = 1.0 - u;
        const double w = std::pow(s, k1 * c1 - 1.0);
        return right_scale * w * std::pow(t, c0 - 1.0) * h(t);
    };

    std::vector<double> left_pts{0.0, 1.0};
    std::vector<double> right_pts{0.0, 1.0};
    for (double b : breaks) {
        if (b > 0.0 && b < 0.5) {
            left_pts.push_back(std::pow(2.0 * b, 1.0 / k0));
        } else if (b > 0.5 && b < 1.0) {
            right_pts.push_back(std::pow(2.0 * (1.0 - b), 1.0 / k1));
        }
    }
    std::sort(left_pts.begin(), left_pts.end());
    std::sort(right_pts.begin(), right_pts.end());

    // Pieces are judged against the whole integral, not one by one: a
    // negligible piece need not meet its own relative target.
    QuadResult total{0.0, 0.0};
    double l1 = 0.0;
    bool piece_failed = false;
    auto accumulate = [&](const std::function<double(double)>& g, const std::vector<double>& pts) {
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1] <= pts[i]) {
                continue;
            }
            QuadResult r{0.0, 0.0};
            try {
                r = integrate(g, pts[i], pts[i + 1], opts);
            } catch (const ConvergenceError& e) {
                if (!std::isfinite(e.estimate())) {
                    throw;
                }
                r = {e.estimate(), e.error_estimate()};
                piece_failed = true;
            }
            total.value += r.value;
            total.abs_error += r.abs_error;
            l1 += std::fabs(r.value);
        }
    };
    accumulate(left, left_pts);
    accumulate(right, right_pts);
    const double target = std::max(opts.rel_tol * l1, opts.abs_tol);
    if (piece_failed && total.abs_error > 10.0 * target) {
        std::ostringstream os;
        os.precision(6);
        os << "beta-weighted quadrature did not converge: error estimate " << total.abs_error
           << " exceeds target " << target;
        throw ConvergenceError(os.str(), total.value, total.abs_error);
    }
    return total;
}

QuadResult integrate_truncated_power(double c0, double c1, double delta, const QuadOptions& opts) {
    if (!(delta > 0.0) || !(delta < 0.5)) {
        throw DomainError("integrate_truncated_power requires 0 < delta < 1/2");
    }
    // t = e^x on [delta, 1/2]: integrand e^{c0 x} (1 - e^x)^{c1-1}.
    auto left = [&](double x) {
        return std::exp(c0 * x) * std::pow(-std::expm1(x), c1 - 1.0);
    };
    // 1 - t = e^y on [1/2, 1 - delta].
    auto right = [&](double y) {
        return std::exp(c1 * y) * std::pow(-std::expm1(y), c0 - 1.0);
    };
    const double lo = std::log(delta);
    const double mid = std::log(0.5);
    const QuadResult a = integrate(left, lo, mid, opts);
    const QuadResult b = integrate(right, lo, mid, opts);
    return {a.value + b.value, a.abs_error + b.abs_error};
}

}  // namespace genhilbert
