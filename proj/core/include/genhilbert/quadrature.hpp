#pragma once

#include <functional>
#include <vector>

namespace genhilbert {

struct QuadResult {
    double value;
    double abs_error;
};

struct QuadOptions {
    double rel_tol = 1e-12;
    // Absolute error accepted regardless of the relative target.
    double abs_tol = 0.0;
    // Bisection depth of the adaptive Gauss-Kronrod recursion.
    unsigned max_depth = 20;
};

// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws ConvergenceError when the
// error estimate does not meet max(rel_tol * L1, abs_tol).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

// int_0^1 t^{c0-1} (1-t)^{c1-1} h(t) dt for c0, c1 > 0 and h bounded.
// The interval is split at 1/2; near 0 the substitution t = s^k / 2 and near 1
// the substitution 1 - t = s^k / 2 remove the endpoint singularities (k is
// chosen so the transformed weight is s^{kc-1} with kc - 1 >= 1). `breaks` are
// optional interior points of (0, 1) where h changes rapidly.
QuadResult integrate_beta_weighted(const std::function<double(double)>& h, double c0, double c1,
                                   const QuadOptions& opts = {},
                                   const std::vector<double>& breaks = {});

// int_delta^{1-delta} t^{c0-1} (1-t)^{c1-1} dt for any real c0, c1 and
// 0 < delta < 1/2, integrated in log t and log(1-t) on the two halves.
QuadResult integrate_truncated_power(double c0, double c1, double delta,
                                     const QuadOptions& opts = {});

}  // namespace genhilbert
