#include "genhilbert/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "genhilbert/errors.hpp"
#include "genhilbert/format.hpp"
#include "genhilbert/hilbert_operator.hpp"
#include "genhilbert/measure.hpp"
#include "genhilbert/quadrature.hpp"
#include "genhilbert/series.hpp"

namespace genhilbert {

namespace {

std::string params_text(const OperatorParams& p) {
    return "alpha=" + format_double(p.alpha()) + " beta=" + format_double(p.beta());
}

// Tracks the worst residual of a check.
class Worst {
public:
    explicit Worst(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

    void record(double residual, const std::string& input) {
        ++samples_;
        // NaN residuals count as failures.
        if (std::isnan(residual)) {
            residual = std::numeric_limits<double>::infinity();
        }
        if (samples_ == 1 || residual > worst_) {
            worst_ = residual;
            input_ = input;
        }
    }
    void add_samples(std::size_t k) { samples_ += k; }

    CheckResult result() const {
        return {name_, worst_ <= tol_, worst_, input_, samples_, tol_};
    }

private:
    std::string name_;
    double tol_;
    double worst_ = 0.0;
    std::string input_;
    std::size_t samples_ = 0;
};

// Certified partial sum of sum_k exp(log_term(k)) where the term ratio is at
// most ratio_bound(K) for all k >= K. Returns [lo, hi].
template <class LogTerm, class RatioBound>
Interval geometric_series(LogTerm log_term, RatioBound ratio_bound, std::size_t start_K,
                          std::size_t max_terms, const char* what) {
    CompensatedSum partial;
    std::size_t k = 0;
    std::size_t K = start_K;
    for (;;) {
        for (; k < K; ++k) {
            partial.add(std::exp(log_term(k)));
        }
        const double q = ratio_bound(K);
        if (q < 1.0) {
            const double tk = std::exp(log_term(K));
            const double tail_hi = tk / (1.0 - q);
            const double p = partial.value();
            if (tail_hi <= 1e-17 * p) {
                return {p + tk, p + tail_hi};
            }
        }
        if (K >= max_terms) {
            const double p = partial.value();
            throw BudgetExhausted(std::string(what) + ": truncation budget exhausted", p,
                                  std::numeric_limits<double>::infinity());
        }
        K = std::min(max_terms, 2 * K);
    }
}

double relative_residual(const Interval& sum, double closed) {
    return std::max(std::fabs(sum.lo - closed), std::fabs(sum.hi - closed)) / closed;
}

}  // namespace

CheckResult check_lemma21(const OperatorParams& params, std::size_t m_max, std::size_t n_max,
                          double tol) {
    Worst w("lemma21", tol);
    for (std::size_t m = 0; m <= m_max; ++m) {
        for (std::size_t n = 0; n <= n_max; ++n) {
            const double k = kernel(m, n, params);
            const KernelAltForms alt = kernel_alt_forms(m, n, params);
            const double r = std::max(std::fabs(alt.m_form - k), std::fabs(alt.n_form - k)) / k;
            w.record(r, params_text(params) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
        }
    }
    return w.result();
}

CheckResult check_lemma22_row(const OperatorParams& params, double t, std::size_t n, double tol,
                              std::size_t max_terms) {
    if (!(t > 0.0 && t < 1.0)) {
        throw DomainError("check_lemma22_row requires 0 < t < 1");
    }
    const double alpha = params.alpha();
    const double beta = params.beta();
    const double nd = static_cast<double>(n);
    const double log_t = std::log(t);
    auto log_term = [&](std::size_t m) {
        const double md = static_cast<double>(m);
        return log_kernel(m, n, params) + md * log_t + log_pochhammer_shifted(md, alpha);
    };
    // Term ratio t (m+n+beta+1)/(m+1), monotone in m.
    auto ratio = [&](std::size_t K) {
        const double k = static_cast<double>(K);
        return t * std::max(1.0, (k + nd + beta + 1.0) / (k + 1.0));
    };
    const std::size_t start = static_cast<std::size_t>(2.0 * (nd + beta + 1.0) * t / (1.0 - t)) + 32;
    const Interval sum = geometric_series(log_term, ratio, start, max_terms, "lemma22_row");
    const double closed =
        std::exp(-(nd + beta + 1.0) * std::log1p(-t) + log_pochhammer_shifted(nd + params.gap(), alpha));
    Worst w("lemma22_row", tol);
    w.record(relative_residual(sum, closed),
             params_text(params) + " t=" + format_double(t) + " n=" + std::to_string(n));
    return w.result();
}

CheckResult check_lemma22_col(const OperatorParams& params, double t, std::size_t m, double tol,
                              std::size_t max_terms) {
    if (!(t > 0.0 && t < 1.0)) {
        throw DomainError("check_lemma22_col requires 0 < t < 1");
    }
    const double alpha = params.alpha();
    const double beta = params.beta();
    const double gap = params.gap();
    const double md = static_cast<double>(m);
    const double log_s = std::log1p(-t);
    auto log_term = [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return log_kernel(m, n, params) + nd * log_s + log_pochhammer_shifted(nd, gap);
    };
    // Term ratio (1-t)(n+m+beta+1)/(n+1).
    auto ratio = [&](std::size_t K) {
        const double k = static_cast<double>(K);
        return (1.0 - t) * std::max(1.0, (k + md + beta + 1.0) / (k + 1.0));
    };
    const std::size_t start = static_cast<std::size_t>(2.0 * (md + beta + 1.0) * (1.0 - t) / t) + 32;
    const Interval sum = geometric_series(log_term, ratio, start, max_terms, "lemma22_col");
    // Statement form: no extra t^m factor.
    const double closed =
        std::exp(-(md + beta + 1.0) * std::log(t) + log_pochhammer_shifted(md + alpha, gap));
    Worst w("lemma22_col", tol);
    w.record(relative_residual(sum, closed),
             params_text(params) + " t=" + format_double(t) + " m=" + std::to_string(m));
    return w.result();
}

CheckResult check_lemma23(const std::vector<double>& x_grid, const std::vector<double>& t_grid,
                          double tol) {
    Worst w("lemma23", tol);
    for (double x : x_grid) {
        for (double t : t_grid) {
            if (!(x >= 0.0) || !(t >= 0.0 && t < 1.0)) {
                throw DomainError("check_lemma23 requires x >= 0 and 0 <= t < 1");
            }
            const double lhs = (1.0 - t) / (1.0 - t * std::exp(-x));
            const double rhs = std::exp(-t * x / (1.0 - t));
            w.record(std::max(0.0, rhs - lhs), "x=" + format_double(x) + " t=" + format_double(t));
        }
    }
    return w.result();
}

CheckResult check_lemma24(const std::vector<double>& y_grid, const std::vector<double>& z_grid,
                          double quad_tol) {
    Worst w("lemma24", quad_tol);
    QuadOptions opts;
    opts.rel_tol = 1e-11;
    for (double y : y_grid) {
        for (double z : z_grid) {
            if (!(y > 0.0) || !(z > 0.0)) {
                throw DomainError("check_lemma24 requires y, z > 0");
            }
            // Cut at u = yX well past the Gamma mode; the tail is
            // Gamma(z, u)/y^z <= u^{z-1} e^{-u} / (1 - (z-1)/u) / y^z (z > 1),
            // and <= u^{z-1} e^{-u} / y^z for z <= 1.
            const double u = 60.0 + 2.0 * z;
            const double X = u / y;
            const QuadResult body = integrate_beta_weighted(
                [&](double t) { return std::exp(-u * t); }, z, 1.0, opts,
                {0.1 / u, 1.0 / u, 10.0 / u});
            const double integral = std::pow(X, z) * body.value;
            double tail = std::exp((z - 1.0) * std::log(u) - u - z * std::log(y));
            if (z > 1.0) {
                tail /= 1.0 - (z - 1.0) / u;
            }
            const double gamma_z = std::exp(log_gamma(z));
            const double expected = std::pow(y, -z);
            const double err = std::fabs(integral / gamma_z - expected) +
                               (tail + std::pow(X, z) * body.abs_error) / gamma_z;
            w.record(err / expected, "y=" + format_double(y) + " z=" + format_double(z));
        }
    }
    return w.result();
}

CheckResult check_lemma25(std::size_t n_max, const std::vector<double>& s_grid, double tol) {
    Worst w("lemma25", tol);
    for (double s : s_grid) {
        if (!(s > -1.0)) {
            throw DomainError("check_lemma25 requires s > -1");
        }
        for (std::size_t n = 0; n <= n_max; ++n) {
            const double x = static_cast<double>(n);
            const double lhs = log_pochhammer_shifted(x, s);
            const double rhs = s >= 0.0 ? s * std::log(x + s + 1.0)
                                        : (s + 1.0) * std::log(x + 1.0) - std::log(x + s + 1.0);
            // Relative excess of the left side over the bound.
            w.record(std::max(0.0, std::expm1(lhs - rhs)),
                     "s=" + format_double(s) + " n=" + std::to_string(n));
        }
    }
    return w.result();
}

Lemma26Result check_lemma26(double beta, double p, double rho, std::size_t N) {
    if (!(rho > 0.0 && rho < 1.0) || N < 1 || !(beta > -1.0) || !(p >= 1.0)) {
        throw DomainError("check_lemma26 requires 0 < rho < 1, N >= 1, beta > -1, p >= 1");
    }
    const std::string where = "beta=" + format_double(beta) + " p=" + format_double(p) +
                              " rho=" + format_double(rho) + " N=" + std::to_string(N);
    const double limit = (beta + 1.0) / p;
    constexpr double kRelTol = 1e-10;

    // Normalized shortfall ((1-rho) S_hi - T_lo) / S_hi; <= 0 means success.
    auto shortfall = [&](double eps) {
        const double s = 1.0 + p * eps;
        const Interval total = hurwitz_zeta_interval(s, beta + 1.0, kRelTol);
        const Interval tail = hurwitz_zeta_interval(s, static_cast<double>(N) + beta + 2.0, kRelTol);
        return ((1.0 - rho) * total.hi - tail.lo) / total.hi;
    };

    int found_k = -1;
    double last = 0.0;
    std::size_t tested = 0;
    for (int k = 1; k <= 40; ++k) {
        const double eps = std::ldexp(1.0, -k);
        if (!(eps < limit)) {
            continue;
        }
        ++tested;
        last = shortfall(eps);
        if (last <= 0.0) {
            found_k = k;
            break;
        }
    }
    if (found_k < 0) {
        throw BudgetExhausted("check_lemma26: no epsilon = 2^-k (k <= 40) satisfies the tail-mass bound (" +
                                  where + ")",
                              last, last);
    }
    Worst w("lemma26", 0.0);
    w.add_samples(tested - 1);
    for (int k = found_k; k <= 40; ++k) {
        const double eps = std::ldexp(1.0, -k);
        w.record(std::max(0.0, shortfall(eps)), where + " eps=2^-" + std::to_string(k));
    }
    return {std::ldexp(1.0, -found_k), w.result()};
}

CheckResult check_classical_hilbert(const std::vector<double>& p_grid, std::size_t N,
                                    std::size_t M_truncation, double tol) {
    Worst w("classical_hilbert", tol);
    const Measure leb = Measure::lebesgue();
    const OperatorParams hilbert(0.0, 0.0);
    for (double p : p_grid) {
        if (!(p > 1.0)) {
            throw DomainError("check_classical_hilbert requires p > 1");
        }
        const double expected = std::numbers::pi / std::sin(std::numbers::pi / p);
        const IntegralResult c = c_constant(leb, 0.0, p);
        const double closed = c.is_finite() ? c.value() : std::numeric_limits<double>::infinity();
        w.record(std::fabs(closed - expected) / expected, "closed form p=" + format_double(p));

        RayleighOptions opts;
        opts.rows = M_truncation;
        const double eps = std::min(0.1, 0.5 / p);
        const RayleighResult r = rayleigh_ratio(hilbert, leb, Exponent::finite(p),
                                                make_extremal_lp(hilbert, p, eps), opts);
        w.record(std::max(0.0, r.ratio / expected - 1.0),
                 "rayleigh bound p=" + format_double(p) + " eps=" + format_double(eps));
        if (p == 2.0) {
            const double s = two_norm_section(hilbert, leb, N);
            w.record(std::max(0.0, s / expected - 1.0), "section bound N=" + std::to_string(N));
        }
    }
    return w.result();
}

VerifyConfig default_verify_config() {
    VerifyConfig c;
    c.lemma21_params = {OperatorParams(0.0, 0.0), OperatorParams(0.0, 1.0), OperatorParams(0.5, 1.0),
                        OperatorParams(-0.3, 0.2)};
    c.lemma22_params = c.lemma21_params;
    for (int i = 1; i <= 19; ++i) {
        c.lemma22_t.push_back(0.05 * i);
    }
    c.lemma22_indices = {0, 1, 5, 20};
    for (int i = 0; i <= 100; ++i) {
        c.lemma23_x.push_back(0.5 * i);
    }
    for (int i = 0; i <= 99; ++i) {
        c.lemma23_t.push_back(0.01 * i);
    }
    c.lemma24_y = {0.5, 1.0, 2.0, 2.5};
    c.lemma24_z = {0.5, 1.0, 2.0, 2.5};
    c.lemma25_s = {-0.9, -0.5, 0.5, 2.0, 3.7};
    c.lemma26_rho = {0.1, 0.25, 0.4};
    c.lemma26_N = {5, 20, 100};
    c.hilbert_p = {1.25, 1.5, 2.0, 3.0, 4.0};
    return c;
}

const std::vector<std::string>& verification_check_names() {
    static const std::vector<std::string> names = {"lemma21", "lemma22_row", "lemma22_col", "lemma23",
                                                   "lemma24", "lemma25",     "lemma26",     "classical_hilbert"};
    return names;
}

namespace {

// Folds several results of one check into a single row.
CheckResult merge(const std::string& name, const std::vector<CheckResult>& parts, double tol) {
    CheckResult out{name, true, 0.0, "", 0, tol};
    bool first = true;
    for (const CheckResult& r : parts) {
        out.samples += r.samples;
        if (first || r.worst_residual > out.worst_residual || std::isnan(r.worst_residual)) {
            out.worst_residual = r.worst_residual;
            out.worst_input = r.worst_input;
            first = false;
        }
    }
    out.passed = out.worst_residual <= tol;
    return out;
}

CheckResult failure_row(const std::string& name, const std::string& what, double tol) {
    return {name, false, std::numeric_limits<double>::infinity(), what, 0, tol};
}

CheckResult run_one(const std::string& name, const VerifyConfig& c) {
    const auto tol_or = [&](double d) { return c.tol_override.value_or(d); };
    if (name == "lemma21") {
        std::vector<CheckResult> parts;
        for (const OperatorParams& p : c.lemma21_params) {
            parts.push_back(check_lemma21(p, c.lemma21_max, c.lemma21_max, tol_or(1e-11)));
        }
        return merge(name, parts, tol_or(1e-11));
    }
    if (name == "lemma22_row" || name == "lemma22_col") {
        const bool row = name == "lemma22_row";
        std::vector<CheckResult> parts;
        for (const OperatorParams& p : c.lemma22_params) {
            for (double t : c.lemma22_t) {
                for (std::size_t i : c.lemma22_indices) {
                    try {
                        parts.push_back(row ? check_lemma22_row(p, t, i, tol_or(c.lemma22_tol), c.lemma22_budget)
                                            : check_lemma22_col(p, t, i, tol_or(c.lemma22_tol), c.lemma22_budget));
                    } catch (const BudgetExhausted& e) {
                        parts.push_back(failure_row(name, e.what(), tol_or(c.lemma22_tol)));
                    }
                }
            }
        }
        return merge(name, parts, tol_or(c.lemma22_tol));
    }
    if (name == "lemma23") {
        return check_lemma23(c.lemma23_x, c.lemma23_t, tol_or(1e-14));
    }
    if (name == "lemma24") {
        return check_lemma24(c.lemma24_y, c.lemma24_z, tol_or(c.lemma24_tol));
    }
    if (name == "lemma25") {
        return check_lemma25(c.lemma25_n_max, c.lemma25_s, tol_or(1e-12));
    }
    if (name == "lemma26") {
        std::vector<CheckResult> parts;
        for (double rho : c.lemma26_rho) {
            for (std::size_t N : c.lemma26_N) {
                try {
                    parts.push_back(check_lemma26(c.lemma26_beta, c.lemma26_p, rho, N).check);
                } catch (const BudgetExhausted& e) {
                    parts.push_back(failure_row(name, e.what(), 0.0));
                }
            }
        }
        return merge(name, parts, tol_or(0.0));
    }
    if (name == "classical_hilbert") {
        return check_classical_hilbert(c.hilbert_p, c.hilbert_N, c.hilbert_M, tol_or(1e-10));
    }
    throw DomainError("unknown verification check '" + name + "'");
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyConfig& config,
                                          const std::vector<std::string>& only) {
    const auto& names = verification_check_names();
    for (const std::string& n : only) {
        if (std::find(names.begin(), names.end(), n) == names.end()) {
            throw DomainError("unknown verification check '" + n + "'");
        }
    }
    std::vector<CheckResult> out;
    for (const std::string& n : names) {
        if (only.empty() || std::find(only.begin(), only.end(), n) != only.end()) {
            out.push_back(run_one(n, config));
        }
    }
    return out;
}

}  // namespace genhilbert
