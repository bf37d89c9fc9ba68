#include "genhilbert/hilbert_operator.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "genhilbert/errors.hpp"
#include "genhilbert/quadrature.hpp"
#include "row_evaluator.hpp"

namespace genhilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogMax = std::log(DBL_MAX);

double pow_p(double x, double p) {
    if (p == 1.0) {
        return x;
    }
    return p == 2.0 ? x * x : std::pow(x, p);
}

double root_p(double x, double p) {
    if (p == 1.0) {
        return x;
    }
    return p == 2.0 ? std::sqrt(x) : std::pow(x, 1.0 / p);
}

}  // namespace

SectionMatrix::SectionMatrix(OperatorParams params, Measure measure, std::size_t rows,
                             std::size_t cols, std::vector<double> entries)
    : params_(params), measure_(std::move(measure)), rows_(rows), cols_(cols),
      entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("SectionMatrix: entry count does not match the shape");
    }
}

std::vector<double> SectionMatrix::multiply(const std::vector<double>& x) const {
    if (x.size() != cols_) {
        throw std::invalid_argument("SectionMatrix::multiply: length mismatch");
    }
    std::vector<double> y(rows_);
    for (std::size_t n = 0; n < rows_; ++n) {
        const double* row = entries_.data() + n * cols_;
        CompensatedSum acc;
        for (std::size_t m = 0; m < cols_; ++m) {
            acc.add(row[m] * x[m]);
        }
        y[n] = acc.value();
    }
    return y;
}

SectionMatrix build_section(const OperatorParams& params, const Measure& mu, std::size_t N,
                            std::size_t M) {
    if (N == 0 || M == 0) {
        throw DomainError("build_section requires N, M >= 1");
    }
    const double alpha = params.alpha();
    const double gap = params.gap();
    std::vector<double> entries(N * M);
    for (std::size_t n = 0; n < N; ++n) {
        const double nd = static_cast<double>(n);
        const double log_gn = log_gamma(nd + gap + 1.0);
        for (std::size_t m = 0; m < M; ++m) {
            const double md = static_cast<double>(m);
            const double lk = log_gamma_ratio(md + alpha + 1.0, nd + gap) - log_gn;
            double value = 0.0;
            auto add = [&](double log_entry) {
                if (log_entry > kLogMax) {
                    std::ostringstream os;
                    os << "section entry (n=" << n << ", m=" << m
                       << ") overflows double precision (log value " << log_entry << ")";
                    throw OverflowError(os.str());
                }
                value += std::exp(log_entry);
            };
            for (const Atom& a : mu.atoms()) {
                add(lk + std::log(a.mass) + md * std::log(a.t) + nd * std::log1p(-a.t));
            }
            for (const BetaComponent& d : mu.densities()) {
                add(lk + std::log(d.coef) + log_beta(md + d.a, nd + d.b));
            }
            if (!std::isfinite(value)) {
                std::ostringstream os;
                os << "section entry (n=" << n << ", m=" << m << ") overflows double precision";
                throw OverflowError(os.str());
            }
            entries[n * M + m] = value;
        }
    }
    return SectionMatrix(params, mu, N, M, std::move(entries));
}

std::vector<double> apply(const OperatorParams& params, const Measure& mu,
                          const std::vector<double>& a, std::size_t n_max) {
    if (a.empty()) {
        throw DomainError("apply requires a nonempty input vector");
    }
    return build_section(params, mu, n_max + 1, a.size()).multiply(a);
}

std::vector<Interval> apply_tail_bounded(const OperatorParams& params, const Measure& mu,
                                         const Generator& gen, std::size_t n_max,
                                         const TailOptions& opts) {
    detail::RowEvaluator rows(params, mu, gen, opts.tol, opts.max_terms);
    std::vector<Interval> out;
    out.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        out.push_back(rows.row(n));
    }
    return out;
}

namespace {

struct PowerRun {
    double lambda;
    double upper;
    bool converged;
};

// Power iteration on B^T B (B is N x N, row-major).
PowerRun power_iteration(const std::vector<double>& B, std::size_t N, std::vector<double> v,
                         const PowerIterationOptions& opts) {
    auto normalize = [](std::vector<double>& x) {
        double s = 0.0;
        for (double e : x) {
            s += e * e;
        }
        const double inv = 1.0 / std::sqrt(s);
        for (double& e : x) {
            e *= inv;
        }
    };
    normalize(v);
    std::vector<double> u(N), z(N);
    double prev = 0.0;
    double upper = kInf;
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        for (std::size_t i = 0; i < N; ++i) {
            const double* row = B.data() + i * N;
            double s = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                s += row[j] * v[j];
            }
            u[i] = s;
        }
        std::fill(z.begin(), z.end(), 0.0);
        double lambda = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double* row = B.data() + i * N;
            lambda += u[i] * u[i];
            for (std::size_t j = 0; j < N; ++j) {
                z[j] += row[j] * u[i];
            }
        }
        // Collatz-Wielandt: for a positive iterate, max z_i / v_i bounds the top eigenvalue.
        bool positive = true;
        double cw = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            positive = positive && v[j] > 0.0;
            if (v[j] > 0.0) {
                cw = std::max(cw, z[j] / v[j]);
            }
        }
        if (positive) {
            upper = std::min(upper, cw);
        }
        if (it > 0 && std::fabs(lambda - prev) < opts.rel_tol * lambda) {
            return {lambda, upper, true};
        }
        prev = lambda;
        v = z;
        normalize(v);
    }
    return {prev, upper, false};
}

}  // namespace

double two_norm_section(const OperatorParams& params, const Measure& mu, std::size_t N,
                        const PowerIterationOptions& opts) {
    const SectionMatrix S = build_section(params, mu, N, N);
    const W1 w1{params, 2.0};
    const W2 w2{params, 2.0};
    std::vector<double> row_scale(N), col_scale(N);
    for (std::size_t i = 0; i < N; ++i) {
        row_scale[i] = std::exp(0.5 * log_weight(w2, static_cast<double>(i)));
        col_scale[i] = std::exp(-0.5 * log_weight(w1, static_cast<double>(i)));
    }
    std::vector<double> B(N * N);
    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t m = 0; m < N; ++m) {
            B[n * N + m] = row_scale[n] * S(n, m) * col_scale[m];
        }
    }
    std::vector<double> ones(N, 1.0);
    std::vector<double> alternating(N);
    for (std::size_t i = 0; i < N; ++i) {
        alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    const PowerRun a = power_iteration(B, N, ones, opts);
    if (!a.converged) {
        throw BudgetExhausted("two_norm_section: power iteration did not converge",
                              std::sqrt(a.lambda), std::sqrt(a.upper));
    }
    double best = a.lambda;
    if (N > 1) {
        const PowerRun b = power_iteration(B, N, alternating, opts);
        if (!b.converged) {
            throw BudgetExhausted("two_norm_section: power iteration did not converge",
                                  std::sqrt(std::max(a.lambda, b.lambda)), std::sqrt(a.upper));
        }
        best = std::max(best, b.lambda);
    }
    return std::sqrt(best);
}

namespace {

std::size_t rows_for_geometric_atoms(const OperatorParams& params, const Measure& mu, double p,
                                     std::size_t L, std::size_t N) {
    const double beta = params.beta();
    for (;;) {
        const double nd = static_cast<double>(N);
        bool ok = true;
        for (const Atom& a : mu.atoms()) {
            const double q = std::max(1.0, (nd + beta + 1.0) / (nd + 1.0)) *
                             pow_p((1.0 - a.t) * (1.0 + static_cast<double>(L) / (nd + beta + 1.0)), p);
            ok = ok && q < 0.95;
        }
        if (ok) {
            return N;
        }
        if (N > 1'000'000) {
            throw BudgetExhausted("FiniteInputNorm: atom tails never become geometric", 0.0, kInf);
        }
        N *= 2;
    }
}

// ln of w2(x) * (entry of column m from density d)^p, continued to real x.
std::function<double(double)> density_column_term(const OperatorParams& params, const W2& w2,
                                                  const BetaComponent& d, double p, std::size_t m) {
    const double md = static_cast<double>(m);
    const double beta = params.beta();
    const double gap = params.gap();
    const double log_e_m = std::log(d.coef) + log_gamma_ratio(md + params.alpha() + 1.0, d.a - params.alpha() - 1.0);
    return [=](double x) {
        return log_weight(w2, x) + p * (log_e_m + log_gamma_ratio(x + gap + 1.0, d.b - gap - 1.0) -
                                        log_gamma_ratio(md + x + beta + 1.0, d.a + d.b - beta - 1.0));
    };
}

// The polynomial column tails are only bracketed to O(N^-2) relative width, and
// at p = 1 the bound is attained, so rows grow until each bracket is narrow
// next to the whole column.
std::size_t rows_for_density_tails(const OperatorParams& params, const Measure& mu, double p,
                                   std::size_t L, std::size_t N) {
    constexpr double kWidth = 1e-12;
    constexpr std::size_t kMaxRows = std::size_t{1} << 15;
    const W2 w2{params, p};
    for (const BetaComponent& d : mu.densities()) {
        const double kappa = p * d.a - params.beta();
        if (!(kappa > 1.0)) {
            continue;
        }
        for (std::size_t m : {std::size_t{0}, L - 1}) {
            const auto log_u = density_column_term(params, w2, d, p, m);
            double head = 0.0;
            for (int n = 0; n < 32; ++n) {
                head += std::exp(log_u(n));
            }
            while (N < kMaxRows) {
                if (looks_log_convex(log_u, static_cast<double>(N) - 0.5)) {
                    const Interval t = convex_tail_bounds(log_u, N, kappa);
                    if (t.width() <= kWidth * (head + t.lo)) {
                        break;
                    }
                }
                N *= 2;
            }
        }
    }
    return N;
}

std::size_t finite_input_rows(const OperatorParams& params, const Measure& mu, double p, std::size_t L,
                              std::size_t N) {
    Exponent::finite(p);
    if (L == 0) {
        throw DomainError("FiniteInputNorm: input length must be positive");
    }
    N = rows_for_geometric_atoms(params, mu, p, L, std::max(N, 4 * L + 64));
    return rows_for_density_tails(params, mu, p, L, N);
}

}  // namespace

FiniteInputNorm::FiniteInputNorm(const OperatorParams& params, const Measure& mu, double p,
                                 std::size_t L, std::size_t N)
    : p_(p),
      section_(build_section(params, mu, finite_input_rows(params, mu, p, L, N), L)),
      w2_(section_.rows()),
      tau_(L, 0.0) {
    const W2 w2{params, p};
    const std::size_t rows = section_.rows();
    for (std::size_t n = 0; n < rows; ++n) {
        w2_[n] = weight_value(w2, n);
    }
    const double beta = params.beta();
    const double nd = static_cast<double>(rows);
    const double log_w2_N = log_weight(w2, nd);
    for (std::size_t m = 0; m < L; ++m) {
        const double md = static_cast<double>(m);
        double tau = 0.0;
        for (const Atom& a : mu.atoms()) {
            const double log_u = log_w2_N + p * (std::log(a.mass) + log_kernel_real(md, nd, params) +
                                                 md * std::log(a.t) + nd * std::log1p(-a.t));
            const double q = std::max(1.0, (nd + beta + 1.0) / (nd + 1.0)) *
                             pow_p((1.0 - a.t) * (1.0 + md / (nd + beta + 1.0)), p);
            tau += root_p(std::exp(log_u) / (1.0 - q), p);
        }
        for (const BetaComponent& d : mu.densities()) {
            const double kappa = p * d.a - beta;
            if (!(kappa > 1.0)) {
                tau = kInf;
                continue;
            }
            const auto log_u = density_column_term(params, w2, d, p, m);
            if (!looks_log_convex(log_u, nd - 0.5)) {
                throw BudgetExhausted("FiniteInputNorm: column tail not yet convex, increase rows", 0.0, kInf);
            }
            tau += root_p(convex_tail_bounds(log_u, rows, kappa).hi, p);
        }
        tau_[m] = tau;
    }
}

Interval FiniteInputNorm::norm_power(const std::vector<double>& a) const {
    if (a.size() > section_.cols()) {
        throw DomainError("FiniteInputNorm: input longer than the configured length");
    }
    std::vector<double> x(section_.cols(), 0.0);
    std::copy(a.begin(), a.end(), x.begin());
    const std::vector<double> y = section_.multiply(x);
    CompensatedSum head;
    for (std::size_t n = 0; n < y.size(); ++n) {
        head.add(w2_[n] * pow_p(std::fabs(y[n]), p_));
    }
    double col = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        if (x[m] != 0.0) {
            col += std::fabs(x[m]) * tau_[m];
        }
    }
    const double h = head.value();
    const double guard = 8.0 * DBL_EPSILON;
    return {h * (1.0 - guard), (h + pow_p(col, p_)) * (1.0 + guard)};
}

Interval FiniteInputNorm::norm(const std::vector<double>& a) const {
    const Interval np = norm_power(a);
    return {root_p(np.lo, p_), root_p(np.hi, p_)};
}

double extremal_output_tail_lower(const OperatorParams& params, const Measure& mu, double p,
                                  double epsilon, std::size_t M) {
    check_extremal_epsilon(params.beta(), p, epsilon);
    const double beta = params.beta();
    const double b = (beta + 1.0) / p + epsilon;
    const double md = static_cast<double>(M);
    // Row minorant: (n+beta+1)^{-1/p-eps} R_n int (1-t)^{b-beta-1} h_n(t) dmu, with
    // R_n and h_n nondecreasing in n, so the n = M values bound every later row.
    auto h = [&](double t) {
        const double num = beta >= 0.0 ? beta + 1.0 + md * t : 1.0 + (md + beta) * t;
        return std::pow(num / (md + beta + 1.0), -b);
    };
    const double log_r =
        beta >= 0.0 ? (log_pochhammer_shifted(md, beta) - beta * std::log(md + beta + 1.0)) / p : 0.0;

    double phi = 0.0;
    for (const Atom& a : mu.atoms()) {
        phi += a.mass * std::pow(1.0 - a.t, b - beta - 1.0) * h(a.t);
    }
    const double knee = (beta + 1.0) / std::max(md, 1.0);
    std::vector<double> breaks;
    for (double f : {0.1, 1.0, 10.0}) {
        if (f * knee < 0.5) {
            breaks.push_back(f * knee);
        }
    }
    QuadOptions opts;
    opts.rel_tol = 1e-10;
    for (const BetaComponent& d : mu.densities()) {
        const double c1 = d.b + b - beta - 1.0;
        if (!(c1 > 0.0)) {
            return kInf;
        }
        const QuadResult r = integrate_beta_weighted(h, d.a, c1, opts, breaks);
        phi += d.coef * std::max(0.0, r.value - r.abs_error);
    }
    const double zeta_lo = hurwitz_zeta_interval(1.0 + p * epsilon, md + beta + 1.0, 1e-10).lo;
    return std::exp(log_r * p) * pow_p(phi, p) * zeta_lo;
}

namespace {

RayleighResult make_ratio(double num, double den, double p_value, bool infinite_p, std::size_t rows) {
    if (!(den > DBL_MIN)) {
        throw DomainError("rayleigh_ratio: input norm underflows (division guard)");
    }
    double ratio = num / den;
    if (!infinite_p) {
        ratio = root_p(ratio, p_value);
    }
    return {ratio, num, den, rows};
}

}  // namespace

RayleighResult rayleigh_ratio(const OperatorParams& params, const Measure& mu, Exponent p,
                              const std::vector<double>& a, const RayleighOptions& opts) {
    if (a.empty()) {
        throw DomainError("rayleigh_ratio requires a nonempty input");
    }
    const std::size_t rows = std::max<std::size_t>(opts.rows, 1);
    const std::vector<double> y = apply(params, mu, a, rows - 1);
    if (p.is_infinite()) {
        double num = 0.0;
        for (std::size_t n = 0; n < rows; ++n) {
            num = std::max(num, weight_value(W2Bar{params}, n) * std::fabs(y[n]));
        }
        const double den = p_norm({a, W1Bar{params}, p});
        return make_ratio(num, den, 0.0, true, rows);
    }
    const double pv = p.value();
    const W2 w2{params, pv};
    CompensatedSum num;
    for (std::size_t n = 0; n < rows; ++n) {
        num.add(weight_value(w2, n) * pow_p(std::fabs(y[n]), pv));
    }
    const double den = pow_p(p_norm({a, W1{params, pv}, p}), pv) * (1.0 + 8.0 * DBL_EPSILON);
    return make_ratio(num.value(), den, pv, false, rows);
}

namespace {

// Per-row contributions w(n) lo_n^p (finite p) for n < rows.
std::vector<double> weighted_row_terms(const OperatorParams& params, const Measure& mu,
                                       const Generator& gen, double p, std::size_t rows,
                                       const TailOptions& tail) {
    detail::RowEvaluator ev(params, mu, gen, tail.tol, tail.max_terms);
    std::vector<double> terms(rows);
    if (ev.rows_diverge()) {
        std::fill(terms.begin(), terms.end(), kInf);
        return terms;
    }
    const W2 w2{params, p};
    for (std::size_t n = 0; n < rows; ++n) {
        const Interval r = ev.row(n);
        terms[n] = std::exp(log_weight(w2, static_cast<double>(n)) + p * std::log(r.lo));
    }
    return terms;
}

}  // namespace

RayleighResult rayleigh_ratio(const OperatorParams& params, const Measure& mu, Exponent p,
                              const Generator& gen, const RayleighOptions& opts) {
    if (!(generator_params(gen) == params)) {
        throw DomainError("generator parameters differ from operator parameters");
    }
    const std::size_t rows = std::max<std::size_t>(opts.rows, 1);
    if (const auto* lp = std::get_if<ExtremalLp>(&gen)) {
        if (p.is_infinite() || p.value() != lp->p) {
            throw DomainError("extremal_lp generator exponent differs from the norm exponent");
        }
        const double pv = p.value();
        const std::vector<double> terms = weighted_row_terms(params, mu, gen, pv, rows, opts.tail);
        CompensatedSum num;
        for (double t : terms) {
            num.add(t);
        }
        double numerator = num.value();
        if (opts.output_tail_bound && std::isfinite(numerator)) {
            numerator += extremal_output_tail_lower(params, mu, pv, lp->epsilon, rows);
        }
        const double den = extremal_lp_norm_power(params, pv, lp->epsilon).hi;
        return make_ratio(numerator, den, pv, false, rows);
    }
    if (!p.is_infinite()) {
        throw DomainError("extremal_inf has infinite l^p_{w1} norm for finite p");
    }
    detail::RowEvaluator ev(params, mu, gen, opts.tail.tol, opts.tail.max_terms);
    double num = 0.0;
    for (std::size_t n = 0; n < rows; ++n) {
        const Interval r = ev.row(n);
        num = std::max(num, weight_value(W2Bar{params}, n) * r.lo);
    }
    // sup_m w1bar(m) (m+1)_alpha = 1.
    return make_ratio(num, 1.0, 0.0, true, rows);
}

std::vector<LowerBound> lower_bound_sweep(const OperatorParams& params, const Measure& mu, double p,
                                          const std::vector<double>& epsilons,
                                          const std::vector<std::size_t>& truncations,
                                          const RayleighOptions& opts) {
    if (epsilons.empty() || truncations.empty()) {
        throw DomainError("lower_bound_sweep requires nonempty schedules");
    }
    for (double e : epsilons) {
        check_extremal_epsilon(params.beta(), p, e);
    }
    std::vector<double> eps = epsilons;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    std::vector<std::size_t> ms = truncations;
    std::sort(ms.begin(), ms.end());
    if (ms.front() == 0) {
        throw DomainError("lower_bound_sweep truncations must be >= 1");
    }

    std::vector<LowerBound> out;
    for (double e : eps) {
        const Generator gen = make_extremal_lp(params, p, e);
        const std::vector<double> terms = weighted_row_terms(params, mu, gen, p, ms.back(), opts.tail);
        const double den = extremal_lp_norm_power(params, p, e).hi;
        CompensatedSum prefix;
        std::size_t done = 0;
        for (std::size_t M : ms) {
            for (; done < M; ++done) {
                prefix.add(terms[done]);
            }
            double numerator = prefix.value();
            if (opts.output_tail_bound && std::isfinite(numerator)) {
                numerator += extremal_output_tail_lower(params, mu, p, e, M);
            }
            out.push_back({e, M, make_ratio(numerator, den, p, false, M).ratio});
        }
    }
    return out;
}

InfNormCheck inf_norm_check(const OperatorParams& params, const Measure& mu, std::size_t n_cap,
                            double tol) {
    const IntegralResult constant = c_constant_inf(mu, params.beta());
    if (!constant.is_finite()) {
        throw DomainError("inf_norm_check requires a finite C_mu(beta, inf)");
    }
    std::vector<Interval> rows =
        apply_tail_bounded(params, mu, make_extremal_inf(params), n_cap, {tol, 1'000'000});
    Interval sup{0.0, 0.0};
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const double w = weight_value(W2Bar{params}, n);
        rows[n] = w * rows[n];
        sup.lo = std::max(sup.lo, rows[n].lo);
        sup.hi = std::max(sup.hi, rows[n].hi);
    }
    return {sup, constant, std::move(rows)};
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::bounded_with_norm:
            return "bounded_with_norm";
        case Verdict::unbounded_detected:
            return "unbounded_detected";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "unknown";
}

ReportConfig default_report_config(const OperatorParams& params, Exponent p) {
    ReportConfig cfg;
    if (p.is_infinite()) {
        cfg.truncations = {16, 64};
        return cfg;
    }
    const double limit = (params.beta() + 1.0) / p.value();
    for (double e : {0.2, 0.1, 0.05, 0.02, 0.01, 0.005}) {
        if (e < limit) {
            cfg.epsilons.push_back(e);
        }
    }
    if (cfg.epsilons.empty()) {
        for (double f : {0.5, 0.25, 0.1, 0.05}) {
            cfg.epsilons.push_back(f * limit);
        }
    }
    cfg.truncations = {16, 128, 1024};
    if (p.value() == 2.0) {
        cfg.section_sizes = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    }
    return cfg;
}

NormReport norm_report(const OperatorParams& params, const Measure& mu, Exponent p,
                       const ReportConfig& config) {
    const IntegralResult constant =
        p.is_infinite() ? c_constant_inf(mu, params.beta()) : c_constant(mu, params.beta(), p.value());

    std::vector<LowerBound> lower;
    if (p.is_infinite()) {
        const Generator gen = make_extremal_inf(params);
        for (std::size_t M : config.truncations) {
            RayleighOptions opts = config.rayleigh;
            opts.rows = M;
            lower.push_back({0.0, M, rayleigh_ratio(params, mu, p, gen, opts).ratio});
        }
    } else if (!config.epsilons.empty() && !config.truncations.empty()) {
        lower = lower_bound_sweep(params, mu, p.value(), config.epsilons, config.truncations,
                                  config.rayleigh);
    }

    std::vector<SectionPoint> curve;
    if (!p.is_infinite() && p.value() == 2.0) {
        for (std::size_t N : config.section_sizes) {
            curve.push_back({N, two_norm_section(params, mu, N)});
        }
    }

    Verdict verdict = Verdict::inconclusive;
    if (constant.is_finite()) {
        verdict = Verdict::bounded_with_norm;
    } else if (!lower.empty()) {
        const double first = lower.front().ratio;
        for (const LowerBound& lb : lower) {
            if (!std::isfinite(lb.ratio) || lb.ratio > config.growth_factor * first) {
                verdict = Verdict::unbounded_detected;
            }
        }
    }
    return {constant, std::move(lower), std::move(curve), verdict};
}

}  // namespace genhilbert
