#include "row_evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "genhilbert/errors.hpp"

namespace genhilbert::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative rounding allowance for a sum of positive terms exp(L), where L is
// accumulated from log pieces of total absolute size `log_mass`.
double rounding_guard(double log_mass) { return 8.0 * kEps + 4.0 * kEps * log_mass; }

[[noreturn]] void rounding_error(std::size_t n, double guard, double tol) {
    std::ostringstream os;
    os << "apply_tail_bounded: row " << n << " carries rounding error ~" << guard
       << " relative, above the requested width " << tol;
    throw BudgetExhausted(os.str(), 0.0, kInf);
}

[[noreturn]] void budget_error(const char* what, std::size_t n, std::size_t K, const Interval& last) {
    std::ostringstream os;
    os << what << ": row " << n << " did not reach the requested width within " << K
       << " terms";
    throw BudgetExhausted(os.str(), last.lo, last.hi);
}

}  // namespace

RowEvaluator::RowEvaluator(const OperatorParams& params, const Measure& mu, const Generator& gen,
                           double tol, std::size_t max_terms)
    : params_(params), gen_(gen), tol_(tol), max_terms_(max_terms), atoms_(mu.atoms()) {
    if (!(tol > 0.0)) {
        throw DomainError("row tolerance must be > 0");
    }
    if (!(generator_params(gen) == params)) {
        throw DomainError("generator parameters differ from operator parameters");
    }
    const double sigma = decay_exponent(gen);
    for (const BetaComponent& c : mu.densities()) {
        DensityState d{c, std::log(c.coef), c.b + params.alpha() - params.beta() + sigma, {}, {}};
        diverges_ = diverges_ || !(d.kappa > 1.0);
        densities_.push_back(std::move(d));
    }
}

double RowEvaluator::log_a(std::size_t m) {
    while (log_a_.size() <= m) {
        log_a_.push_back(log_term(gen_, static_cast<double>(log_a_.size())));
    }
    return log_a_[m];
}

void RowEvaluator::grow_density(DensityState& d, std::size_t m_end, std::size_t j_end) {
    const double alpha = params_.alpha();
    const double beta = params_.beta();
    d.log_ea.reserve(m_end);
    while (d.log_ea.size() < m_end) {
        const std::size_t m = d.log_ea.size();
        const double x = static_cast<double>(m);
        d.log_ea.push_back(log_gamma_ratio(x + alpha + 1.0, d.c.a - alpha - 1.0) + log_a(m));
    }
    d.log_g.reserve(j_end);
    while (d.log_g.size() < j_end) {
        const double j = static_cast<double>(d.log_g.size());
        d.log_g.push_back(-log_gamma_ratio(j + beta + 1.0, d.c.a + d.c.b - beta - 1.0));
    }
}

Interval RowEvaluator::density_row(DensityState& d, std::size_t n) {
    const double alpha = params_.alpha();
    const double beta = params_.beta();
    const double nd = static_cast<double>(n);
    const double log_d = d.log_coef + log_gamma_ratio(nd + beta - alpha + 1.0, d.c.b - beta + alpha - 1.0);

    // Real-argument extension of m -> entries[n][m] a_m.
    auto log_term_x = [&](double x) {
        return log_d + log_gamma_ratio(x + alpha + 1.0, d.c.a - alpha - 1.0) + log_term(gen_, x) -
               log_gamma_ratio(x + nd + beta + 1.0, d.c.a + d.c.b - beta - 1.0);
    };

    std::size_t K = std::max<std::size_t>(64, 2 * n + 64);
    std::size_t summed = 0;
    CompensatedSum partial;
    Interval last{0.0, kInf};
    for (;;) {
        if (K > max_terms_) {
            budget_error("apply_tail_bounded", n, max_terms_, last);
        }
        grow_density(d, K, K + n);
        for (; summed < K; ++summed) {
            partial.add(std::exp(log_d + d.log_ea[summed] + d.log_g[summed + n]));
        }
        if (!looks_log_convex(log_term_x, static_cast<double>(K) - 0.5)) {
            K *= 2;
            continue;
        }
        const double p = partial.value();
        // The tail only needs relative accuracy tol * (partial / tail).
        const double kd = static_cast<double>(K);
        const double tail_guess = std::exp(log_term_x(kd)) * kd / (d.kappa - 1.0);
        double tail_tol = 0.05 * tol_ * p / std::max(tail_guess, 1e-300);
        tail_tol = std::clamp(tail_tol, 1e-11, 1e-4);
        const Interval tail = convex_tail_bounds(log_term_x, K, d.kappa, tail_tol);
        const double guard = rounding_guard(
            std::fabs(log_d) + std::max(std::fabs(d.log_ea[0]), std::fabs(d.log_ea[K - 1])) +
            std::max(std::fabs(d.log_g[n]), std::fabs(d.log_g[K - 1 + n])));
        if (2.0 * guard > tol_) {
            rounding_error(n, guard, tol_);
        }
        last = {p + tail.lo, p + tail.hi};
        last.lo -= guard * last.lo;
        last.hi += guard * last.hi;
        if (last.width() <= tol_ * last.hi) {
            return last;
        }
        // The convexity gap decays roughly like K^{-kappa-1}.
        const double ratio = last.width() / (tol_ * last.hi);
        double grow = 1.2 * std::pow(ratio, 1.0 / (d.kappa + 1.0));
        grow = std::clamp(grow, 2.0, 64.0);
        K = static_cast<std::size_t>(std::ceil(static_cast<double>(K) * grow));
    }
}

Interval RowEvaluator::atom_row(const Atom& atom, std::size_t n) {
    const double alpha = params_.alpha();
    const double beta = params_.beta();
    const double gap = params_.gap();
    const double nd = static_cast<double>(n);
    const double log_t = std::log(atom.t);
    const double log_base_parts[] = {std::log(atom.mass), nd * std::log1p(-atom.t), -log_gamma(nd + gap + 1.0)};
    const double log_base = log_base_parts[0] + log_base_parts[1] + log_base_parts[2];
    const double log_base_mass =
        std::fabs(log_base_parts[0]) + std::fabs(log_base_parts[1]) + std::fabs(log_base_parts[2]);

    auto log_term_m = [&](std::size_t m) {
        const double x = static_cast<double>(m);
        return log_base + log_gamma_ratio(x + alpha + 1.0, nd + gap) + x * log_t + log_a(m);
    };

    // Terms grow until m ~ (n + beta) t / (1 - t); start past the peak.
    const double peak = (nd + beta + 1.0) * atom.t / (1.0 - atom.t);
    std::size_t K = static_cast<std::size_t>(std::ceil(2.0 * peak)) + 32;
    std::size_t summed = 0;
    CompensatedSum partial;
    Interval last{0.0, kInf};
    for (;;) {
        if (K > max_terms_) {
            budget_error("apply_tail_bounded", n, max_terms_, last);
        }
        for (; summed < K; ++summed) {
            partial.add(std::exp(log_term_m(summed)));
        }
        const double k = static_cast<double>(K);
        const double kernel_ratio = std::max(1.0, (k + nd + beta + 1.0) / (k + alpha + 1.0));
        const double q = atom.t * kernel_ratio * step_ratio_bound(gen_, K);
        if (q < 1.0) {
            const double tk = std::exp(log_term_m(K));
            const double p = partial.value();
            // The log pieces grow with m, so the m = K sizes dominate every summed term.
            const double guard = rounding_guard(log_base_mass +
                                                std::fabs(log_gamma_ratio(k + alpha + 1.0, nd + gap)) +
                                                k * std::fabs(log_t) + std::fabs(log_a(K)));
            if (2.0 * guard > tol_) {
                rounding_error(n, guard, tol_);
            }
            last = {p + tk, p + tk / (1.0 - q)};
            last.lo -= guard * last.lo;
            last.hi += guard * last.hi;
            if (last.width() <= tol_ * last.hi) {
                return last;
            }
        }
        K *= 2;
    }
}

Interval RowEvaluator::row(std::size_t n) {
    if (diverges_) {
        return {kInf, kInf};
    }
    Interval total{0.0, 0.0};
    for (const Atom& a : atoms_) {
        total += atom_row(a, n);
    }
    for (DensityState& d : densities_) {
        total += density_row(d, n);
    }
    return total;
}

}  // namespace genhilbert::detail
