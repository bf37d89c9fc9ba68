#include "genhilbert/sequence_generator.hpp"

#include <algorithm>
#include <cmath>

#include "genhilbert/format.hpp"
#include "genhilbert/spaces.hpp"

namespace genhilbert {

Generator make_extremal_lp(const OperatorParams& params, double p, double epsilon) {
    check_extremal_epsilon(params.beta(), p, epsilon);
    return ExtremalLp{params, p, epsilon};
}

Generator make_extremal_inf(const OperatorParams& params) { return ExtremalInf{params}; }

const OperatorParams& generator_params(const Generator& g) {
    return std::visit([](const auto& x) -> const OperatorParams& { return x.params; }, g);
}

std::string generator_name(const Generator& g) {
    if (const auto* lp = std::get_if<ExtremalLp>(&g)) {
        return "extremal_lp(p=" + format_double(lp->p) + ", eps=" + format_double(lp->epsilon) + ")";
    }
    return "extremal_inf";
}

double log_term(const Generator& g, double x) {
    if (const auto* lp = std::get_if<ExtremalLp>(&g)) {
        const double beta = lp->params.beta();
        return log_pochhammer_shifted(x, lp->params.alpha()) -
               log_pochhammer_shifted(x, beta) / lp->p -
               (1.0 / lp->p + lp->epsilon) * std::log(x + beta + 1.0);
    }
    const auto& inf = std::get<ExtremalInf>(g);
    return log_pochhammer_shifted(x, inf.params.alpha());
}

double decay_exponent(const Generator& g) {
    if (const auto* lp = std::get_if<ExtremalLp>(&g)) {
        return -lp->params.alpha() + (lp->params.beta() + 1.0) / lp->p + lp->epsilon;
    }
    return -std::get<ExtremalInf>(g).params.alpha();
}

double step_ratio_bound(const Generator& g, std::size_t m0) {
    // Every factor of a_{m+1}/a_m is monotone in m and tends to 1, so
    // max(1, factor(m0)) bounds it on [m0, inf).
    const double m = static_cast<double>(m0);
    const OperatorParams& prm = generator_params(g);
    const double alpha_factor = std::max(1.0, (m + 1.0 + prm.alpha()) / (m + 1.0));
    if (const auto* lp = std::get_if<ExtremalLp>(&g)) {
        const double beta = prm.beta();
        const double f2 = std::pow((m + 1.0) / (m + 1.0 + beta), 1.0 / lp->p);
        const double f3 = std::pow((m + beta + 1.0) / (m + beta + 2.0), 1.0 / lp->p + lp->epsilon);
        return alpha_factor * std::max(1.0, f2) * std::max(1.0, f3);
    }
    return alpha_factor;
}

}  // namespace genhilbert
