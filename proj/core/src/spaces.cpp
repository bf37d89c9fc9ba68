#include "genhilbert/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Exponent Exponent::finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError("norm exponent must satisfy 1 <= p < inf");
    }
    Exponent e;
    e.p_ = p;
    e.infinite_ = false;
    return e;
}

double Exponent::value() const {
    if (infinite_) {
        throw std::logic_error("Exponent::value on the infinite tag");
    }
    return p_;
}

void validate(const WeightSpec& spec) {
    std::visit(overloaded{[](const W1& w) { Exponent::finite(w.p); },
                          [](const W2& w) { Exponent::finite(w.p); },
                          [](const auto&) {}},
               spec);
}

double log_weight(const WeightSpec& spec, double x) {
    return std::visit(
        overloaded{
            [x](const W1& w) {
                return -w.p * log_pochhammer_shifted(x, w.params.alpha()) +
                       log_pochhammer_shifted(x, w.params.beta());
            },
            [x](const W2& w) {
                return -w.p * log_pochhammer_shifted(x + w.params.gap(), w.params.alpha()) +
                       log_pochhammer_shifted(x, w.params.beta());
            },
            [x](const W1Bar& w) { return -log_pochhammer_shifted(x, w.params.alpha()); },
            [x](const W2Bar& w) {
                return -log_pochhammer_shifted(x + w.params.gap(), w.params.alpha());
            },
            [](const UnitWeight&) { return 0.0; },
            [x](const PowerWeight& w) { return w.exponent * std::log(x + 1.0); },
        },
        spec);
}

double weight_value(const WeightSpec& spec, std::size_t m) {
    const double x = static_cast<double>(m);
    return std::visit(
        overloaded{
            [x](const W1& w) {
                return std::pow(pochhammer_shifted(x, w.params.alpha()), -w.p) *
                       pochhammer_shifted(x, w.params.beta());
            },
            [x](const W2& w) {
                return std::pow(pochhammer_shifted(x + w.params.gap(), w.params.alpha()), -w.p) *
                       pochhammer_shifted(x, w.params.beta());
            },
            [x](const W1Bar& w) { return 1.0 / pochhammer_shifted(x, w.params.alpha()); },
            [x](const W2Bar& w) {
                return 1.0 / pochhammer_shifted(x + w.params.gap(), w.params.alpha());
            },
            [](const UnitWeight&) { return 1.0; },
            [x](const PowerWeight& w) { return std::pow(x + 1.0, w.exponent); },
        },
        spec);
}

double p_norm(const WeightedSequence& seq) {
    validate(seq.weight);
    if (seq.values.empty()) {
        throw DomainError("weighted sequence must have length >= 1");
    }
    if (seq.p.is_infinite()) {
        double sup = 0.0;
        for (std::size_t n = 0; n < seq.values.size(); ++n) {
            sup = std::max(sup, weight_value(seq.weight, n) * std::fabs(seq.values[n]));
        }
        return sup;
    }
    const double p = seq.p.value();
    CompensatedSum acc;
    for (std::size_t n = 0; n < seq.values.size(); ++n) {
        const double a = std::fabs(seq.values[n]);
        if (a == 0.0) {
            continue;
        }
        acc.add(weight_value(seq.weight, n) * (p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p))));
    }
    const double s = acc.value();
    if (p == 1.0) {
        return s;
    }
    return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

void check_extremal_epsilon(double beta, double p, double epsilon) {
    if (!(beta > -1.0)) {
        throw DomainError("beta > -1 violated");
    }
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError("extremal sequence requires finite p >= 1");
    }
    if (!(epsilon > 0.0) || !(epsilon < (beta + 1.0) / p)) {
        throw DomainError("epsilon must lie in the open interval (0, (beta+1)/p)");
    }
}

std::vector<double> extremal_sequence_lp(const OperatorParams& params, double p, double epsilon,
                                         std::size_t M) {
    check_extremal_epsilon(params.beta(), p, epsilon);
    std::vector<double> a(M);
    for (std::size_t m = 0; m < M; ++m) {
        const double x = static_cast<double>(m);
        a[m] = pochhammer_shifted(x, params.alpha()) *
               std::pow(pochhammer_shifted(x, params.beta()), -1.0 / p) *
               std::pow(x + params.beta() + 1.0, -(1.0 / p + epsilon));
    }
    return a;
}

std::vector<double> extremal_sequence_inf(const OperatorParams& params, std::size_t M) {
    std::vector<double> a(M);
    for (std::size_t m = 0; m < M; ++m) {
        a[m] = pochhammer_shifted(static_cast<double>(m), params.alpha());
    }
    return a;
}

double lemma26_sequence(double beta, double p, double epsilon, std::size_t n) {
    check_extremal_epsilon(beta, p, epsilon);
    return std::pow(static_cast<double>(n) + beta + 1.0, -1.0 - p * epsilon);
}

Interval extremal_lp_norm_power(const OperatorParams& params, double p, double epsilon,
                                double rel_tol) {
    check_extremal_epsilon(params.beta(), p, epsilon);
    return hurwitz_zeta_interval(1.0 + p * epsilon, params.beta() + 1.0, rel_tol);
}

double dirichlet_norm(const std::vector<double>& coeffs, double lambda) {
    if (coeffs.empty()) {
        return 0.0;
    }
    return p_norm({coeffs, PowerWeight{1.0 - lambda}, Exponent::finite(2.0)});
}

std::pair<double, double> weight_equivalence_check(double s, std::size_t N) {
    if (!(s > -1.0)) {
        throw DomainError("weight_equivalence_check requires s > -1");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t n = 0; n <= N; ++n) {
        const double x = static_cast<double>(n);
        const double r = std::exp(log_pochhammer_shifted(x, s) - s * std::log(x + 1.0));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

}  // namespace genhilbert
