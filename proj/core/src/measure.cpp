#include "genhilbert/measure.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "genhilbert/errors.hpp"
#include "genhilbert/format.hpp"
#include "genhilbert/quadrature.hpp"
#include "genhilbert/special_functions.hpp"

namespace genhilbert {

Measure::Measure(std::vector<Atom> atoms, std::vector<BetaComponent> densities)
    : atoms_(std::move(atoms)), densities_(std::move(densities)) {
    std::ostringstream problems;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& at = atoms_[i];
        if (!(at.t > 0.0 && at.t < 1.0)) {
            problems << "/atoms/" << i << "/t: must satisfy 0 < t < 1; ";
        }
        if (!(at.mass > 0.0) || !std::isfinite(at.mass)) {
            problems << "/atoms/" << i << "/mass: must be finite and > 0; ";
        }
    }
    for (std::size_t i = 0; i < densities_.size(); ++i) {
        const BetaComponent& d = densities_[i];
        if (!(d.coef > 0.0) || !std::isfinite(d.coef)) {
            problems << "/densities/" << i << "/coef: must be finite and > 0; ";
        }
        if (!(d.a > 0.0) || !std::isfinite(d.a)) {
            problems << "/densities/" << i << "/a: must be finite and > 0; ";
        }
        if (!(d.b > 0.0) || !std::isfinite(d.b)) {
            problems << "/densities/" << i << "/b: must be finite and > 0; ";
        }
    }
    if (atoms_.empty() && densities_.empty()) {
        problems << "measure must contain at least one component; ";
    }
    std::string msg = problems.str();
    if (!msg.empty()) {
        msg.resize(msg.size() - 2);
        throw ValidationError(msg);
    }
}

Measure Measure::lebesgue() { return Measure({}, {{1.0, 1.0, 1.0}}); }

Measure Measure::atom(double t, double mass) { return Measure({{t, mass}}, {}); }

Measure Measure::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("measure scale factor must be finite and > 0");
    }
    std::vector<Atom> atoms = atoms_;
    std::vector<BetaComponent> dens = densities_;
    for (Atom& a : atoms) {
        a.mass *= c;
    }
    for (BetaComponent& d : dens) {
        d.coef *= c;
    }
    return Measure(std::move(atoms), std::move(dens));
}

std::string_view to_string(Endpoint e) {
    switch (e) {
        case Endpoint::at_zero:
            return "at_zero";
        case Endpoint::at_one:
            return "at_one";
        case Endpoint::both:
            return "both";
    }
    return "unknown";
}

IntegralResult::IntegralResult(Finite f) : state_(f) {
    if (!(f.value >= 0.0)) {
        throw std::logic_error("IntegralResult: finite value must be >= 0");
    }
}

double IntegralResult::value() const {
    if (const auto* f = std::get_if<Finite>(&state_)) {
        return f->value;
    }
    throw std::logic_error("IntegralResult::value on a divergent result");
}

Endpoint IntegralResult::endpoint() const {
    if (const auto* d = std::get_if<Divergent>(&state_)) {
        return d->endpoint;
    }
    throw std::logic_error("IntegralResult::endpoint on a finite result");
}

std::string IntegralResult::to_string() const {
    if (is_finite()) {
        return "Finite " + format_double(value());
    }
    return "Divergent " + std::string(genhilbert::to_string(endpoint()));
}

double total_mass(const Measure& mu) { return moment(mu, 0, 0); }

double moment(const Measure& mu, std::uint64_t m, std::uint64_t n) {
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (const Atom& a : mu.atoms()) {
        sum += a.mass * std::exp(md * std::log(a.t) + nd * std::log1p(-a.t));
    }
    for (const BetaComponent& d : mu.densities()) {
        sum += std::exp(std::log(d.coef) + log_beta(md + d.a, nd + d.b));
    }
    return sum;
}

IntegralResult power_integral(const Measure& mu, double u, double v) {
    bool div0 = false;
    bool div1 = false;
    double sum = 0.0;
    for (const Atom& a : mu.atoms()) {
        sum += a.mass * std::exp(-u * std::log(a.t) - v * std::log1p(-a.t));
    }
    for (const BetaComponent& d : mu.densities()) {
        const double c0 = d.a - u;
        const double c1 = d.b - v;
        div0 = div0 || !(c0 > 0.0);
        div1 = div1 || !(c1 > 0.0);
        if (c0 > 0.0 && c1 > 0.0) {
            sum += std::exp(std::log(d.coef) + log_beta(c0, c1));
        }
    }
    if (div0 && div1) {
        return Divergent{Endpoint::both};
    }
    if (div0) {
        return Divergent{Endpoint::at_zero};
    }
    if (div1) {
        return Divergent{Endpoint::at_one};
    }
    return Finite{sum};
}

namespace {

void check_beta_p(double beta, double p) {
    if (!(beta > -1.0)) {
        throw DomainError("beta > -1 violated");
    }
    if (!(p >= 1.0)) {
        throw DomainError("p >= 1 violated");
    }
}

}  // namespace

IntegralResult c_constant(const Measure& mu, double beta, double p) {
    check_beta_p(beta, p);
    const double u = (beta + 1.0) / p;
    const double v = p == 1.0 ? 0.0 : (1.0 - 1.0 / p) * (beta + 1.0);
    return power_integral(mu, u, v);
}

IntegralResult c_constant_inf(const Measure& mu, double beta) {
    if (!(beta > -1.0)) {
        throw DomainError("beta > -1 violated");
    }
    return power_integral(mu, 0.0, beta + 1.0);
}

double quad_check(const Measure& mu, double u, double v, double tol) {
    if (!power_integral(mu, u, v).is_finite()) {
        throw DomainError("quad_check requires a finite power integral");
    }
    double sum = 0.0;
    for (const Atom& a : mu.atoms()) {
        sum += a.mass * std::pow(a.t, -u) * std::pow(1.0 - a.t, -v);
    }
    QuadOptions opts;
    opts.rel_tol = std::min(1e-6, std::max(0.1 * tol, 1e-14));
    for (const BetaComponent& d : mu.densities()) {
        const QuadResult r = integrate_beta_weighted([](double) { return 1.0; }, d.a - u, d.b - v, opts);
        sum += d.coef * r.value;
    }
    return sum;
}

double truncated_power_integral(const Measure& mu, double u, double v, double delta) {
    double sum = 0.0;
    for (const Atom& a : mu.atoms()) {
        if (a.t >= delta && a.t <= 1.0 - delta) {
            sum += a.mass * std::pow(a.t, -u) * std::pow(1.0 - a.t, -v);
        }
    }
    QuadOptions opts;
    opts.rel_tol = 1e-10;
    for (const BetaComponent& d : mu.densities()) {
        sum += d.coef * integrate_truncated_power(d.a - u, d.b - v, delta, opts).value;
    }
    return sum;
}

}  // namespace genhilbert
