#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace genhilbert {

// Point mass `mass` at an interior point t of (0, 1).
struct Atom {
    double t;
    double mass;
    friend bool operator==(const Atom&, const Atom&) = default;
};

// Density coef * t^{a-1} (1-t)^{b-1} dt on (0, 1).
struct BetaComponent {
    double coef;
    double a;
    double b;
    friend bool operator==(const BetaComponent&, const BetaComponent&) = default;
};

// Finite positive measure on (0, 1): atoms plus Beta-family densities.
// Immutable after construction; construction validates every component.
class Measure {
public:
    Measure(std::vector<Atom> atoms, std::vector<BetaComponent> densities);

    static Measure lebesgue();
    static Measure atom(double t, double mass);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<BetaComponent>& densities() const noexcept { return densities_; }

    // c * mu for c > 0.
    Measure scaled(double c) const;

    friend bool operator==(const Measure&, const Measure&) = default;

private:
    std::vector<Atom> atoms_;
    std::vector<BetaComponent> densities_;
};

enum class Endpoint { at_zero, at_one, both };

std::string_view to_string(Endpoint e);

struct Finite {
    double value;
};
struct Divergent {
    Endpoint endpoint;
};

// Either a finite nonnegative value or a divergence at an endpoint.
class IntegralResult {
public:
    IntegralResult(Finite f);
    IntegralResult(Divergent d) : state_(d) {}

    bool is_finite() const noexcept { return std::holds_alternative<Finite>(state_); }
    // Throws std::logic_error when divergent.
    double value() const;
    // Throws std::logic_error when finite.
    Endpoint endpoint() const;
    // "Finite <value>" / "Divergent <endpoint>" with 17 significant digits.
    std::string to_string() const;

private:
    std::variant<Finite, Divergent> state_;
};

double total_mass(const Measure& mu);

// int t^m (1-t)^n dmu.
double moment(const Measure& mu, std::uint64_t m, std::uint64_t n);

// int t^{-u} (1-t)^{-v} dmu, with divergence decided from the exponents
// (a - u <= 0 diverges at 0, b - v <= 0 diverges at 1).
IntegralResult power_integral(const Measure& mu, double u, double v);

// C_mu(beta, p) for p >= 1.
IntegralResult c_constant(const Measure& mu, double beta, double p);
// C_mu(beta, inf).
IntegralResult c_constant_inf(const Measure& mu, double beta);

// Independent quadrature evaluation of int t^{-u}(1-t)^{-v} dmu (atoms exact,
// densities by singularity-subtracting adaptive quadrature). Requires the
// integral to be finite.
double quad_check(const Measure& mu, double u, double v, double tol);

// int_delta^{1-delta} t^{-u}(1-t)^{-v} dmu by quadrature (any u, v).
double truncated_power_integral(const Measure& mu, double u, double v, double delta);

// Measure-spec JSON:
//   {"atoms":[{"t":..,"mass":..}], "densities":[{"coef":..,"a":..,"b":..}]}
// Missing lists default to empty. Throws ParseError on malformed JSON and
// ValidationError naming the offending field path(s).
Measure parse_measure(std::string_view text);
// Canonical form: atoms sorted by t, densities by (a, b, coef).
std::string serialize_measure(const Measure& mu);

}  // namespace genhilbert
