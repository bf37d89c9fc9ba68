#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "genhilbert/series.hpp"
#include "genhilbert/special_functions.hpp"

namespace genhilbert {

// Norm exponent p in [1, inf]; infinity is a distinct tag, not a large float.
class Exponent {
public:
    static Exponent finite(double p);
    static Exponent infinity() noexcept { return Exponent(); }

    bool is_infinite() const noexcept { return infinite_; }
    // Throws std::logic_error for the infinite tag.
    double value() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent() = default;
    double p_ = 0.0;
    bool infinite_ = true;
};

// w1(m) = (m+1)_alpha^{-p} (m+1)_beta
struct W1 {
    OperatorParams params;
    double p;
};
// w2(m) = (m+beta-alpha+1)_alpha^{-p} (m+1)_beta
struct W2 {
    OperatorParams params;
    double p;
};
// w1bar(m) = (m+1)_alpha^{-1}
struct W1Bar {
    OperatorParams params;
};
// w2bar(m) = (m+beta-alpha+1)_alpha^{-1}
struct W2Bar {
    OperatorParams params;
};
struct UnitWeight {};
// (m+1)^exponent
struct PowerWeight {
    double exponent;
};

using WeightSpec = std::variant<W1, W2, W1Bar, W2Bar, UnitWeight, PowerWeight>;

// Throws DomainError when p < 1 in W1/W2.
void validate(const WeightSpec& spec);

double weight_value(const WeightSpec& spec, std::size_t m);
// ln w(x) for real x >= 0 (used by integral tail comparisons).
double log_weight(const WeightSpec& spec, double x);

struct WeightedSequence {
    std::vector<double> values;
    WeightSpec weight;
    Exponent p;
};

// (sum w(n)|a_n|^p)^{1/p}, or sup w(n)|a_n| for the infinite tag. Ascending
// index, compensated accumulation.
double p_norm(const WeightedSequence& seq);

// a_m = (m+1)_alpha (m+1)_beta^{-1/p} (m+beta+1)^{-(1/p+eps)}, m < M.
// Requires 0 < eps < (beta+1)/p.
std::vector<double> extremal_sequence_lp(const OperatorParams& params, double p, double epsilon,
                                         std::size_t M);
// a_m = (m+1)_alpha, m < M.
std::vector<double> extremal_sequence_inf(const OperatorParams& params, std::size_t M);

// (n+beta+1)^{-1-p eps}, requires 0 < eps < (beta+1)/p.
double lemma26_sequence(double beta, double p, double epsilon, std::size_t n);

// Throws DomainError unless p >= 1 and 0 < eps < (beta+1)/p.
void check_extremal_epsilon(double beta, double p, double epsilon);

// Certified enclosure of ||a||_{p,w1}^p for the full (infinite) extremal
// sequence, i.e. sum_{m>=0} (m+beta+1)^{-1-p eps}.
Interval extremal_lp_norm_power(const OperatorParams& params, double p, double epsilon,
                                double rel_tol = 1e-12);

// (sum (n+1)^{1-lambda} |a_n|^2)^{1/2}
double dirichlet_norm(const std::vector<double>& coeffs, double lambda);

// (min, max) over n in [0, N] of (n+1)_s / (n+1)^s.
std::pair<double, double> weight_equivalence_check(double s, std::size_t N);

}  // namespace genhilbert
