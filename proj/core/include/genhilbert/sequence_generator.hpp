#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "genhilbert/special_functions.hpp"

namespace genhilbert {

// The infinite extremal sequence a_m = (m+1)_alpha (m+1)_beta^{-1/p} (m+beta+1)^{-(1/p+eps)}.
struct ExtremalLp {
    OperatorParams params;
    double p;
    double epsilon;
};

// The infinite sequence a_m = (m+1)_alpha.
struct ExtremalInf {
    OperatorParams params;
};

using Generator = std::variant<ExtremalLp, ExtremalInf>;

// Validates epsilon for ExtremalLp.
Generator make_extremal_lp(const OperatorParams& params, double p, double epsilon);
Generator make_extremal_inf(const OperatorParams& params);

const OperatorParams& generator_params(const Generator& g);
std::string generator_name(const Generator& g);

// ln a_x for real x >= 0.
double log_term(const Generator& g, double x);
// sigma with a_m ~ m^{-sigma}.
double decay_exponent(const Generator& g);
// An upper bound for a_{m+1}/a_m over all m >= m0.
double step_ratio_bound(const Generator& g, std::size_t m0);

}  // namespace genhilbert
