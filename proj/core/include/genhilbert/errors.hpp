#pragma once

#include <stdexcept>
#include <string>

namespace genhilbert {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A value that would not fit in a double (reported instead of returning inf).
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Adaptive quadrature could not reach its tolerance within the refinement budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}
    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

// A certified sum or iteration ran out of its configured term/iteration budget.
// lo/hi carry the last bracket that was reached.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// Malformed input text (JSON syntax, CSV numbers).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace genhilbert
