#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <genhilbert/measure.hpp>
#include <genhilbert/spaces.hpp>
#include <genhilbert/special_functions.hpp>

namespace genhilbert::cli {

enum class ExitCode : int { ok = 0, input_error = 1, divergent = 2, verify_failed = 3 };

// Bad flags, unreadable files, malformed numbers.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { table, csv };

// Everything a subcommand needs, validated at parse time.
struct RunConfig {
    std::string subcommand;
    OperatorParams params{0.0, 0.0};
    std::optional<Measure> measure;
    Exponent p = Exponent::finite(2.0);

    // kernel
    std::uint64_t m = 0;
    std::uint64_t n = 0;

    // apply: exactly one of generator / sequence
    std::string generator;
    std::vector<double> sequence;
    std::optional<double> epsilon;
    std::size_t n_max = 10;

    // report / sweep schedules; empty means defaults
    std::vector<double> epsilons;
    std::vector<std::size_t> truncations;
    std::vector<std::size_t> sections;

    // sweep: explicitly evaluated output rows per lower bound
    std::size_t truncation = 1000;

    // Relative width of certified rows; each command has its own default.
    std::optional<double> tol;
    std::size_t max_terms = 1'000'000;

    // verify
    std::vector<std::string> only;
    std::optional<double> tol_override;

    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::table;
};

// Throws InputError (or a genhilbert validation error) on bad input. Returns
// nullopt when help was requested and already printed to `out`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

// Runs the parsed command, writing results to `out` (or the configured file).
ExitCode execute(const RunConfig& config, std::ostream& out);

// parse_args + execute with diagnostics on `err`; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Measure aliases: "lebesgue", "atom:<t>:<mass>"; anything else is a JSON file path.
Measure resolve_measure(const std::string& source);

// Strict decimal parsing, no trailing text, finite values only.
double parse_double(const std::string& text, const std::string& what);
std::vector<double> parse_sequence_csv(const std::string& text);

}  // namespace genhilbert::cli
