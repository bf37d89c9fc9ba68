#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <genhilbert/errors.hpp>
#include <genhilbert/format.hpp>
#include <genhilbert/hilbert_operator.hpp>
#include <genhilbert/sequence_generator.hpp>
#include <genhilbert/verification.hpp>

namespace genhilbert::cli {

namespace {

constexpr const char* kOutputDirEnv = "GENHILBERT_OUTPUT_DIR";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc{} || ptr != end) {
        throw InputError(what + ": expected a nonnegative integer, got '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        out.push_back(trim(cur));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& s : split(text, ',')) {
        out.push_back(parse_double(s, what));
    }
    if (out.empty()) {
        throw InputError(what + ": empty list");
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (const std::string& s : split(text, ',')) {
        out.push_back(static_cast<std::size_t>(parse_uint(s, what)));
    }
    if (out.empty()) {
        throw InputError(what + ": empty list");
    }
    return out;
}

Exponent parse_exponent(const std::string& text) {
    if (trim(text) == "inf") {
        return Exponent::infinity();
    }
    return Exponent::finite(parse_double(text, "--p"));
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const Table& t, std::ostream& out) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) {
        line(r);
    }
}

void write_table(const Table& t, std::ostream& out) {
    std::vector<std::size_t> width(t.header.size(), 0);
    auto cell = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            width[i] = std::max(width[i], cell(cells[i]).size());
        }
    };
    measure(t.header);
    for (const auto& r : t.rows) {
        measure(r);
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string c = cell(cells[i]);
            s += c;
            if (i + 1 < cells.size()) {
                s.append(width[i] - c.size() + 2, ' ');
            }
        }
        out << s << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) {
        line(r);
    }
}

void write(const Table& t, OutputFormat f, std::ostream& out) {
    if (f == OutputFormat::csv) {
        write_csv(t, out);
    } else {
        write_table(t, out);
    }
}

std::string fmt(double x) { return format_double(x); }

std::string constant_text(const IntegralResult& r) {
    if (r.is_finite()) {
        return fmt(r.value());
    }
    return "divergent_" + std::string(to_string(r.endpoint()));
}

IntegralResult constant_for(const Measure& mu, double beta, const Exponent& p) {
    return p.is_infinite() ? c_constant_inf(mu, beta) : c_constant(mu, beta, p.value());
}

ExitCode cmd_constant(const RunConfig& c, std::ostream& out) {
    const IntegralResult r = constant_for(*c.measure, c.params.beta(), c.p);
    if (c.format == OutputFormat::csv) {
        Table t{{"status", "value", "endpoint"}, {}};
        if (r.is_finite()) {
            t.rows.push_back({"finite", fmt(r.value()), ""});
        } else {
            t.rows.push_back({"divergent", "", std::string(to_string(r.endpoint()))});
        }
        write_csv(t, out);
    } else {
        out << r.to_string() << '\n';
    }
    return r.is_finite() ? ExitCode::ok : ExitCode::divergent;
}

ExitCode cmd_kernel(const RunConfig& c, std::ostream& out) {
    const double k = kernel(c.m, c.n, c.params);
    const KernelAltForms alt = kernel_alt_forms(c.m, c.n, c.params);
    Table t{{"m", "n", "kernel", "m_form", "n_form"},
            {{std::to_string(c.m), std::to_string(c.n), fmt(k), fmt(alt.m_form), fmt(alt.n_form)}}};
    write(t, c.format, out);
    return ExitCode::ok;
}

ExitCode cmd_apply(const RunConfig& c, std::ostream& out) {
    const Measure& mu = *c.measure;
    const std::string& g = c.generator;
    if (g == "extremal_lp" || g == "extremal_inf") {
        Generator gen = g == "extremal_inf" ? make_extremal_inf(c.params) : [&] {
            if (c.p.is_infinite()) {
                throw InputError("extremal_lp needs a finite --p");
            }
            if (!c.epsilon) {
                throw InputError("extremal_lp needs --epsilon");
            }
            return make_extremal_lp(c.params, c.p.value(), *c.epsilon);
        }();
        const TailOptions opts{c.tol.value_or(1e-10), c.max_terms};
        const auto rows = apply_tail_bounded(c.params, mu, gen, c.n_max, opts);
        Table t{{"n", "lo", "hi"}, {}};
        for (std::size_t n = 0; n < rows.size(); ++n) {
            t.rows.push_back({std::to_string(n), fmt(rows[n].lo), fmt(rows[n].hi)});
        }
        write(t, c.format, out);
        return ExitCode::ok;
    }

    std::vector<double> a = c.sequence;
    if (!g.empty()) {
        constexpr std::string_view prefix = "unit_basis:";
        if (g.rfind(prefix, 0) != 0) {
            throw InputError("unknown generator '" + g +
                             "' (expected extremal_lp, extremal_inf or unit_basis:<k>)");
        }
        const std::uint64_t k = parse_uint(g.substr(prefix.size()), "unit_basis index");
        a.assign(static_cast<std::size_t>(k) + 1, 0.0);
        a.back() = 1.0;
    }
    const auto y = apply(c.params, mu, a, c.n_max);
    Table t{{"n", "value"}, {}};
    for (std::size_t n = 0; n < y.size(); ++n) {
        t.rows.push_back({std::to_string(n), fmt(y[n])});
    }
    write(t, c.format, out);
    return ExitCode::ok;
}

ExitCode cmd_report(const RunConfig& c, std::ostream& out) {
    ReportConfig rc = default_report_config(c.params, c.p);
    if (!c.epsilons.empty()) {
        rc.epsilons = c.epsilons;
    }
    if (!c.truncations.empty()) {
        rc.truncations = c.truncations;
    }
    if (!c.sections.empty()) {
        rc.section_sizes = c.sections;
    }
    if (c.tol) {
        rc.rayleigh.tail.tol = *c.tol;
    }
    rc.rayleigh.tail.max_terms = c.max_terms;
    const NormReport r = norm_report(c.params, *c.measure, c.p, rc);

    Table t{{"kind", "epsilon", "truncation", "n", "value"}, {}};
    t.rows.push_back({"constant", "", "", "", constant_text(r.constant)});
    t.rows.push_back({"verdict", "", "", "", std::string(to_string(r.verdict))});
    const LowerBound* best = nullptr;
    for (const LowerBound& lb : r.lower_bounds) {
        if (std::isfinite(lb.ratio) && (!best || lb.ratio > best->ratio)) {
            best = &lb;
        }
    }
    if (best) {
        t.rows.push_back({"best_lower_bound", fmt(best->epsilon), std::to_string(best->truncation), "",
                          fmt(best->ratio)});
    }
    for (const LowerBound& lb : r.lower_bounds) {
        t.rows.push_back(
            {"lower_bound", fmt(lb.epsilon), std::to_string(lb.truncation), "", fmt(lb.ratio)});
    }
    for (const SectionPoint& s : r.section_curve) {
        t.rows.push_back({"section", "", "", std::to_string(s.n), fmt(s.two_norm)});
    }
    write(t, c.format, out);
    return ExitCode::ok;
}

ExitCode cmd_verify(const RunConfig& c, std::ostream& out) {
    VerifyConfig vc = default_verify_config();
    vc.tol_override = c.tol_override;
    const auto results = run_verification(vc, c.only);
    bool all = true;
    Table t;
    if (c.format == OutputFormat::csv) {
        t.header = {"name", "passed", "worst_residual", "samples"};
    } else {
        t.header = {"name", "passed", "worst_residual", "samples", "tolerance", "worst_input"};
    }
    for (const CheckResult& r : results) {
        all = all && r.passed;
        std::vector<std::string> row{r.name, r.passed ? "true" : "false", fmt(r.worst_residual),
                                     std::to_string(r.samples)};
        if (c.format == OutputFormat::table) {
            row.push_back(fmt(r.tolerance));
            row.push_back(r.worst_input);
        }
        t.rows.push_back(std::move(row));
    }
    write(t, c.format, out);
    return all ? ExitCode::ok : ExitCode::verify_failed;
}

ExitCode cmd_sweep(const RunConfig& c, std::ostream& out) {
    std::vector<std::size_t> sections = c.sections;
    if (sections.empty()) {
        for (std::size_t n = 2; n <= 512; n *= 2) {
            sections.push_back(n);
        }
    }
    Table t{{"kind", "param", "value"}, {}};
    for (std::size_t n : sections) {
        t.rows.push_back({"section", std::to_string(n), fmt(two_norm_section(c.params, *c.measure, n))});
    }
    if (!c.p.is_infinite()) {
        const double p = c.p.value();
        std::vector<double> eps = c.epsilons;
        if (eps.empty()) {
            for (double e : {0.2, 0.1, 0.05, 0.02}) {
                if (e < (c.params.beta() + 1.0) / p) {
                    eps.push_back(e);
                }
            }
        }
        RayleighOptions opts;
        if (c.tol) {
            opts.tail.tol = *c.tol;
        }
        opts.tail.max_terms = c.max_terms;
        for (const LowerBound& lb :
             lower_bound_sweep(c.params, *c.measure, p, eps, {c.truncation}, opts)) {
            t.rows.push_back({"lower_bound", fmt(lb.epsilon), fmt(lb.ratio)});
        }
    }
    write_csv(t, out);
    return ExitCode::ok;
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v, std::chars_format::general);
    if (t.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw InputError(what + ": expected a finite decimal number, got '" + text + "'");
    }
    return v;
}

std::vector<double> parse_sequence_csv(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        out.push_back(parse_double(line, "sequence line " + std::to_string(lineno)));
    }
    if (out.empty()) {
        throw InputError("sequence file is empty");
    }
    return out;
}

Measure resolve_measure(const std::string& source) {
    if (source == "lebesgue") {
        return Measure::lebesgue();
    }
    constexpr std::string_view atom_prefix = "atom:";
    if (source.rfind(atom_prefix, 0) == 0) {
        const auto parts = split(source.substr(atom_prefix.size()), ':');
        if (parts.size() != 2) {
            throw InputError("measure alias must look like atom:<t>:<mass>, got '" + source + "'");
        }
        return Measure::atom(parse_double(parts[0], "atom t"), parse_double(parts[1], "atom mass"));
    }
    return parse_measure(read_file(source));
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Generalized Hilbert operators: constants, sections, lower bounds, checks",
                 "genhilbert"};
    app.require_subcommand(1);

    // Raw text; every number is parsed by parse_double / parse_uint.
    std::string alpha = "0", beta = "0", p = "2", measure, measure_json, format = "table", output;
    std::string m, n, generator, sequence_file, epsilon, n_max, epsilons, truncations, sections,
        truncation, tol, max_terms, only;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--alpha", alpha, "kernel parameter alpha (> -1)");
        sub->add_option("--beta", beta, "kernel parameter beta (> -1, beta - alpha > -1)");
        sub->add_option("--output,-o", output, "write results to this file");
    };
    auto with_measure = [&](CLI::App* sub) {
        sub->add_option("--measure", measure, "lebesgue, atom:<t>:<mass>, or a measure JSON file");
        sub->add_option("--measure-json", measure_json, "inline measure JSON");
        sub->add_option("--p", p, "exponent p >= 1, or inf");
    };
    auto with_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
    };

    CLI::App* constant = app.add_subcommand("constant", "C_mu(beta, p) or C_mu(beta, inf)");
    common(constant);
    with_measure(constant);
    with_format(constant);

    CLI::App* kern = app.add_subcommand("kernel", "kernel value and both binomial forms");
    common(kern);
    with_format(kern);
    kern->add_option("--m", m, "column index")->required();
    kern->add_option("--n", n, "row index")->required();

    CLI::App* app_apply = app.add_subcommand("apply", "apply the operator to a sequence");
    common(app_apply);
    with_measure(app_apply);
    with_format(app_apply);
    app_apply->add_option("--generator", generator, "extremal_lp, extremal_inf or unit_basis:<k>");
    app_apply->add_option("--sequence", sequence_file, "file with one decimal per line");
    app_apply->add_option("--epsilon", epsilon, "extremal_lp epsilon");
    app_apply->add_option("--n-max", n_max, "last output row (default 10)");
    app_apply->add_option("--tol", tol, "relative width of certified rows (default 1e-10)");
    app_apply->add_option("--max-terms", max_terms, "truncation budget per row");

    CLI::App* report = app.add_subcommand("report", "constant, lower bounds, section curve, verdict");
    common(report);
    with_measure(report);
    with_format(report);
    report->add_option("--epsilons", epsilons, "comma-separated epsilon schedule");
    report->add_option("--truncations", truncations, "comma-separated output-row counts");
    report->add_option("--sections", sections, "comma-separated section sizes");
    report->add_option("--tol", tol, "relative width of certified rows");
    report->add_option("--max-terms", max_terms, "truncation budget per row");

    CLI::App* verify = app.add_subcommand("verify", "run the identity and inequality checks");
    with_format(verify);
    verify->add_option("--output,-o", output, "write results to this file");
    verify->add_option("--only", only, "comma-separated check names");
    verify->add_option("--tol", tol, "replace every check tolerance");

    CLI::App* sweep = app.add_subcommand("sweep", "CSV of section norms and lower-bound ratios");
    common(sweep);
    with_measure(sweep);
    sweep->add_option("--sections", sections, "comma-separated section sizes (default 2..512)");
    sweep->add_option("--epsilons", epsilons, "comma-separated epsilon schedule");
    sweep->add_option("--truncation", truncation, "output rows per lower bound (default 1000)");
    sweep->add_option("--tol", tol, "relative width of certified rows");
    sweep->add_option("--max-terms", max_terms, "truncation budget per row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, out);
            return std::nullopt;
        }
        throw InputError(e.what());
    }

    RunConfig c;
    CLI::App* sub = app.get_subcommands().front();
    c.subcommand = sub->get_name();
    auto given = [&](const char* flag) { return sub->get_option_no_throw(flag) && sub->count(flag) > 0; };

    if (c.subcommand != "verify") {
        c.params = OperatorParams(parse_double(alpha, "--alpha"), parse_double(beta, "--beta"));
    }
    c.format = format == "csv" ? OutputFormat::csv : OutputFormat::table;
    if (!output.empty()) {
        c.output_path = output;
    }
    if (given("--p")) {
        c.p = parse_exponent(p);
    }
    if (sub == constant || sub == app_apply || sub == report || sub == sweep) {
        const bool file = given("--measure");
        const bool inline_json = given("--measure-json");
        if (file == inline_json) {
            throw InputError("give exactly one of --measure or --measure-json");
        }
        c.measure = file ? resolve_measure(measure) : parse_measure(measure_json);
    }
    if (sub == kern) {
        c.m = parse_uint(m, "--m");
        c.n = parse_uint(n, "--n");
    }
    if (sub == app_apply) {
        const bool gen = given("--generator");
        const bool seq = given("--sequence");
        if (gen == seq) {
            throw InputError("give exactly one of --generator or --sequence");
        }
        if (gen) {
            c.generator = generator;
        } else {
            c.sequence = parse_sequence_csv(read_file(sequence_file));
        }
        if (given("--epsilon")) {
            c.epsilon = parse_double(epsilon, "--epsilon");
        }
        if (given("--n-max")) {
            c.n_max = static_cast<std::size_t>(parse_uint(n_max, "--n-max"));
        }
    }
    if (given("--epsilons")) {
        c.epsilons = parse_double_list(epsilons, "--epsilons");
        if (!c.p.is_infinite()) {
            for (double e : c.epsilons) {
                check_extremal_epsilon(c.params.beta(), c.p.value(), e);
            }
        }
    }
    if (given("--truncations")) {
        c.truncations = parse_size_list(truncations, "--truncations");
    }
    if (given("--sections")) {
        c.sections = parse_size_list(sections, "--sections");
        if (std::find(c.sections.begin(), c.sections.end(), 0) != c.sections.end()) {
            throw InputError("--sections: sizes must be positive");
        }
    }
    if (given("--truncation")) {
        c.truncation = static_cast<std::size_t>(parse_uint(truncation, "--truncation"));
        if (c.truncation == 0) {
            throw InputError("--truncation must be positive");
        }
    }
    if (given("--max-terms")) {
        c.max_terms = static_cast<std::size_t>(parse_uint(max_terms, "--max-terms"));
    }
    if (given("--tol")) {
        const double t = parse_double(tol, "--tol");
        if (!(t > 0.0)) {
            throw InputError("--tol must be positive");
        }
        if (sub == verify) {
            c.tol_override = t;
        } else {
            c.tol = t;
        }
    }
    if (given("--only")) {
        for (std::string& s : split(only, ',')) {
            if (!s.empty()) {
                c.only.push_back(std::move(s));
            }
        }
        const auto& names = verification_check_names();
        for (const std::string& s : c.only) {
            if (std::find(names.begin(), names.end(), s) == names.end()) {
                throw InputError("--only: unknown check '" + s + "'");
            }
        }
    }
    return c;
}

ExitCode execute(const RunConfig& config, std::ostream& out) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (config.output_path) {
        const auto path = resolve_output(*config.output_path);
        file.open(path, std::ios::binary);
        if (!file) {
            throw InputError("cannot write '" + path.string() + "'");
        }
        sink = &file;
    }
    const std::string& s = config.subcommand;
    ExitCode code = ExitCode::ok;
    if (s == "constant") {
        code = cmd_constant(config, *sink);
    } else if (s == "kernel") {
        code = cmd_kernel(config, *sink);
    } else if (s == "apply") {
        code = cmd_apply(config, *sink);
    } else if (s == "report") {
        code = cmd_report(config, *sink);
    } else if (s == "verify") {
        code = cmd_verify(config, *sink);
    } else if (s == "sweep") {
        code = cmd_sweep(config, *sink);
    } else {
        throw InputError("unknown subcommand '" + s + "'");
    }
    sink->flush();
    return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_args(argc, argv, out);
        if (!config) {
            return static_cast<int>(ExitCode::ok);
        }
        return static_cast<int>(execute(*config, out));
    } catch (const ConvergenceError& e) {
        err << "genhilbert: computation did not converge: " << e.what() << '\n';
    } catch (const BudgetExhausted& e) {
        err << "genhilbert: budget exhausted: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "genhilbert: " << e.what() << '\n';
    }
    return static_cast<int>(ExitCode::input_error);
}

}  // namespace genhilbert::cli
