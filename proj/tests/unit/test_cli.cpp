#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <genhilbert/errors.hpp>

#include "cli.hpp"

namespace cli = genhilbert::cli;

namespace {

const std::string kData = GENHILBERT_TEST_DATA_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "genhilbert");
    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
        v.push_back(l);
    }
    return v;
}

std::string first_line(const std::string& text) { return lines(text).at(0); }

}  // namespace

TEST(CliConstant, Examples) {
    const Outcome a = run({"constant", "--alpha", "0", "--beta", "0", "--p", "2", "--measure", kData + "/lebesgue.json"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("Finite 3.1415926535897931"), std::string::npos) << a.out;

    const Outcome b = run({"constant", "--beta", "0", "--p", "inf", "--measure", kData + "/atom_half.json"});
    EXPECT_EQ(b.code, 0) << b.err;
    EXPECT_NE(b.out.find("Finite 2"), std::string::npos) << b.out;

    const Outcome c = run({"constant", "--beta", "1", "--p", "2", "--measure", kData + "/lebesgue.json"});
    EXPECT_EQ(c.code, 2);
    EXPECT_NE(c.out.find("Divergent both"), std::string::npos) << c.out;

    const Outcome d = run({"constant", "--beta", "1", "--p", "2", "--measure", "lebesgue", "--format", "csv"});
    EXPECT_EQ(d.code, 2);
    EXPECT_EQ(d.out, "status,value,endpoint\ndivergent,,both\n");
}

TEST(CliKernel, Examples) {
    const Outcome a = run({"kernel", "--m", "2", "--n", "3", "--format", "csv"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, "m,n,kernel,m_form,n_form\n2,3,10,10,10\n");

    const Outcome b = run({"kernel", "--alpha", "-1.5", "--beta", "0", "--m", "0", "--n", "0"});
    EXPECT_EQ(b.code, 1);
    EXPECT_NE(b.err.find("alpha > -1"), std::string::npos) << b.err;
    EXPECT_TRUE(b.out.empty());
}

TEST(CliApply, GeneratorsAndSequences) {
    const Outcome a = run({"apply", "--measure", "lebesgue", "--generator", "unit_basis:0", "--n-max", "3", "--format", "csv"});
    EXPECT_EQ(a.code, 0) << a.err;
    const auto la = lines(a.out);
    ASSERT_EQ(la.size(), 5u);
    EXPECT_EQ(la[0], "n,value");
    EXPECT_EQ(la[1], "0,1");
    EXPECT_EQ(la[2], "1,0.5");

    const Outcome b = run({"apply", "--measure", "atom:0.5:1", "--generator", "extremal_inf", "--n-max", "4", "--format", "csv"});
    EXPECT_EQ(b.code, 0) << b.err;
    const auto lb = lines(b.out);
    ASSERT_EQ(lb.size(), 6u);
    EXPECT_EQ(lb[0], "n,lo,hi");
    for (std::size_t i = 1; i < lb.size(); ++i) {
        std::istringstream row(lb[i]);
        std::string n, lo, hi;
        std::getline(row, n, ',');
        std::getline(row, lo, ',');
        std::getline(row, hi, ',');
        EXPECT_LE(std::stod(lo), 2.0);
        EXPECT_GE(std::stod(hi), 2.0);
    }

    const auto seq = std::filesystem::temp_directory_path() / "genhilbert_cli_seq.txt";
    std::ofstream(seq) << "1\n0\n0.5\n";
    const Outcome c = run({"apply", "--measure", "lebesgue", "--sequence", seq.string(), "--n-max", "0", "--format", "csv"});
    EXPECT_EQ(c.code, 0) << c.err;
    // 1/1 + 0.5/3
    EXPECT_EQ(lines(c.out).at(1).substr(0, 12), "0,1.16666666");

    EXPECT_EQ(run({"apply", "--measure", "lebesgue", "--generator", "extremal_lp"}).code, 1);
    EXPECT_EQ(run({"apply", "--measure", "lebesgue", "--generator", "bogus"}).code, 1);
    EXPECT_EQ(run({"apply", "--measure", "lebesgue", "--generator", "extremal_inf", "--sequence", seq.string()}).code, 1);
    std::filesystem::remove(seq);
}

TEST(CliMeasure, ExactlyOneSource) {
    EXPECT_EQ(run({"constant", "--p", "2"}).code, 1);
    EXPECT_EQ(run({"constant", "--p", "2", "--measure", "lebesgue", "--measure-json", "{\"atoms\":[]}"}).code, 1);
    const Outcome inl = run({"constant", "--p", "inf", "--measure-json", "{\"atoms\":[{\"t\":0.5,\"mass\":1}]}"});
    EXPECT_EQ(inl.code, 0) << inl.err;
    EXPECT_EQ(run({"constant", "--p", "2", "--measure", "/nonexistent/m.json"}).code, 1);
    EXPECT_EQ(run({"constant", "--p", "2", "--measure", "atom:1.5:1"}).code, 1);
    EXPECT_EQ(run({"constant", "--p", "0.5", "--measure", "lebesgue"}).code, 1);
    EXPECT_EQ(run({"constant", "--p", "2x", "--measure", "lebesgue"}).code, 1);
    EXPECT_EQ(cli::resolve_measure("lebesgue"), genhilbert::Measure::lebesgue());
    EXPECT_EQ(cli::resolve_measure("atom:0.25:2"), genhilbert::Measure::atom(0.25, 2.0));
}

TEST(CliParse, StrictNumbers) {
    EXPECT_EQ(cli::parse_double("1e-3", "x"), 1e-3);
    EXPECT_THROW(cli::parse_double("1,5", "x"), std::exception);
    EXPECT_THROW(cli::parse_double("nan", "x"), std::exception);
    EXPECT_THROW(cli::parse_double("", "x"), std::exception);
    const auto v = cli::parse_sequence_csv("1\n2.5\n-3\n");
    EXPECT_EQ(v, (std::vector<double>{1.0, 2.5, -3.0}));
    EXPECT_THROW(cli::parse_sequence_csv("1\n\n2\n"), std::exception);
}

TEST(CliReport, ExamplesAndDeterminism) {
    const std::vector<std::string> args{"report", "--measure", "atom:0.5:1", "--beta", "0.5", "--p", "3", "--format", "csv",
                                        "--truncations", "50", "--sections", "4,8"};
    const Outcome a = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(first_line(a.out), "kind,epsilon,truncation,n,value");
    EXPECT_NE(a.out.find("constant,,,,2.8284271247461898"), std::string::npos) << a.out;
    EXPECT_NE(a.out.find("verdict,,,,bounded_with_norm"), std::string::npos);
    EXPECT_EQ(run(args).out, a.out);

    const Outcome d = run({"report", "--measure", "lebesgue", "--beta", "1", "--format", "csv", "--sections", "4"});
    // The report itself succeeded; exit 2 belongs to the constant command.
    EXPECT_EQ(d.code, 0) << d.err;
    EXPECT_NE(d.out.find("constant,,,,divergent_both"), std::string::npos) << d.out;
    EXPECT_NE(d.out.find("unbounded_detected"), std::string::npos) << d.out;
}

TEST(CliVerify, ExitCodesAndFilter) {
    const Outcome all = run({"verify", "--format", "csv"});
    EXPECT_EQ(all.code, 0) << all.out;
    const auto l = lines(all.out);
    EXPECT_EQ(l.at(0), "name,passed,worst_residual,samples");
    EXPECT_EQ(l.size(), 9u);

    const Outcome one = run({"verify", "--only", "lemma23", "--format", "csv"});
    EXPECT_EQ(one.code, 0);
    ASSERT_EQ(lines(one.out).size(), 2u);
    EXPECT_EQ(lines(one.out)[1].substr(0, 13), "lemma23,true,");

    const Outcome tight = run({"verify", "--only", "lemma21", "--tol", "1e-18", "--format", "csv"});
    EXPECT_EQ(tight.code, 3);
    EXPECT_EQ(lines(tight.out).at(1).substr(0, 14), "lemma21,false,");

    EXPECT_EQ(run({"verify", "--only", "lemma99"}).code, 1);
}

TEST(CliSweep, HeaderOrderAndDeterminism) {
    const std::vector<std::string> args{"sweep", "--measure", "lebesgue", "--sections", "2,4,8,16", "--epsilons",
                                        "0.2,0.1", "--truncation", "100"};
    const Outcome a = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    const auto l = lines(a.out);
    ASSERT_EQ(l.size(), 7u);
    EXPECT_EQ(l[0], "kind,param,value");
    double prev = 0.0;
    for (std::size_t i = 1; i <= 4; ++i) {
        EXPECT_EQ(l[i].rfind("section,", 0), 0u);
        const double v = std::stod(l[i].substr(l[i].rfind(',') + 1));
        EXPECT_GE(v, prev);
        EXPECT_LT(v, 3.1415926535897931);
        prev = v;
    }
    const double r1 = std::stod(l[5].substr(l[5].rfind(',') + 1));
    const double r2 = std::stod(l[6].substr(l[6].rfind(',') + 1));
    EXPECT_LT(r1, r2);
    EXPECT_LT(r2, 3.1415926535897931);
    EXPECT_EQ(run(args).out, a.out);
}

TEST(CliOutput, FileAndEnvironmentDirectory) {
    const auto dir = std::filesystem::temp_directory_path() / "genhilbert_cli_out";
    std::filesystem::create_directories(dir);
    ::setenv("GENHILBERT_OUTPUT_DIR", dir.c_str(), 1);
    const Outcome a = run({"kernel", "--m", "1", "--n", "1", "--format", "csv", "--output", "k.csv"});
    ::unsetenv("GENHILBERT_OUTPUT_DIR");
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_TRUE(a.out.empty());
    std::ifstream in(dir / "k.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "m,n,kernel,m_form,n_form\n1,1,2,2,2\n");
    std::filesystem::remove_all(dir);
}

TEST(CliHelp, UnknownFlagIsInputError) {
    EXPECT_EQ(run({"constant", "--bogus"}).code, 1);
    EXPECT_EQ(run({"nosuchcommand"}).code, 1);
    const Outcome h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("sweep"), std::string::npos);
}
