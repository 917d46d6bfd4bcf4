#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "threebody_cli/cli.hpp"

using namespace threebody;
using namespace threebody::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "threebody_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Parse, SimulateDefaultsAndFlags) {
    const auto s = parse_args({"simulate", "--alpha", "-1", "--t-end", "3", "--rel-tol", "1e-10"});
    EXPECT_EQ(s.command, Command::Simulate);
    EXPECT_EQ(s.alpha, -1);
    EXPECT_EQ(s.t_end, 3);
    EXPECT_EQ(s.integrator.rel_tol, 1e-10);
    EXPECT_FALSE(s.theta);
    EXPECT_TRUE(s.equal_masses());
}

TEST(Parse, Masses) {
    const auto s = parse_args({"jets", "--masses", "1,2,3.5", "--theta", "0.2", "--order", "8"});
    EXPECT_EQ(s.masses, (std::array<double, 3>{1, 2, 3.5}));
    EXPECT_EQ(s.order, 8);
    EXPECT_THROW(parse_args({"jets", "--masses", "1,2"}), UsageError);
    EXPECT_THROW(parse_args({"jets", "--masses", "1,1,1", "--equal-masses"}), UsageError);
}

TEST(Parse, LogLawAtAlphaZero) {
    EXPECT_TRUE(parse_args({"simulate", "--alpha", "0"}).law().is_log());
    EXPECT_FALSE(parse_args({"simulate", "--alpha", "-1"}).law().is_log());
}

TEST(Parse, CommandDefaults) {
    EXPECT_EQ(parse_args({"choreo-scan"}).alpha, -2);
    EXPECT_EQ(parse_args({"closed-form", "--alpha", "2"}).t_end, 2);
}

TEST(Parse, ConfigPrecedence) {
    const auto cfg = scratch("cfg.json");
    std::ofstream(cfg) << R"({"alpha": 3, "t_end": 4, "rel_tol": 1e-9})";
    const auto s = parse_args({"simulate", "--config", cfg.string(), "--t-end", "5"});
    EXPECT_EQ(s.alpha, 3);
    EXPECT_EQ(s.t_end, 5);
    EXPECT_EQ(s.integrator.rel_tol, 1e-9);
    const auto c = parse_args({"choreo-scan", "--config", cfg.string()});
    EXPECT_EQ(c.alpha, 3);

    std::ofstream(cfg) << R"({"alpah": 3})";
    EXPECT_THROW(parse_args({"simulate", "--config", cfg.string()}), UsageError);
    std::ofstream(cfg) << "{not json";
    EXPECT_THROW(parse_args({"simulate", "--config", cfg.string()}), UsageError);
}

TEST(ExitCodes, UsageAndHelp) {
    EXPECT_EQ(invoke({}).code, exit_code::usage);
    EXPECT_EQ(invoke({"frobnicate"}).code, exit_code::usage);
    EXPECT_EQ(invoke({"simulate", "--alpha", "abc"}).code, exit_code::usage);
    EXPECT_EQ(invoke({"simulate", "--help"}).code, exit_code::ok);
    EXPECT_EQ(invoke({"--help"}).code, exit_code::ok);
}

TEST(ExitCodes, Validation) {
    EXPECT_EQ(invoke({"simulate", "--masses", "1,-1,1", "--theta", "0.1"}).code, exit_code::validation);
    EXPECT_EQ(invoke({"closed-form", "--alpha", "3"}).code, exit_code::validation);
    EXPECT_EQ(invoke({"simulate", "--rel-tol", "0"}).code, exit_code::validation);
    // no admissible angle at alpha = 5
    EXPECT_EQ(invoke({"simulate", "--alpha", "5"}).code, exit_code::validation);
}

TEST(ExitCodes, NumericFailure) {
    const auto r = invoke({"simulate", "--alpha", "-2", "--theta", "0.7", "--t-end", "1"});
    EXPECT_EQ(r.code, exit_code::numeric);
}

TEST(ExitCodes, VerificationFailure) {
    const auto r = invoke({"closed-form", "--alpha", "2", "--theta", "0.3", "--compare", "--rel-tol", "1e-3",
                           "--abs-tol", "1e-3"});
    EXPECT_EQ(r.code, exit_code::verification_failed);
    EXPECT_EQ(invoke({"closed-form", "--alpha", "4", "--compare"}).code, exit_code::ok);
}

TEST(Commands, ThetaReportsNone) {
    const auto r = invoke({"theta", "--alpha", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"none\""), std::string::npos);
    const auto all = invoke({"theta", "--alpha", "2"});
    EXPECT_NE(all.out.find("\"all\""), std::string::npos);
}

TEST(Commands, JetsJson) {
    const auto r = invoke({"jets", "--alpha", "-1", "--order", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"values\""), std::string::npos);
    EXPECT_NE(r.out.find("\"zero_flags\""), std::string::npos);
    EXPECT_NE(r.out.find("35.69010416666666"), std::string::npos);
}

TEST(Commands, AppendixVerify) {
    const auto r = invoke({"appendix-verify"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"verdict\""), std::string::npos);
    EXPECT_EQ(r.out.find("\"seconds\""), std::string::npos);
    EXPECT_NE(invoke({"appendix-verify", "--timing"}).out.find("\"seconds\""), std::string::npos);
}

TEST(Commands, RepulsiveCheck) {
    const auto r = invoke({"repulsive-check", "--alpha", "-1", "--samples", "20"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Output, SimulateIsByteIdenticalAcrossRuns) {
    const auto a = scratch("a.csv");
    const auto b = scratch("b.csv");
    const auto ra = invoke({"simulate", "--alpha", "-1", "--t-end", "2", "--out", a.string()});
    const auto rb = invoke({"simulate", "--alpha", "-1", "--t-end", "2", "--out", b.string()});
    ASSERT_EQ(ra.code, 0) << ra.err;
    ASSERT_EQ(rb.code, 0);
    const auto ca = slurp(a);
    EXPECT_EQ(ca, slurp(b));
    EXPECT_EQ(ca.rfind("t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,", 0), 0u);
    EXPECT_EQ(ra.out, rb.out);
    EXPECT_NE(ra.out.find("\"termination\""), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(a.string() + ".tmp"));
}

TEST(Output, StdoutWithoutOutFlag) {
    const auto r = invoke({"closed-form", "--alpha", "4", "--t-end", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("t,", 0), 0u);
}

TEST(Output, ScanCsv) {
    const auto p = scratch("scan.csv");
    const auto r = invoke({"choreo-scan", "--theta-min", "1.1", "--theta-max", "1.2", "--steps", "5", "--out",
                           p.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = slurp(p);
    EXPECT_EQ(csv.rfind("theta,period,residual\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}
