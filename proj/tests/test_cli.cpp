// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pchaos/cli.hpp"
#include "pchaos/run_config.hpp"

using namespace pchaos;

namespace {

const char* const kValid = "mu = 1.0\nT = 5\nM = 4\nkernel = exp\nalpha = 0.5\nbeta = 1.0\nseed = 7";

std::string error_of(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "pchaos");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("pchaos_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string write(const std::string& name, const std::string& text) {
        std::ofstream(dir_ / name) << text;
        return (dir_ / name).string();
    }
    std::filesystem::path dir_;
};

}  // namespace

TEST(ParseConfig, ValidExample) {
    const RunConfig c = parse_config(kValid);
    EXPECT_EQ(c.mu, 1.0);
    EXPECT_EQ(c.T, 5.0);
    EXPECT_EQ(c.M, 4.0);
    EXPECT_EQ(c.kernel, "exp");
    EXPECT_EQ(c.alpha, 0.5);
    EXPECT_EQ(c.beta, 1.0);
    EXPECT_EQ(c.seed, 7u);
}

TEST(ParseConfig, CommentsAndBlankLines) {
    const RunConfig c = parse_config("# run\n\nmu = 1 # baseline\nT=2\n  M = 3\nkernel = zero\n");
    EXPECT_EQ(c.kernel, "zero");
    EXPECT_EQ(c.T, 2.0);
    EXPECT_EQ(c.M, 3.0);
}

TEST(ParseConfig, StabilityError) {
    const std::string e = error_of("mu = 1\nT = 5\nM = 4\nkernel = exp\nalpha = 1.5\nbeta = 1.0\n");
    EXPECT_NE(e.find("stability"), std::string::npos) << e;
    EXPECT_NE(e.find("1.5"), std::string::npos) << e;
}

TEST(ParseConfig, InvariantError) {
    const std::string e = error_of("mu = 0\nT = 5\nM = 4\nkernel = exp\nalpha = 0.5\nbeta = 1.0\n");
    EXPECT_NE(e.find("invariant"), std::string::npos) << e;
    EXPECT_NE(e.find("mu"), std::string::npos) << e;
}

TEST(ParseConfig, MissingKeyNamed) {
    const std::string e = error_of("mu = 1\nT = 5\nkernel = exp\nalpha = 0.5\nbeta = 1.0\n");
    EXPECT_NE(e.find("'M'"), std::string::npos) << e;
    EXPECT_NE(error_of("mu = 1\nT = 5\nM = 4\nkernel = exp\nalpha = 0.5\n").find("'beta'"), std::string::npos);
}

TEST(ParseConfig, MalformedNumberHasLine) {
    const std::string e = error_of("mu = 1\nT = 5\nM = four\nkernel = exp\nalpha = 0.5\nbeta = 1.0\n");
    EXPECT_NE(e.find("line 3"), std::string::npos) << e;
}

TEST(ParseConfig, UnknownAndDuplicateKeys) {
    EXPECT_NE(error_of(std::string(kValid) + "\ncolour = red").find("unknown key 'colour'"), std::string::npos);
    EXPECT_NE(error_of(std::string(kValid) + "\nmu = 2").find("duplicate key 'mu'"), std::string::npos);
    EXPECT_NE(error_of("mu 1").find("line 1"), std::string::npos);
}

TEST(ParseConfig, RoundTrip) {
    RunConfig c = parse_config(kValid);
    EXPECT_EQ(parse_config(serialize_config(c)), c);
    c.mu = 0.37;
    c.T = 2.123456789;
    c.n_paths = 77;
    c.j_max = 5;
    c.mode = "imbedding";
    c.points = "1:0.5;2:1.1";
    EXPECT_EQ(parse_config(serialize_config(c)), c);
    EXPECT_EQ(parse_config(serialize_config(default_config())), default_config());
}

TEST(Cli, UnknownSubcommandIsUsageError) {
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"expect", "--bogus"}).code, kExitUsage);
}

TEST(Cli, Help) {
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("selfcheck"), std::string::npos);
}

TEST(Cli, ExpectDefaultConfig) {
    const CliRun r = run({"expect"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("statistic,mean,se,n,seed\n", 0), 0u);
    EXPECT_NE(r.out.find("analytic_E_H_T,8.1641"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("H_T_mean,8."), std::string::npos) << r.out;
}

TEST(Cli, CoeffCsv) {
    const CliRun r = run({"coeff", "--points", "2:1.1,1:0.5", "--config", ""});
    // An empty --config path does not exist.
    EXPECT_EQ(r.code, kExitUsage);
    const CliRun ok = run({"coeff", "--points", "2:1.1,1:0.5"});
    EXPECT_EQ(ok.code, kExitOk) << ok.err;
    EXPECT_EQ(ok.out, "k,t_1,theta_1,t_2,theta_2,c_k\n2,2,1.1000000000000001,1,0.5,1\n");
    EXPECT_EQ(run({"coeff"}).code, kExitUsage);
    EXPECT_EQ(run({"coeff", "--points", "1;0.5"}).code, kExitUsage);
    EXPECT_EQ(run({"coeff", "--points", "9:0.5"}).code, kExitUsage);
}

TEST_F(CliFiles, ReconstructTwoAtomCsv) {
    const std::string input = write("two.csv", "t,theta\n1,0.5\n2,1.1\n");
    const std::string cfg = write("run.cfg", "mu = 1\nT = 3\nM = 2\nkernel = exp\nalpha = 0.5\nbeta = 1\n");
    const CliRun r = run({"reconstruct", "--config", cfg, "--input", input, "--out", (dir_ / "out").string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "k,sum_c_k\n1,1\n2,1\n\ntotal,h_T,exact_match\n2,2,true\n");
    EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / "reconstruction.csv"));
}

TEST_F(CliFiles, ReconstructAudit) {
    const std::string cfg = write("run.cfg", "mu = 1\nT = 3\nM = 2\nkernel = exp\nalpha = 0.5\nbeta = 1\n");
    const CliRun r = run({"reconstruct", "--config", cfg, "--paths", "200"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("exact_fraction,1,,"), std::string::npos) << r.out;
}

TEST_F(CliFiles, ConfigErrorsExitTwo) {
    const std::string bad = write("bad.cfg", "mu = 1\nT = 5\nM = 4\nkernel = exp\nalpha = 1.5\nbeta = 1\n");
    const CliRun r = run({"simulate", "--config", bad});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("stability"), std::string::npos) << r.err;
    const std::string dup = write("dup.csv", "t,theta\n1,0.5\n1,0.7\n");
    EXPECT_EQ(run({"reconstruct", "--input", dup}).code, kExitUsage);
}

TEST_F(CliFiles, SimulateWritesArtifacts) {
    const CliRun r = run({"simulate", "--paths", "20", "--seed", "3", "--out", dir_.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    for (const char* f : {"results.csv", "paths.csv", "run_log.jsonl"}) {
        EXPECT_TRUE(std::filesystem::exists(dir_ / f)) << f;
    }
    EXPECT_EQ(run({"simulate", "--paths", "20", "--seed", "3"}).out, r.out);
}

TEST_F(CliFiles, BranchingCsv) {
    const CliRun r = run({"branching", "--paths", "500", "--out", dir_.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("residual_mean,residual_se,frac_jumps_ge2\n", 0), 0u);
    std::ifstream paths(dir_ / "branching_paths.csv");
    std::string header;
    std::getline(paths, header);
    EXPECT_EQ(header, "path_id,t,jump_size");
}

TEST(Cli, CharacterizeAndIpp) {
    const CliRun c = run({"characterize", "--paths", "4000"});
    EXPECT_EQ(c.code, kExitOk) << c.err << c.out;
    EXPECT_NE(c.out.find("truncation_budget"), std::string::npos);
    const CliRun i = run({"ipp", "--paths", "4000"});
    EXPECT_EQ(i.code, kExitOk) << i.err << i.out;
    EXPECT_NE(i.out.find("ipp_lhs"), std::string::npos);
}

TEST(Cli, SelfcheckSmallScale) {
    const CliRun r = run({"selfcheck", "--scale", "0.05"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_NE(r.out.find("10/10 criteria passed"), std::string::npos) << r.out;
    EXPECT_EQ(run({"selfcheck", "--scale", "0"}).code, kExitUsage);
}
