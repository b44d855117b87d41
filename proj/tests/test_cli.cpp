#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "runner.hpp"

using namespace qjackson;
using namespace qjackson::cli;

namespace {

std::optional<RunConfig> parse(std::vector<std::string> args) {
    args.insert(args.begin(), "qjackson");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_config(static_cast<int>(argv.size()), argv.data());
}

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "qjackson");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = testing::TempDir() + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST(ParseConfig, Defaults) {
    const auto c = parse({});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->q, 0.5);
    EXPECT_EQ(c->seed, 0u);
    EXPECT_EQ(c->trials, 10);
    EXPECT_EQ(c->workers, 1);
    EXPECT_EQ(c->format, Format::Text);
    EXPECT_FALSE(c->cutoff);
}

TEST(ParseConfig, ListsAndTolerances) {
    const auto c = parse({"--suites", "mg,gus", "--n", "1,3", "--tol", "1e-7", "--tol-recurrence", "1e-10"});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->suites, (std::vector<std::string>{"mg", "gus"}));
    EXPECT_EQ(c->n_values, (std::vector<int>{1, 3}));
    EXPECT_EQ(c->tols.lattice, 1e-7);
    EXPECT_EQ(c->tols.lattice_high, 1e-7);
    EXPECT_EQ(c->tols.recurrence, 1e-10);
}

TEST(ParseConfig, FlagsOverrideFile) {
    const auto path = temp_file("qj.cfg", "suites=da\nseed=11\ntrials=3\nq=0.3\n");
    const auto c = parse({"--config", path, "--trials", "4"});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->suites, (std::vector<std::string>{"da"}));
    EXPECT_EQ(c->seed, 11u);
    EXPECT_EQ(c->trials, 4);
    EXPECT_EQ(c->q, 0.3);
}

TEST(ParseConfig, RejectsBadInput) {
    EXPECT_THROW(parse({"--bogus"}), ConfigError);
    EXPECT_THROW(parse({"--q", "1.5"}), ConfigError);
    EXPECT_THROW(parse({"--n", "0"}), ConfigError);
    EXPECT_THROW(parse({"--suites", "xyz"}), ConfigError);
    EXPECT_THROW(parse({"--format", "xml"}), ConfigError);
    EXPECT_THROW(parse({"--trials", "0"}), ConfigError);
    EXPECT_THROW(parse({"--config", temp_file("bad.cfg", "colour=blue\n")}), ConfigError);
}

TEST(Plan, DefaultDimensionsFollowEachCheck) {
    RunConfig c;
    c.suites = {"gus"};
    c.trials = 1;
    for (const auto& p : plan(c)) EXPECT_TRUE(p.check_id.ends_with(".n1") || p.check_id.ends_with(".n2")) << p.check_id;
    c.suites = {"mg"};
    c.n_values = {3};
    const auto mg = plan(c);
    EXPECT_FALSE(mg.empty());
    for (const auto& p : mg) EXPECT_TRUE(p.check_id.ends_with(".n3"));
}

TEST(Plan, CanonicalOrder) {
    RunConfig c;
    c.suites = {"all"};
    c.trials = 3;
    const auto p = plan(c);
    for (std::size_t k = 1; k < p.size(); ++k) {
        const bool ordered = p[k - 1].check_id < p[k].check_id ||
                             (p[k - 1].check_id == p[k].check_id && p[k - 1].trial < p[k].trial);
        EXPECT_TRUE(ordered) << p[k].check_id;
    }
}

TEST(ExitCode, Mapping) {
    CheckReport pass, fail, nc;
    pass.status = CheckStatus::Pass;
    fail.status = CheckStatus::Fail;
    nc.status = CheckStatus::NotConverged;
    EXPECT_EQ(exit_code({pass, pass}), kPass);
    EXPECT_EQ(exit_code({pass, nc}), kNotConverged);
    EXPECT_EQ(exit_code({nc, fail}), kFail);
}

TEST(Run, ExitCodes) {
    const std::string out = testing::TempDir() + "core.json";
    EXPECT_EQ(run_args({"--suites", "core", "--trials", "2", "--format", "json", "--report", out}), kPass);
    EXPECT_EQ(run_args({"--suites", "mg", "--n", "2", "--trials", "1", "--cutoff", "2", "--report", out}),
              kNotConverged);
    EXPECT_EQ(run_args({"--nope"}), kConfig);
    EXPECT_EQ(run_args({"--suites", "gus", "--n", "3"}), kConfig);
    EXPECT_EQ(run_args({"--suites", "core", "--tol-algebra", "1e-30", "--trials", "3", "--report", out}), kFail);
}

TEST(Run, WorkersDoNotChangeReports) {
    RunConfig c;
    c.suites = {"mg", "gus"};
    c.n_values = {1, 2};
    c.trials = 2;
    const auto checks = plan(c);
    const auto one = reports_to_json(run_checks(c, checks), false);
    c.workers = 4;
    EXPECT_EQ(reports_to_json(run_checks(c, checks), false), one);
}
