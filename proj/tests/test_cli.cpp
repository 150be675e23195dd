#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"

using namespace fosched;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "fosched");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fosched-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenThenRun) {
    ASSERT_EQ(invoke({"gen", "--family", "nf-hard", "--n", "5", "--out", path("nf.json")}).code, 0);
    EXPECT_EQ(io::read_instance(path("nf.json")), gen_nf_hard(5));

    auto r = invoke({"run", "--algo", "all", "--input", path("nf.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["reports"].size(), 4u);
    EXPECT_EQ(doc["reports"][0]["algorithm"], "ff");
    EXPECT_EQ(doc["reports"][0]["schedule"]["machines"], 2);
    EXPECT_EQ(doc["reports"][0]["schedule"]["assignment"], nlohmann::json::parse("[1,2,1,2,1]"));
    EXPECT_EQ(doc["reports"][1]["schedule"]["machines"], 5);
    EXPECT_EQ(doc["reports"][3]["schedule"]["machines"], 2);

    r = invoke({"run", "--algo", "nf", "--input", path("nf.json"), "--trace", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "algorithm,machines,assignment,ms,error");
    EXPECT_NE(r.out.find("nf,5,1 2 3 4 5,"), std::string::npos);

    r = invoke({"run", "--algo", "ff", "--input", path("nf.json"), "--trace"});
    EXPECT_EQ(nlohmann::json::parse(r.out)["reports"][0]["trace"].size(), 5u);
}

TEST_F(CliTest, GenTightUsesK) {
    ASSERT_EQ(invoke({"gen", "--family", "tight-2", "--k", "3", "--out", path("t.json")}).code, 0);
    EXPECT_EQ(io::read_instance(path("t.json")), gen_tight2(3));
    ASSERT_EQ(invoke({"gen", "--family", "unit", "--n", "6", "--seed", "9", "--out", path("u.json")}).code, 0);
    EXPECT_EQ(io::read_instance(path("u.json")), gen_random({"unit", 6, 9}));
}

TEST_F(CliTest, InputErrorsExitOne) {
    EXPECT_EQ(invoke({"run", "--input", path("missing.json")}).code, cli::kInputError);
    io::write_file(path("bad.json"), R"({"jobs": [{"p": 3, "d": 2}]})");
    EXPECT_EQ(invoke({"run", "--input", path("bad.json")}).code, cli::kInputError);
    EXPECT_EQ(invoke({"gen", "--family", "nf-hard", "--n", "2", "--out", path("x.json")}).code, cli::kInputError);
    EXPECT_EQ(invoke({"gen", "--family", "bogus", "--n", "2", "--out", path("x.json")}).code, cli::kInputError);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kInputError);
    EXPECT_EQ(invoke({"hunt", "--budget", "1", "--n", "5", "--threshold", "abc"}).code, cli::kInputError);
}

TEST_F(CliTest, OracleCapFromEnvironment) {
    io::write_instance(path("big.json"), Instance(std::vector<Job>(22, Job{1, 50})));
    EXPECT_EQ(invoke({"run", "--algo", "opt", "--input", path("big.json")}).code, cli::kInputError);
    ::setenv("FOSCHED_ORACLE_CAP", "22", 1);
    const auto r = invoke({"run", "--algo", "opt", "--input", path("big.json")});
    ::unsetenv("FOSCHED_ORACLE_CAP");
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, BenchWritesReportAndChecksBounds) {
    io::write_file(path("sweep.json"), R"({"sweeps": [
        {"family": "nf-hard", "n_min": 3, "n_max": 8},
        {"family": "arbitrary", "count": 20, "n_min": 1, "n_max": 8, "seed": 3}]})");
    auto r = invoke({"bench", "--sweep", path("sweep.json"), "--out", path("report.csv"), "--assert-bounds",
                     "--jobs", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = io::read_file(path("report.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 27);

    r = invoke({"bench", "--sweep", path("sweep.json"), "--out", path("report.json")});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(records_from_json(io::read_file(path("report.json"))).size(), 26u);

    io::write_file(path("broken.json"), "{");
    EXPECT_EQ(invoke({"bench", "--sweep", path("broken.json"), "--out", path("r.csv")}).code, cli::kInputError);
}

TEST_F(CliTest, HuntFlagsPlantedRatio) {
    auto r = invoke({"hunt", "--budget", "5", "--n", "7", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["evaluated"], 5);

    r = invoke({"hunt", "--budget", "5", "--n", "7", "--plant-tight", "5", "--threshold", "11/6"});
    EXPECT_EQ(r.code, cli::kBoundViolation);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["best"]["id"], "plant:tight-2-5");
    EXPECT_EQ(doc["best"]["ff"], 11);
    EXPECT_EQ(doc["best"]["opt"], 6);

    EXPECT_EQ(invoke({"hunt", "--budget", "1", "--n", "40"}).code, cli::kInputError);
}
