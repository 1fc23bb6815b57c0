#include "qdesign/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

using namespace qdesign;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Timing is the only nondeterministic field.
std::string strip_timing(const std::string& text) {
  if (text.empty() || text.front() != '{') return text;
  auto doc = nlohmann::ordered_json::parse(text);
  doc.erase("timing_ms");
  return doc.dump(2) + "\n";
}

std::string data(const std::string& name) { return std::string(QDESIGN_TEST_DATA) + "/" + name; }

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  int exit_code;
};

const std::vector<GoldenCase> golden_cases{
    {"order_su2_n9_k4", {"order", "--symmetry", "su2", "--n", "9", "--k", "4"}, 0},
    {"order_z2_n4_k2", {"order", "--symmetry", "z2", "--n", "4", "--k", "2"}, 0},
    {"order_u1_n7_k5_json", {"order", "--symmetry", "u1", "--n", "7", "--k", "5", "--method", "both", "--json"}, 0},
    {"order_su2_n3_k2_json", {"order", "--symmetry", "su2", "--n", "3", "--k", "2", "--json"}, 0},
    {"order_su2_n6_k2_theorem_json", {"order", "--symmetry", "su2", "--n", "6", "--k", "2", "--method", "theorem", "--json"}, 0},
    {"order_u1_n6_k5_theorem", {"order", "--symmetry", "u1", "--n", "6", "--k", "5", "--method", "theorem"}, 0},
    {"order_custom_json", {"order", "--custom", data("custom_three_labels.json"), "--json"}, 0},
    {"table_su2_k2", {"table", "--symmetry", "su2", "--k", "2", "--n-from", "3", "--n-to", "10"}, 0},
    {"table_u1_k3_csv", {"table", "--symmetry", "u1", "--k", "3", "--n-from", "4", "--n-to", "8", "--csv"}, 0},
    {"table_z2_k2", {"table", "--symmetry", "z2", "--k", "2", "--n-from", "3", "--n-to", "5"}, 0},
    {"table_su2_k4_json", {"table", "--symmetry", "su2", "--k", "4", "--n-from", "5", "--n-to", "9", "--json"}, 0},
    {"table_u1_k5_exact_csv", {"table", "--symmetry", "u1", "--k", "5", "--n-from", "6", "--n-to", "9", "--method", "exact", "--csv"}, 0},
    {"collision_u1_n4_k2_t6_json", {"oracle", "collision", "--symmetry", "u1", "--n", "4", "--k", "2", "--t", "6", "--json"}, 0},
    {"collision_z2_n3_k2_t3", {"oracle", "collision", "--symmetry", "z2", "--n", "3", "--k", "2", "--t", "3"}, 0},
    {"moment_gamma134_t2_json", {"oracle", "moment", "--fixture", "z2-n2-gamma134", "--t", "2", "--json"}, 0},
    {"moment_gamma134_t1", {"oracle", "moment", "--fixture", "z2-n2-gamma134", "--t", "1"}, 0},
    {"moment_z2_n3_k2_t2_json", {"oracle", "moment", "--symmetry", "z2", "--n", "3", "--k", "2", "--t", "2", "--json"}, 0},
    {"order_budget_json", {"order", "--symmetry", "u1", "--n", "12", "--k", "4", "--node-budget", "3", "--json"}, 3},
};

class Golden : public ::testing::TestWithParam<GoldenCase> {};

}  // namespace

TEST_P(Golden, MatchesFile) {
  const GoldenCase& c = GetParam();
  const CliRun r = run(c.args);
  EXPECT_EQ(r.code, c.exit_code) << r.err;
  const std::string path = std::string(QDESIGN_GOLDEN_DIR) + "/" + c.name + ".out";
  const std::string actual = strip_timing(r.out);
  if (std::getenv("QDESIGN_UPDATE_GOLDEN")) {
    std::ofstream(path) << actual;
    GTEST_SKIP() << "rewrote " << path;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing golden file " << path;
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(actual, expected.str());
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(golden_cases),
                         [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; });

TEST(Cli, KnownValuesInOutput) {
  EXPECT_NE(run({"order", "--symmetry", "su2", "--n", "9", "--k", "4"}).out.find("t_max:       89"), std::string::npos);
  EXPECT_NE(run({"order", "--symmetry", "z2", "--n", "4", "--k", "2"}).out.find("t_max:       7"), std::string::npos);
  const auto doc = nlohmann::json::parse(run({"order", "--symmetry", "u1", "--n", "7", "--k", "5", "--json"}).out);
  EXPECT_EQ(doc["order"]["finite"], 63);
  EXPECT_EQ(doc["covered"], false);
  EXPECT_EQ(doc["agreement"], "n/a");
}

TEST(Cli, TableColumns) {
  const CliRun r = run({"table", "--symmetry", "su2", "--k", "2", "--n-from", "3", "--n-to", "10", "--csv"});
  EXPECT_EQ(r.out,
            "n,exact,theorem,match\n3,inf,inf,yes\n4,2,2,yes\n5,7,7,yes\n6,9,9,yes\n7,19,19,yes\n8,19,19,yes\n"
            "9,47,47,yes\n10,62,62,yes\n");
}

TEST(Cli, DeterministicStructuredOutput) {
  const std::vector<std::string> args{"order", "--symmetry", "su2", "--n", "12", "--k", "4", "--json", "--jobs", "2"};
  EXPECT_EQ(strip_timing(run(args).out), strip_timing(run(args).out));
  std::vector<std::string> serial = args;
  serial.back() = "1";
  EXPECT_EQ(strip_timing(run(args).out), strip_timing(run(serial).out));
}

TEST(Cli, ExpectContract) {
  EXPECT_EQ(run({"order", "--symmetry", "su2", "--n", "9", "--k", "4", "--expect", "finite:89"}).code, 0);
  EXPECT_EQ(run({"order", "--symmetry", "su2", "--n", "9", "--k", "4", "--expect", "finite:90"}).code, 1);
  EXPECT_EQ(run({"order", "--symmetry", "su2", "--n", "3", "--k", "2", "--expect", "infinite"}).code, 0);
  EXPECT_EQ(run({"order", "--symmetry", "z2", "--n", "4", "--k", "2", "--t", "7", "--expect", "design"}).code, 0);
  EXPECT_EQ(run({"order", "--symmetry", "z2", "--n", "4", "--k", "2", "--t", "8", "--expect", "design"}).code, 1);
  EXPECT_EQ(run({"order", "--symmetry", "z2", "--n", "4", "--k", "2", "--expect", "design"}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "z2", "--n", "4", "--k", "2", "--expect", "maybe"}).code, 2);
  EXPECT_EQ(run({"oracle", "collision", "--symmetry", "u1", "--n", "4", "--k", "2", "--t", "5", "--expect", "design"}).code, 0);
  EXPECT_EQ(run({"oracle", "collision", "--symmetry", "u1", "--n", "4", "--k", "2", "--t", "6", "--expect", "design"}).code, 1);
  EXPECT_EQ(run({"oracle", "collision", "--symmetry", "u1", "--n", "4", "--k", "2", "--t", "6", "--expect", "finite:5"}).code, 2);
  EXPECT_EQ(run({"oracle", "moment", "--fixture", "z2-n2-gamma134", "--t", "2", "--expect", "no-design"}).code, 0);
  EXPECT_EQ(run({"oracle", "moment", "--fixture", "z2-n2-gamma134", "--t", "1", "--expect", "design"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "so3", "--n", "4", "--k", "2"}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "u1", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "u1", "--n", "4", "--k", "4"}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "u1", "--n", "4", "--k", "2", "--method", "fast"}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "u1", "--custom", data("custom_three_labels.json")}).code, 2);
  EXPECT_EQ(run({"order", "--custom", data("custom_bad_row.json")}).code, 2);
  EXPECT_EQ(run({"order", "--custom", data("custom_three_labels.json"), "--method", "theorem"}).code, 2);
  EXPECT_EQ(run({"table", "--symmetry", "u1", "--k", "3", "--n-from", "3", "--n-to", "5"}).code, 2);
  EXPECT_EQ(run({"table", "--symmetry", "u1", "--k", "3", "--n-from", "6", "--n-to", "5"}).code, 2);
  EXPECT_EQ(run({"table", "--symmetry", "u1", "--k", "3", "--n-from", "4", "--n-to", "5", "--csv", "--json"}).code, 2);
  EXPECT_EQ(run({"oracle"}).code, 2);
  EXPECT_EQ(run({"oracle", "moment", "--fixture", "nope", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"oracle", "moment", "--fixture", "z2-n2-gamma134"}).code, 2);
  EXPECT_EQ(run({"order", "--symmetry", "u1", "--n", "4", "--k", "2", "--jobs", "0"}).code, 2);
}

TEST(Cli, ResourceLimits) {
  const CliRun r = run({"order", "--symmetry", "u1", "--n", "12", "--k", "4", "--node-budget", "3"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("within [0, 197]"), std::string::npos);
  EXPECT_EQ(run({"oracle", "moment", "--symmetry", "z2", "--n", "4", "--k", "2", "--t", "2"}).code, 3);
  EXPECT_EQ(run({"oracle", "collision", "--symmetry", "su2", "--n", "9", "--k", "4", "--t", "90", "--node-budget", "10"}).code, 3);
}

TEST(Cli, NodeBudgetFromEnvironment) {
  setenv("QDESIGN_NODE_BUDGET", "3", 1);
  const int code = run({"order", "--symmetry", "u1", "--n", "12", "--k", "4"}).code;
  unsetenv("QDESIGN_NODE_BUDGET");
  EXPECT_EQ(code, 3);
}

TEST(Cli, CustomWarnsOnStderr) {
  const CliRun r = run({"order", "--custom", data("custom_three_labels.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("semi-universal"), std::string::npos);
  EXPECT_EQ(r.out.find("warning"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order"), std::string::npos);
}
