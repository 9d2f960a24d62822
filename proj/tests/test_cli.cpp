#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "common.hpp"
#include "taufold/cli.hpp"

using namespace taufold;
using taufold::testutil::data_path;

namespace {

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

RunConfig config(const std::string& alg, const std::string& command) {
  RunConfig c;
  c.algebra_path = data_path(alg);
  c.command = command;
  return c;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int shell(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, TableCommand) {
  CliRun r = run_cli(config("ex73", "table1"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 19u);
  EXPECT_EQ(ls.back(), "16 basic tau-rigid modules, 17 2-fold torsion classes");
  // The extra class has an empty left cell.
  EXPECT_EQ(ls[17].find_first_not_of(' '), ls[0].find("2-fold"));
  EXPECT_NE(ls[17].find("add(P2+S3)"), std::string::npos);
  EXPECT_NE(r.out.find("P1+P2                   add(P1+P2+S2)"), std::string::npos);
}

TEST(Cli, MainBijection) {
  RunConfig c = config("ex73", "bijection");
  c.which = "main";
  CliRun r = run_cli(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).at(0), "main: 16 ↔ 16, round-trips OK, excluded: add(P2+S3)");
  c.which = "air";
  EXPECT_EQ(run_cli(c).code, 0);
}

TEST(Cli, Star) {
  RunConfig c = config("ex73", "star");
  c.subcat = "P2+S3";
  CliRun r = run_cli(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("condition (*): false"), std::string::npos);
  EXPECT_NE(r.out.find("witness: (S3, P3)"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli(config("kronecker", "indecs")).code, exit_code::parse);
  EXPECT_EQ(run_cli(config("missing", "indecs")).code, exit_code::parse);
  RunConfig c = config("ex73", "star");
  c.subcat = "P9";
  CliRun r = run_cli(c);
  EXPECT_EQ(r.code, exit_code::parse);
  EXPECT_NE(r.err.find("P9"), std::string::npos);
  c = config("ex73", "bijection");
  c.which = "hereditary";
  EXPECT_EQ(run_cli(c).code, exit_code::parse);
  c = config("ex73", "pair");
  c.u = "P2+S3";
  EXPECT_EQ(run_cli(c).code, exit_code::parse);
  c = config("ex73", "tors");
  c.mu = 0;
  EXPECT_EQ(run_cli(c).code, exit_code::parse);
  c = config("ex73", "tors");
  c.fold = 2;
  c.subset_budget = 3;
  EXPECT_EQ(run_cli(c).code, exit_code::guard);
  c = config("ex73", "no-such-command");
  EXPECT_EQ(run_cli(c).code, exit_code::parse);
}

TEST(Cli, VerificationCommandsSucceedOnTheCorpus) {
  for (const char* name : {"ex73", "a2", "a3", "nak_3"}) {
    RunConfig c = config(name, "bijection");
    for (const char* w : {"air", "main"}) {
      c.which = w;
      EXPECT_EQ(run_cli(c).code, exit_code::ok) << name << " " << w;
    }
  }
  RunConfig c = config("ex73", "pair");
  for (const char* u : {"0", "P2+P3", "P1+P2+P3", "S2+P3"}) {
    c.u = u;
    EXPECT_EQ(run_cli(c).code, exit_code::ok) << u;
  }
}

TEST(Cli, JsonSchema) {
  RunConfig c = config("ex73", "tors");
  c.fold = 2;
  c.format = OutputFormat::Json;
  CliRun r = run_cli(c);
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "taufold.v1");
  EXPECT_EQ(j["command"], "tors");
  for (const char* k : {"config", "algebra", "labels", "result"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["config"]["fold"], 2);
  EXPECT_EQ(j["algebra"]["modulus"], 2);
  EXPECT_EQ(j["labels"].size(), 5u);
  EXPECT_EQ(j["result"]["count"], 17);
  ASSERT_EQ(j["result"]["classes"].size(), 17u);
  for (const auto& cls : j["result"]["classes"]) {
    std::uint64_t b = 0;
    for (int i : cls["indices"]) b |= std::uint64_t{1} << i;
    EXPECT_EQ(cls["bitset"].get<std::uint64_t>(), b);
  }
  for (const char* cmd : {"indecs", "tau-rigid", "stautilt", "table1"}) {
    RunConfig d = config("ex73", cmd);
    d.format = OutputFormat::Json;
    CliRun s = run_cli(d);
    ASSERT_EQ(s.code, 0) << cmd;
    EXPECT_EQ(nlohmann::json::parse(s.out)["command"], cmd);
  }
}

TEST(Cli, DeterministicOutput) {
  for (OutputFormat f : {OutputFormat::Text, OutputFormat::Json}) {
    RunConfig c = config("ex73", "bijection");
    c.format = f;
    const std::string first = run_cli(c).out;
    EXPECT_EQ(run_cli(c).out, first);
    setenv("TAUFOLD_THREADS", "4", 1);
    EXPECT_EQ(run_cli(c).out, first);
    unsetenv("TAUFOLD_THREADS");
  }
}

TEST(Cli, DotHasse) {
  RunConfig c = config("a2", "tors");
  c.format = OutputFormat::Dot;
  CliRun r = run_cli(c);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_NE(r.out.find("\"{0}\" -> \"add(P1)\";"), std::string::npos);
  // 5 nodes, 5 cover edges of the pentagon.
  int edges = 0;
  for (const auto& l : lines(r.out)) edges += l.find("->") != std::string::npos;
  EXPECT_EQ(edges, 5);
  c.command = "star";
  c.subcat = "P1";
  EXPECT_EQ(run_cli(c).code, exit_code::parse);
}

TEST(Cli, PointTwoFold) {
  RunConfig c = config("point", "tors");
  c.fold = 2;
  CliRun r = run_cli(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2 2-fold torsion classes"), std::string::npos) << r.out;
}

TEST(Cli, BinaryArgumentErrors) {
  const std::string bin = TAUFOLD_CLI;
  EXPECT_EQ(shell(bin + " " + data_path("ex73") + " table1"), 0);
  EXPECT_EQ(shell(bin + " " + data_path("ex73") + " --bogus table1"), 2);
  EXPECT_EQ(shell(bin + " " + data_path("ex73")), 2);
  EXPECT_EQ(shell(bin + " " + data_path("ex73") + " --format xml table1"), 2);
  EXPECT_EQ(shell(bin + " " + data_path("ex73") + " --max-subsets 3 tors --fold 2"), 3);
}
