#include "toroidal_lab/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  fs::path dir;
};

CliRun cli(const std::string& args, const std::string& tag) {
  CliRun r;
  r.dir = fs::temp_directory_path() / ("toroidal_lab_cli_" + tag);
  fs::remove_all(r.dir);
  fs::create_directories(r.dir);
  const std::string cmd = std::string(TLAB_CLI) + " " + args + " --out " + r.dir.string() + " > " +
                          (r.dir / "stdout.txt").string() + " 2> " + (r.dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

tlab::Json report(const CliRun& r) {
  std::ifstream in(r.dir / "report.json");
  std::stringstream s;
  s << in.rdbuf();
  return tlab::Json::parse(s.str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ClassifyRationalIsNotToroidal) {
  const CliRun r = cli("classify --set p=1/2 --set q=1/3 --N 100", "rational");
  ASSERT_EQ(r.code, 0);
  const auto j = report(r);
  EXPECT_EQ(j["schema"], "toroidal-lab/1");
  EXPECT_EQ(j["toroidal"]["verdict"], "not toroidal");
  EXPECT_TRUE(fs::exists(r.dir / "distances.csv"));
}

TEST(Cli, ClassifyGoldenAndSuperLiouville) {
  const CliRun g = cli("classify --set q=golden --N 2000", "golden");
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(report(g)["classification"]["verdict"], "theta-evidence");
  const CliRun s = cli("classify --set 'q=superliouville(3,10)' --N 100", "sl");
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(report(s)["classification"]["verdict"], "wild-witness");
}

TEST(Cli, ClassifyExitCodes) {
  EXPECT_EQ(cli("classify --set q=banana", "parse").code, 2);
  EXPECT_EQ(cli("classify --set 'q=enclosure(3/10,-20)' --N 1000", "prec").code, 3);
}

TEST(Cli, ReportsAreDeterministic) {
  const CliRun a = cli("classify --set 'q=sqrt(3)' --N 300 --seed 5", "det");
  ASSERT_EQ(a.code, 0);
  const std::string report1 = slurp(a.dir / "report.json"), dist1 = slurp(a.dir / "distances.csv");
  const CliRun b = cli("classify --set 'q=sqrt(3)' --N 300 --seed 5", "det");
  ASSERT_EQ(b.code, 0);
  EXPECT_FALSE(report1.empty());
  EXPECT_EQ(report1, slurp(b.dir / "report.json"));
  EXPECT_EQ(dist1, slurp(b.dir / "distances.csv"));
}

TEST(Cli, SolveExitCodes) {
  const CliRun ok = cli("solve --set recipe=zero", "solve_zero");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(cli("solve --set theta2=0", "solve_res").code, 4);
  const CliRun res = cli("solve --set theta2=1", "solve_res1");
  EXPECT_EQ(res.code, 4);
  EXPECT_TRUE(report(res).contains("resonant_obstruction"));
  EXPECT_EQ(cli("solve --set p=1/2", "solve_dom").code, 2);
  EXPECT_EQ(cli("solve --tol 1e-30", "solve_tol").code, 5);
}

TEST(Cli, VerifySelection) {
  const CliRun v = cli("verify --select none", "vacuous");
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(report(v)["vacuous"].get<bool>());
  const CliRun one = cli("verify --select 11", "one");
  EXPECT_EQ(one.code, 0);
  const CliRun tight = cli("verify --select 3 --tol 1e-18", "tight");
  EXPECT_EQ(tight.code, 1);
  EXPECT_FALSE(report(tight)["criteria"][0]["passed"].get<bool>());
}

TEST(Cli, Divisors) {
  const CliRun d = cli("divisors --box 2", "divisors");
  ASSERT_EQ(d.code, 0);
  EXPECT_TRUE(fs::exists(d.dir / "divisors.csv"));
}
