#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qhyper/cli.hpp"

namespace qhyper::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qhyper_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "qhyper");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int rc = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(QHYPER_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ConfigTest, CommandNames) {
  for (Command c : {Command::Fig1, Command::Fig2, Command::Fig3, Command::Verify, Command::Report}) {
    EXPECT_EQ(parse_command(command_name(c)), c);
  }
  EXPECT_FALSE(parse_command("fig4").has_value());
}

TEST(ConfigTest, FileParsing) {
  const fs::path dir = scratch("config");
  {
    std::ofstream f(dir / "run.cfg");
    f << "# comment\n\nq = 1/2\nn-max=4\n  k-extra = 3\ndepth=20\nseries-n=5\ndigits=6\nout=" << (dir / "o").string() << "\n";
  }
  RunConfig c;
  apply_config_file(c, dir / "run.cfg");
  EXPECT_EQ(c.q, "1/2");
  EXPECT_EQ(c.n_max, 4);
  EXPECT_EQ(c.k_extra, 3);
  EXPECT_EQ(c.depth, 20);
  EXPECT_EQ(c.series_n, 5);
  EXPECT_EQ(c.digits, 6);
  EXPECT_EQ(c.out_dir, dir / "o");
  EXPECT_NO_THROW(c.validate());

  {
    std::ofstream f(dir / "bad.cfg");
    f << "colour=blue\n";
  }
  EXPECT_THROW(apply_config_file(c, dir / "bad.cfg"), ConfigError);
  {
    std::ofstream f(dir / "bad2.cfg");
    f << "n-max=four\n";
  }
  EXPECT_THROW(apply_config_file(c, dir / "bad2.cfg"), ConfigError);
  EXPECT_THROW(apply_config_file(c, dir / "missing.cfg"), ConfigError);
}

TEST(ConfigTest, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.n_max_for_command(), 9u);
  c.command = Command::Fig1;
  EXPECT_EQ(c.n_max_for_command(), 19u);
  for (const char* bad : {"3/2", "1", "0", "-1/2", "x"}) {
    RunConfig b;
    b.q = bad;
    EXPECT_THROW(b.validate(), ConfigError) << bad;
  }
  RunConfig d;
  d.depth = 0;
  EXPECT_THROW(d.validate(), ConfigError);
  RunConfig g;
  g.digits = 0;
  EXPECT_THROW(g.validate(), ConfigError);
}

TEST(ConfigTest, ThreadsFromEnvironment) {
  unsetenv("QHYPER_THREADS");
  EXPECT_EQ(threads_from_env(), 1u);
  setenv("QHYPER_THREADS", "3", 1);
  EXPECT_EQ(threads_from_env(), 3u);
  setenv("QHYPER_THREADS", "0", 1);
  EXPECT_THROW(threads_from_env(), ConfigError);
  setenv("QHYPER_THREADS", "2x", 1);
  EXPECT_THROW(threads_from_env(), ConfigError);
  unsetenv("QHYPER_THREADS");
}

TEST(TableTest, Rendering) {
  Table t;
  t.header = {"n", "v", "w"};
  t.rows.push_back({Table::index(3), Table::number(Rational(1, 3)), Table::missing()});
  t.rows.push_back({Table::index(10), Table::number(Rational(-5, 2)), Table::number(Rational(0))});
  EXPECT_EQ(t.csv(4), "n,v,w\n3,0.3333,nan\n10,-2.5000,0.0000\n");
  EXPECT_EQ(t.exact(), "n,v,w\n3/1,1/3,nan\n10/1,-5/2,0/1\n");
}

TEST(CommandTest, FlagsOverrideConfig) {
  const fs::path dir = scratch("precedence");
  {
    std::ofstream f(dir / "run.cfg");
    f << "n-max=2\nk-extra=2\nout=" << (dir / "from_config").string() << "\n";
  }
  EXPECT_EQ(invoke({"fig2", "--config", (dir / "run.cfg").string(), "--n-max", "3"}), 0);
  const std::string csv = slurp(dir / "from_config" / "fig2.csv");
  ASSERT_FALSE(csv.empty());
  // n = 0..3, k = 0..K+2 with K = 3: 4 * 6 rows plus the header.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 25);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,k,ratio_abs,envelope,sign,abs_alpha,K");
}

TEST(CommandTest, OutputIsDeterministic) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(invoke({"fig1", "--n-max", "6", "--out", a.string()}), 0);
  setenv("QHYPER_THREADS", "4", 1);
  ASSERT_EQ(invoke({"fig1", "--n-max", "6", "--out", b.string()}), 0);
  unsetenv("QHYPER_THREADS");
  EXPECT_EQ(slurp(a / "fig1.csv"), slurp(b / "fig1.csv"));
  EXPECT_EQ(slurp(a / "fig1.exact"), slurp(b / "fig1.exact"));
  const std::string csv = slurp(a / "fig1.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,l1_lo,l1_hi,l2sq,ratio_lo,ratio_hi,C_lo,C_hi");
}

TEST(CommandTest, Fig3Residuals) {
  const fs::path dir = scratch("fig3");
  ASSERT_EQ(invoke({"fig3", "--series-n", "4", "--digits", "6", "--out", dir.string()}), 0);
  const std::string csv = slurp(dir / "fig3.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,residual_lo,residual_hi");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(CommandTest, VerifyAndReport) {
  const fs::path dir = scratch("report");
  std::string text;
  EXPECT_EQ(invoke({"verify", "--n-max", "4", "--k-extra", "3"}, &text), 0);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  ASSERT_EQ(invoke({"report", "--n-max", "4", "--k-extra", "3", "--out", dir.string()}), 0);
  const std::string json = slurp(dir / "report.json");
  EXPECT_NE(json.find("\"pass\": true"), std::string::npos);
  EXPECT_NE(json.find("\"K\": 3"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "fig1.csv"));
  EXPECT_TRUE(fs::exists(dir / "fig2.exact"));
}

TEST(CommandTest, ExitCodes) {
  EXPECT_EQ(run_tool(""), 2);
  EXPECT_EQ(run_tool("fig1 --q 3/2"), 2);
  EXPECT_EQ(run_tool("fig1 --bogus"), 2);
  EXPECT_EQ(run_tool("verify --depth 0"), 2);
  EXPECT_EQ(run_tool("--help"), 0);
  const fs::path dir = scratch("exit");
  EXPECT_EQ(run_tool("fig2 --n-max 1 --k-extra 1 --out " + dir.string()), 0);
  EXPECT_EQ(run_tool("verify --config " + (dir / "nope.cfg").string()), 2);
}

}  // namespace
}  // namespace qhyper::cli
