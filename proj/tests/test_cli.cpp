#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cohnet/commands.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/selftest.hpp"

using namespace cohnet;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(std::stod(f));
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("cohnet_test_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Simulate, QuarterTurnSinglePhoton) {
  std::ostringstream out;
  const double worst = cmd_simulate({false, 1, {1.5707963}, 1}, out);
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "n0,n1,real,imag,closed_real,closed_imag,abs_diff");
  const auto first = fields(lines[1]);
  const auto second = fields(lines[2]);
  EXPECT_NEAR(first[2], 1.0 / std::sqrt(2.0), 1e-7);
  EXPECT_NEAR(second[3], 1.0 / std::sqrt(2.0), 1e-7);
  EXPECT_LT(worst, 1e-12);
  EXPECT_EQ(lines[3].rfind("# max_discrepancy,", 0), 0u);
}

TEST(Simulate, ZeroAngle) {
  std::ostringstream out;
  cmd_simulate({false, 1, {0.0}, 3}, out);
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[1], "3,0,1,0,1,0,0");
}

TEST(Simulate, ParallelProductRows) {
  std::ostringstream out;
  const double worst = cmd_simulate({true, 2, {0.7, -1.2}, 2}, out);
  const auto lines = lines_of(out.str());
  EXPECT_EQ(lines.size(), 9u + 2u);
  EXPECT_EQ(lines[0].rfind("n0,n1,n2,n3,", 0), 0u);
  EXPECT_LT(worst, 1e-12);
}

TEST(Simulate, Errors) {
  std::ostringstream out;
  EXPECT_THROW(cmd_simulate({false, 1, {}, 1}, out), SpecError);
  EXPECT_THROW(cmd_simulate({true, 2, {0.1, 0.2, 0.3}, 1}, out), SpecError);
  EXPECT_THROW(cmd_simulate({false, 1, {kPi}, 1}, out), SingularAngle);
  EXPECT_THROW(cmd_simulate({false, 1, {0.3}, -1}, out), SpecError);
}

TEST(Concurrence, PurePointValues) {
  std::ostringstream out;
  const auto r = cmd_concurrence({false, 2, 1, 1, 0.5, 0.5, 0.0}, out);
  EXPECT_NEAR(r.closed_form, 0.6, 1e-12);
  EXPECT_NEAR(r.numeric, 0.6, 1e-10);
  EXPECT_EQ(lines_of(out.str())[0], "closed_form,numeric,discrepancy");
  for (int n : {1, 2, 7}) {
    const auto m = cmd_concurrence({false, 2, 1, n, 0.3, 0.5, kPi}, out);
    EXPECT_NEAR(m.closed_form, 1.0, 1e-9);
    EXPECT_NEAR(m.numeric, 1.0, 1e-9);
  }
}

TEST(Concurrence, MixedOrthogonalRest) {
  std::ostringstream out;
  const auto r = cmd_concurrence({true, 3, 1, 2, 0.4, 0.0, 0.5}, out);
  EXPECT_NEAR(r.closed_form, 0.0, 1e-10);
  EXPECT_NEAR(r.numeric, 0.0, 1e-10);
}

TEST(Concurrence, Errors) {
  std::ostringstream out;
  EXPECT_THROW(cmd_concurrence({false, 2, 1, 1, 1.5, 0.5, 0.0}, out), SpecError);
  EXPECT_THROW(cmd_concurrence({false, 2, 2, 1, 0.5, 0.5, 0.0}, out), InvalidBipartition);
  EXPECT_THROW(cmd_concurrence({false, 2, 1, 1, 1.0, 0.5, kPi}, out), DegenerateSuperposition);
}

TEST(Sweep, Validation) {
  SweepSpec s = default_sweep(FigureId::fig2);
  s.primary_points = 1;
  EXPECT_THROW(validate(s), SpecError);
  s = default_sweep(FigureId::fig4);
  s.theta = 4.0;
  EXPECT_THROW(validate(s), SpecError);
  s = default_sweep(FigureId::fig3);
  s.n_values.clear();
  EXPECT_THROW(validate(s), SpecError);
  EXPECT_EQ(parse_figure_id("fig5"), FigureId::fig5);
  EXPECT_FALSE(parse_figure_id("fig8").has_value());
  EXPECT_DOUBLE_EQ(theta_grid_max(0.5), kPi);
  EXPECT_DOUBLE_EQ(theta_grid_max(1.0), kPi - 0.01);
}

TEST(Sweep, Fig2OrthogonalRowsAreMaximal) {
  const auto t = evaluate_sweep(default_sweep(FigureId::fig2), 2);
  EXPECT_EQ(t.header, (std::vector<std::string>{"c", "theta", "C11"}));
  EXPECT_EQ(t.rows.size(), 101u * 101u);
  int zero_rows = 0;
  for (const auto& r : t.rows) {
    if (r[0] == 0.0) {
      EXPECT_DOUBLE_EQ(r[2], 1.0);
      ++zero_rows;
    }
    EXPECT_LE(r[1], kPi - 0.01 + 1e-15);
  }
  EXPECT_EQ(zero_rows, 101);
}

TEST(Sweep, Fig3SeparableAtZeroPhi) {
  const auto t = evaluate_sweep(default_sweep(FigureId::fig3), 1);
  EXPECT_EQ(t.header, (std::vector<std::string>{"varphi", "n", "C11"}));
  EXPECT_EQ(t.rows.size(), 5u * 181u);
  for (const auto& r : t.rows) {
    if (r[0] == 0.0) EXPECT_EQ(r[2], 0.0);
  }
}

TEST(Sweep, Fig7PeaksAtThetaEdge) {
  const auto spec = default_sweep(FigureId::fig7);
  const auto t = evaluate_sweep(spec, 3);
  EXPECT_EQ(t.header, (std::vector<std::string>{"varphi", "theta", "C12"}));
  double best = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); i += spec.theta_points) {
    const double edge = t.rows[i + spec.theta_points - 1][2];
    for (int j = 0; j < spec.theta_points; ++j) EXPECT_LE(t.rows[i + j][2], edge + 1e-15);
    best = std::max(best, edge);
  }
  EXPECT_NEAR(best, 1.0, 1e-9);
}

TEST(Sweep, RangeAndJobIndependence) {
  for (FigureId id : kAllFigures) {
    const auto a = evaluate_sweep(default_sweep(id), 1);
    const auto b = evaluate_sweep(default_sweep(id), 4);
    EXPECT_EQ(format_csv(a), format_csv(b));
    for (const auto& r : a.rows) {
      EXPECT_GE(r.back(), 0.0);
      EXPECT_LE(r.back(), 1.0);
    }
  }
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.6), "0.6");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_csv({{"a", "b"}, {{1.0, 2.5}}}), "a,b\n1,2.5\n");
}

TEST(Figure, WritesFilesDeterministically) {
  TempDir dir;
  cmd_figure(std::nullopt, dir.path / "one", 2);
  cmd_figure(std::nullopt, dir.path / "two", 1);
  for (FigureId id : kAllFigures) {
    const std::string name = std::string(figure_name(id)) + ".csv";
    const auto a = slurp(dir.path / "one" / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir.path / "two" / name));
  }
  cmd_figure(FigureId::fig4, dir.path / "fig4.csv", 1);
  EXPECT_EQ(slurp(dir.path / "fig4.csv"), slurp(dir.path / "one" / "fig4.csv"));
}

TEST(Figure, UnwritablePath) {
  TempDir dir;
  EXPECT_THROW(cmd_figure(FigureId::fig3, dir.path / "missing" / "fig3.csv", 1), IoError);
  std::ofstream(dir.path / "blocker") << "x";
  EXPECT_THROW(cmd_figure(std::nullopt, dir.path / "blocker" / "sub", 1), IoError);
}

TEST(Jobs, EnvironmentOverridesFlag) {
  ::unsetenv("COHNET_JOBS");
  EXPECT_EQ(resolve_jobs(3), 3);
  EXPECT_EQ(resolve_jobs(0), 1);
  ::setenv("COHNET_JOBS", "5", 1);
  EXPECT_EQ(resolve_jobs(3), 5);
  ::setenv("COHNET_JOBS", "junk", 1);
  EXPECT_EQ(resolve_jobs(3), 3);
  ::unsetenv("COHNET_JOBS");
}

TEST(Selftest, DefaultConfigPasses) {
  std::ostringstream out;
  EXPECT_EQ(cmd_selftest(RunConfig{}, out), 0) << out.str();
  EXPECT_NE(out.str().find("network_vs_closed_form"), std::string::npos);
}

TEST(Selftest, XiSignFlipIsCaught) {
  RunConfig config;
  config.flip_xi_sign = true;
  const auto results = run_selftest(config);
  bool network_failed = false;
  for (const auto& r : results) {
    if (r.name == "network_vs_closed_form") network_failed = !r.passed;
  }
  EXPECT_TRUE(network_failed);
}

TEST(Selftest, UnreachableToleranceFails) {
  RunConfig config;
  config.tolerance = 1e-20;
  std::ostringstream out;
  EXPECT_NE(cmd_selftest(config, out), 0);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}
