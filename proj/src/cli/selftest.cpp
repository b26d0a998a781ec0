#include "cohnet/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <type_traits>

#include "cohnet/coherent.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/optics.hpp"
#include "cohnet/parallel.hpp"

namespace cohnet {

namespace {

constexpr double kPi = std::numbers::pi;

struct Context {
  const RunConfig& config;
  std::mt19937_64 rng;

  double tol(double fallback) const { return config.tolerance.value_or(fallback); }

  std::vector<double> random_angles(std::size_t count, double limit) {
    std::uniform_real_distribution<double> dist(-limit, limit);
    std::vector<double> a(count);
    for (auto& x : a) x = dist(rng);
    return a;
  }
};

CheckResult at_most(std::string name, double metric, double threshold, std::string detail = {}) {
  return {std::move(name), metric <= threshold, metric, threshold, std::move(detail)};
}

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = lo + (hi - lo) * i / (points - 1);
  return v;
}

CheckResult check_network(Context& ctx) {
  double worst = 0.0;
  int cases = 0;
  for (int k = 1; k <= 4; ++k) {
    for (int n = 0; n <= 6; ++n) {
      for (int draw = 0; draw < 20; ++draw) {
        const auto angles = ctx.random_angles(k, 0.95 * kPi);
        auto xi = xi_from_angles(angles);
        if (ctx.config.flip_xi_sign) {
          for (auto& x : xi) x = std::conj(x);
        }
        const PureState closed = su_coherent_closed_form({k, n, xi});
        const Topology topo = ChainTopology{k};
        const PureState out = apply_network(network_input(topo, n), network_from_angles(topo, angles));
        worst = std::max(worst, max_amplitude_diff(out, closed));
        ++cases;
      }
    }
  }
  return at_most("network_vs_closed_form", worst, ctx.tol(1e-10), std::to_string(cases) + " networks");
}

CheckResult check_displacement(Context& ctx) {
  double worst = 0.0;
  int cases = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 5; ++n) {
      for (int draw = 0; draw < 10; ++draw) {
        const auto xi = xi_from_angles(ctx.random_angles(k, 0.9 * kPi));
        const PureState displaced = displacement_state(k, n, displacement_parameters(xi));
        const PureState closed = su_coherent_closed_form({k, n, xi});
        worst = std::max(worst, 1.0 - fidelity(displaced, closed));
        ++cases;
      }
    }
  }
  return at_most("displacement_vs_closed_form", worst, ctx.tol(1e-9),
                 "1 - fidelity over " + std::to_string(cases) + " labels");
}

CheckResult check_pure_grid(Context& ctx) {
  struct Point {
    int p, q, n;
    double phi, theta;
  };
  std::vector<Point> points;
  const auto phis = grid(0.0, kPi / 2.0, 11);
  const std::vector<double> thetas{0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi - 0.01};
  for (int p = 2; p <= 4; ++p) {
    for (int q = 1; q < p; ++q) {
      for (int n : {1, 5, 10}) {
        for (double phi : phis) {
          for (double theta : thetas) points.push_back({p, q, n, phi, theta});
        }
      }
    }
  }
  std::vector<double> disc(points.size());
  parallel_for(points.size(), ctx.config.jobs, [&](std::size_t i) {
    const Point& pt = points[i];
    const auto spec = SuperpositionSpec::uniform(pt.n, pt.p, pt.phi, pt.theta);
    const ConcurrenceReport r = pure_report(spec, pt.q);
    const double uniform = concurrence_pure_uniform(std::cos(pt.phi), pt.n, pt.p, pt.q, pt.theta);
    disc[i] = std::max(r.discrepancy, std::abs(uniform - r.closed_form));
  });
  const double worst = *std::max_element(disc.begin(), disc.end());
  CheckResult res = at_most("pure_concurrence_dual_path", worst, ctx.tol(1e-8),
                            std::to_string(points.size()) + " grid points");
  if (points.size() < 900) res.passed = false;
  return res;
}

std::vector<CheckResult> check_point_values(Context& ctx) {
  const double a = concurrence_pure_uniform(0.5, 1, 2, 1, 0.0);
  const double b = concurrence_pure_uniform(0.3, 2, 2, 1, kPi);
  return {at_most("point_value_c0.5_n1_theta0", std::abs(a - 0.6), ctx.tol(1e-12), "expect 0.6"),
          at_most("point_value_c0.3_n2_theta_pi", std::abs(b - 1.0), ctx.tol(1e-9), "expect 1")};
}

std::vector<CheckResult> check_mixed_grid(Context& ctx) {
  struct Point {
    int p, n;
    double phi, theta;
  };
  std::vector<Point> points;
  const auto phis = grid(0.0, kPi / 2.0, 11);
  const std::vector<double> thetas{0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi - 0.01};
  for (int p = 2; p <= 3; ++p) {
    for (int n : {1, 3, 5}) {
      for (double phi : phis) {
        for (double theta : thetas) points.push_back({p, n, phi, theta});
      }
    }
  }
  std::vector<double> disc(points.size()), tail(points.size());
  parallel_for(points.size(), ctx.config.jobs, [&](std::size_t i) {
    const Point& pt = points[i];
    const auto spec = SuperpositionSpec::swapped(pt.n, pt.p, pt.phi, pt.phi, pt.theta);
    const MixedReport r = mixed_report(spec);
    const auto closed = mixed_spectrum_closed(spec);
    disc[i] = std::max({r.concurrence.discrepancy, std::abs(r.spectrum[0] - closed[0]),
                        std::abs(r.spectrum[1] - closed[1])});
    tail[i] = std::max(r.spectrum[2], r.spectrum[3]);
  });
  const std::string detail = std::to_string(points.size()) + " grid points";
  return {at_most("mixed_concurrence_dual_path", *std::max_element(disc.begin(), disc.end()),
                  ctx.tol(1e-8), detail),
          at_most("mixed_spectrum_rank_two", *std::max_element(tail.begin(), tail.end()),
                  ctx.tol(1e-9), "max(lambda_3, lambda_4)")};
}

CheckResult check_kerr(Context& ctx) {
  const Complex minus{std::cos(kPi / 4.0), -std::sin(kPi / 4.0)};
  double worst = 0.0;
  for (int p = 1; p <= 3; ++p) {
    for (int n = 1; n <= 4; ++n) {
      for (double chi : {1.0, 2.5}) {
        const auto angles = ctx.random_angles(p, 0.9 * kPi);
        std::vector<PureState> plus_blocks, minus_blocks;
        for (double a : angles) {
          const Complex alpha = alpha_from_angle(a);
          plus_blocks.push_back(su2_coherent({n, alpha}));
          minus_blocks.push_back(su2_coherent({n, -alpha}));
        }
        const PureState input = tensor(plus_blocks);
        const PureState expected =
            linear_combination(minus / std::sqrt(2.0), input, std::conj(minus) / std::sqrt(2.0),
                               tensor(minus_blocks));
        const PureState out =
            apply_kerr(input, {chi, kPi / (2.0 * chi), second_modes_of_pairs(p)});
        worst = std::max(worst, 1.0 - fidelity(out, expected));
      }
    }
  }
  return at_most("kerr_cat_state", worst, ctx.tol(1e-10), "1 - fidelity");
}

CheckResult check_contraction(Context&) {
  const std::vector<Complex> z{Complex{1.0, 0.0}};
  const double f25 = contraction_fidelity(1, 25, z, 40);
  const double f100 = contraction_fidelity(1, 100, z, 40);
  const double f400 = contraction_fidelity(1, 400, z, 40);
  char detail[128];
  std::snprintf(detail, sizeof detail, "F(25)=%.6f F(100)=%.6f F(400)=%.6f", f25, f100, f400);
  CheckResult res = at_most("contraction_to_glauber", 1.0 - f400, 0.01, detail);
  if (!(f25 < f100 && f100 < f400)) res.passed = false;
  return res;
}

CheckResult check_monotonicity(Context&) {
  const double c = std::cos(kPi / 4.0);
  bool increasing = true;
  double prev = -1.0;
  for (int n = 1; n <= 10; ++n) {
    const double v = concurrence_pure_uniform(c, n, 2, 1, 0.0);
    if (!(v > prev)) increasing = false;
    prev = v;
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "C11(n=10)=%.6f", prev);
  CheckResult res{"concurrence_grows_with_n", increasing && prev >= 0.99, prev, 0.99, detail};
  return res;
}

std::vector<CheckResult> check_separability(Context& ctx) {
  double purity_gap = 0.0;
  for (int p = 2; p <= 3; ++p) {
    for (int n = 1; n <= 3; ++n) {
      const Topology topo = ParallelTopology{p, 1};
      const PureState out =
          apply_network(network_input(topo, n), network_from_angles(topo, ctx.random_angles(p, 0.9 * kPi)));
      for (int b = 0; b < p; ++b) {
        const std::vector<int> keep{2 * b, 2 * b + 1};
        purity_gap = std::max(purity_gap, std::abs(1.0 - partial_trace(out, keep).purity()));
      }
    }
  }
  double worst = 0.0;
  for (int p = 2; p <= 3; ++p) {
    for (int n : {1, 5}) {
      for (double theta : {0.0, kPi / 3.0, kPi / 2.0}) {
        const auto spec = SuperpositionSpec::uniform(n, p, 0.0, theta);
        for (int q = 1; q < p; ++q) {
          const ConcurrenceReport r = pure_report(spec, q);
          worst = std::max({worst, std::abs(r.closed_form), std::abs(r.numeric)});
        }
      }
    }
  }
  return {at_most("parallel_blocks_separable", purity_gap, ctx.tol(1e-10), "|1 - block purity|"),
          at_most("unit_overlap_separable", worst, ctx.tol(1e-10), "concurrence at c = 1")};
}

CheckResult check_csv_determinism(Context& ctx) {
  bool identical = true;
  double worst_range = 0.0;
  for (FigureId id : kAllFigures) {
    const CsvTable table = evaluate_sweep(default_sweep(id), ctx.config.jobs);
    const std::string a = format_csv(table);
    const std::string b = format_csv(evaluate_sweep(default_sweep(id), 1));
    if (a != b) identical = false;
    for (const auto& row : table.rows) {
      const double v = row.back();
      worst_range = std::max({worst_range, -v, v - 1.0});
    }
  }
  CheckResult res{"figure_csv_deterministic", identical && worst_range <= 0.0,
                  identical ? 0.0 : 1.0, 0.0, "all concurrences in [0, 1]"};
  return res;
}

}  // namespace

std::vector<CheckResult> run_selftest(const RunConfig& config) {
  Context ctx{config, std::mt19937_64(config.seed)};
  std::vector<CheckResult> results;
  auto add = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> batch;
    try {
      if constexpr (std::is_same_v<std::invoke_result_t<decltype(fn), Context&>, CheckResult>) {
        batch.push_back(fn(ctx));
      } else {
        batch = fn(ctx);
      }
    } catch (const std::exception& e) {
      batch.push_back({"exception", false, 0.0, 0.0, e.what()});
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : batch) {
      char t[32];
      std::snprintf(t, sizeof t, " (%.2fs)", secs);
      r.detail += t;
      results.push_back(std::move(r));
    }
  };
  add(check_network);
  add(check_displacement);
  add(check_pure_grid);
  add(check_point_values);
  add(check_mixed_grid);
  add(check_kerr);
  add(check_contraction);
  add(check_monotonicity);
  add(check_separability);
  add(check_csv_determinism);
  return results;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
  const auto results = run_selftest(config);
  int passed = 0;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-6s %-12s %-12s %s\n", "check", "result", "metric",
                "threshold", "detail");
  out << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-32s %-6s %-12.3g %-12.3g %s\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.metric, r.threshold, r.detail.c_str());
    out << line;
    passed += r.passed;
  }
  out << passed << '/' << results.size() << " checks passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace cohnet
