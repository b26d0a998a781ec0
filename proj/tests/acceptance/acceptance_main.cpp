// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "cohnet/coherent.hpp"
#include "cohnet/entanglement.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/optics.hpp"

#ifndef COHNET_CLI_PATH
#error "COHNET_CLI_PATH must name the cohnet executable"
#endif

using namespace cohnet;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string summary;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Chain output written out directly: amplitude of |n-n_1, n_1-n_2, ..., n_k>
// is C prod xi_l^{n_l} sqrt(n! / prod m_j!), with n_l the photons past splitter l.
PureState chain_oracle(std::span<const double> angles, int n) {
  const int k = static_cast<int>(angles.size());
  std::vector<Complex> xi(k);
  for (int l = 0; l < k; ++l) {
    const double t = std::cos(angles[l] / 2), r = std::sin(angles[l] / 2);
    xi[l] = l + 1 < k ? Complex{0.0, std::cos(angles[l + 1] / 2) * r / t} : Complex{0.0, r / t};
  }
  double norm = 1.0, cum = 1.0;
  for (const auto& x : xi) norm += (cum *= std::norm(x));
  const double c = std::pow(norm, -n / 2.0);

  std::vector<Amplitude> entries;
  const SectorBasis basis(k + 1, n);
  for (const auto& m : basis.tuples()) {
    Complex amp = c;
    double log_multi = std::lgamma(n + 1.0);
    int past = n;
    for (int j = 0; j <= k; ++j) {
      log_multi -= std::lgamma(m[j] + 1.0);
      if (j > 0) {
        past -= m[j - 1];
        amp *= std::pow(xi[j - 1], past);
      }
    }
    entries.push_back({m, amp * std::exp(0.5 * log_multi)});
  }
  return PureState::from_entries(k + 1, std::move(entries));
}

double c11(double c, int n, double theta) {
  const double c2n = std::pow(c, 2 * n);
  return (1 - c2n) / (1 + c2n * std::cos(theta));
}

// Closed form for every bipartition of the uniform family.
double pure_oracle(double c, int n, int p, int q, double theta) {
  const double a = std::pow(c, 2 * n * q), b = std::pow(c, 2 * n * (p - q));
  return std::sqrt(1 - a) * std::sqrt(1 - b) / (1 + std::pow(c, n * p) * std::cos(theta));
}

Outcome criterion_network() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20100603);
  std::uniform_real_distribution<double> u(-0.95 * kPi, 0.95 * kPi);
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    for (int n = 0; n <= 6; ++n) {
      for (int draw = 0; draw < 20; ++draw) {
        std::vector<double> angles(k);
        for (auto& a : angles) a = u(rng);
        const Topology topo = ChainTopology{k};
        const auto out = apply_network(network_input(topo, n), network_from_angles(topo, angles));
        worst = std::max(worst, max_amplitude_diff(out, chain_oracle(angles, n)));
      }
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-10 && secs <= 10.0,
          "max amplitude diff " + sci(worst) + " (<= 1e-10) over 560 networks in " + sci(secs) + " s (<= 10 s)"};
}

Outcome criterion_displacement() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.9 * kPi, 0.9 * kPi);
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 5; ++n) {
      for (int draw = 0; draw < 10; ++draw) {
        std::vector<double> angles(k);
        for (auto& a : angles) a = u(rng);
        const auto xi = xi_from_angles(angles);
        const auto s = displacement_state(k, n, displacement_parameters(xi));
        worst = std::max(worst, 1.0 - fidelity(s, chain_oracle(angles, n)));
      }
    }
  }
  return {worst <= 1e-9, "1 - fidelity " + sci(worst) + " (<= 1e-9), k <= 3, n <= 5"};
}

const std::vector<double>& theta_grid() {
  static const std::vector<double> g{0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi - 0.01};
  return g;
}

Outcome criterion_pure_dual_path() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (int p = 2; p <= 4; ++p) {
    for (int q = 1; q < p; ++q) {
      for (int n : {1, 5, 10}) {
        for (int i = 0; i <= 10; ++i) {
          const double phi = kPi / 2 * i / 10;
          for (double theta : theta_grid()) {
            const auto spec = SuperpositionSpec::uniform(n, p, phi, theta);
            const double closed = pure_oracle(std::cos(phi), n, p, q, theta);
            double numeric = 0.0;
            try {
              numeric = wootters_concurrence(logical_qubit_density(build_superposition(spec), spec, q));
            } catch (const DegenerateLogicalBasis&) {
              numeric = 0.0;  // coinciding branches: product state
            }
            worst = std::max(worst, std::abs(closed - numeric));
            ++points;
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-8 && points >= 900 && secs <= 60.0,
          "max |closed - Wootters| " + sci(worst) + " (<= 1e-8) over " + std::to_string(points) + " points in " +
              sci(secs) + " s (<= 60 s)"};
}

Outcome criterion_point_values() {
  const double a = concurrence_pure_uniform(0.5, 1, 2, 1, 0.0);
  const double b = concurrence_pure_uniform(0.3, 2, 2, 1, kPi);
  const double na = pure_report(SuperpositionSpec::uniform(1, 2, std::acos(0.5), 0.0), 1).numeric;
  const double nb = pure_report(SuperpositionSpec::uniform(2, 2, std::acos(0.3), kPi), 1).numeric;
  const bool ok = std::abs(a - 0.6) <= 1e-12 && std::abs(c11(0.5, 1, 0.0) - 0.6) <= 1e-12 &&
                  std::abs(b - 1.0) <= 1e-9 && std::abs(na - 0.6) <= 1e-10 && std::abs(nb - 1.0) <= 1e-9;
  return {ok, "C11(n=1,c=0.5,theta=0) = " + std::to_string(a) + " (numeric " + std::to_string(na) +
                  "), C11(n=2,c=0.3,theta=pi) = " + std::to_string(b) + " (numeric " + std::to_string(nb) + ")"};
}

Outcome criterion_mixed_dual_path() {
  double worst = 0.0, tail = 0.0;
  int points = 0;
  for (int p = 2; p <= 3; ++p) {
    for (int n : {1, 3, 5}) {
      for (int i = 0; i <= 10; ++i) {
        const double phi = kPi / 2 * i / 10;
        for (double theta : theta_grid()) {
          const auto spec = SuperpositionSpec::swapped(n, p, phi, phi, theta);
          const double s = std::pow(std::cos(phi), n);
          const double rest = std::pow(std::cos(phi), n * (p - 2));
          const double closed = (1 - s * s) * rest / (1 + s * s * rest * std::cos(theta));
          const auto logical = mixed_logical_density(reduced_pair_density(spec), spec);
          const auto lambda = spin_flip_spectrum(logical);
          worst = std::max(worst, std::abs(closed - wootters_concurrence(logical)));
          tail = std::max({tail, lambda[2], lambda[3]});
          ++points;
        }
      }
    }
  }
  return {worst <= 1e-8 && tail <= 1e-9, "max |closed - Wootters| " + sci(worst) + " (<= 1e-8), max(lambda_3, lambda_4) " +
                                             sci(tail) + " (<= 1e-9) over " + std::to_string(points) + " points"};
}

Outcome criterion_kerr() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.9 * kPi, 0.9 * kPi);
  const Complex w = std::polar(1.0 / std::sqrt(2.0), -kPi / 4);
  double worst = 0.0;
  for (int p = 1; p <= 3; ++p) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<PureState> plus, minus;
      std::vector<int> acted;
      for (int b = 0; b < p; ++b) {
        const Complex a = alpha_from_angle(u(rng));
        plus.push_back(su2_coherent({n, a}));
        minus.push_back(su2_coherent({n, -a}));
        acted.push_back(2 * b + 1);
      }
      const double chi = 0.5 + p;
      const auto out = apply_kerr(tensor(plus), {chi, kPi / (2 * chi), acted});
      const auto cat = linear_combination(w, tensor(plus), std::conj(w), tensor(minus));
      worst = std::max(worst, std::abs(1.0 - fidelity(out, cat)));
    }
  }
  return {worst <= 1e-10, "|1 - fidelity| " + sci(worst) + " (<= 1e-10), p <= 3, n <= 4"};
}

Outcome criterion_contraction() {
  const std::vector<Complex> z{1.0};
  const double f25 = contraction_fidelity(1, 25, z, 40);
  const double f100 = contraction_fidelity(1, 100, z, 40);
  const double f400 = contraction_fidelity(1, 400, z, 40);
  return {f25 < f100 && f100 < f400 && f400 > 0.99,
          "F(25) = " + std::to_string(f25) + ", F(100) = " + std::to_string(f100) + ", F(400) = " +
              std::to_string(f400) + " (increasing, > 0.99)"};
}

Outcome criterion_monotonicity() {
  const double c = std::cos(kPi / 4);
  bool increasing = true;
  double prev = -1.0;
  for (int n = 1; n <= 10; ++n) {
    const double v = c11(c, n, 0.0);
    const double numeric = pure_report(SuperpositionSpec::uniform(n, 2, kPi / 4, 0.0), 1).numeric;
    if (!(v > prev) || std::abs(numeric - v) > 1e-8) increasing = false;
    prev = v;
  }
  return {increasing && prev >= 0.99, "C11 increasing over n = 1..10, C11(10) = " + std::to_string(prev) + " (>= 0.99)"};
}

Outcome criterion_separability() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.9 * kPi, 0.9 * kPi);
  double gap = 0.0;
  for (int p = 2; p <= 4; ++p) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<double> angles(p);
      for (auto& a : angles) a = u(rng);
      const Topology topo = ParallelTopology{p, 1};
      const auto out = apply_network(network_input(topo, n), network_from_angles(topo, angles));
      for (int b = 0; b < p; ++b) {
        const std::vector<int> keep{2 * b, 2 * b + 1};
        gap = std::max(gap, std::abs(1.0 - partial_trace(out, keep).purity()));
      }
    }
  }
  double worst = 0.0;
  for (int p = 2; p <= 4; ++p) {
    for (int n : {1, 5, 10}) {
      for (double theta : {0.0, 1.0, kPi / 2, 2.5}) {
        for (int q = 1; q < p; ++q) {
          const auto r = pure_report(SuperpositionSpec::uniform(n, p, 0.0, theta), q);
          worst = std::max({worst, std::abs(r.closed_form), std::abs(r.numeric)});
        }
      }
    }
  }
  return {gap <= 1e-10 && worst <= 1e-10,
          "block purity gap " + sci(gap) + " (<= 1e-10), concurrence at c = 1: " + sci(worst)};
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + COHNET_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return status;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome criterion_selftest_and_csv() {
  const fs::path dir = fs::temp_directory_path() / ("cohnet_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();
  const int status = run("--seed 20100603 selftest", dir / "selftest.log");
  const double secs = seconds_since(start);

  const int first = run("--seed 20100603 figure all --output \"" + (dir / "a").string() + "\"", dir / "a.log");
  const int second = run("--seed 20100603 figure all --output \"" + (dir / "b").string() + "\"", dir / "b.log");
  bool identical = first == 0 && second == 0;
  int files = 0;
  for (const char* name : {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}) {
    const auto a = slurp(dir / "a" / (std::string(name) + ".csv"));
    const auto b = slurp(dir / "b" / (std::string(name) + ".csv"));
    if (a.empty() || a != b) identical = false;
    files += !a.empty();
  }
  const std::string log = slurp(dir / "selftest.log");
  fs::remove_all(dir);
  if (status != 0) std::fputs(log.c_str(), stdout);
  return {status == 0 && secs <= 120.0 && identical,
          "selftest exit " + std::to_string(status) + " in " + sci(secs) + " s (<= 120 s); " + std::to_string(files) +
              "/6 figure CSVs byte-identical across two runs: " + (identical ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"network vs closed form", criterion_network},
      {"displacement construction", criterion_displacement},
      {"pure concurrence dual path", criterion_pure_dual_path},
      {"point values", criterion_point_values},
      {"mixed concurrence dual path", criterion_mixed_dual_path},
      {"Kerr cat generation", criterion_kerr},
      {"contraction to Glauber states", criterion_contraction},
      {"monotonicity in n", criterion_monotonicity},
      {"separability", criterion_separability},
      {"selftest and CSV determinism", criterion_selftest_and_csv},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  [%zu] %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.summary.c_str());
    std::fflush(stdout);
    failed += !o.passed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
