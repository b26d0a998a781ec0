#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cohnet/entanglement.hpp"
#include "cohnet/sweep.hpp"

namespace cohnet {

struct RunConfig {
  // Replaces every discrepancy tolerance in the selftest when set.
  std::optional<double> tolerance;
  int jobs = 1;
  std::uint64_t seed = 20100603;
  // Conjugates xi in the closed-form side of the network check (mutation test).
  bool flip_xi_sign = false;
};

// COHNET_JOBS, when set to a positive integer, wins over the flag value.
int resolve_jobs(int flag_jobs);

struct SimulateArgs {
  bool parallel = false;
  int blocks = 1;  // p, parallel only
  std::vector<double> angles;
  int photons = 1;
};

// CSV of output amplitudes: n_0..n_{m-1}, real, imag, closed_real,
// closed_imag, abs_diff, then a "# max_discrepancy,<value>" footer.
// Returns the max discrepancy.
double cmd_simulate(const SimulateArgs& args, std::ostream& out);

struct ConcurrenceArgs {
  bool mixed = false;
  int p = 2;
  int q = 1;
  int n = 1;
  double c = 0.5;       // cos(phi): every overlap is c^n (pure), <a_1|a_3> = c^n (mixed)
  double c_rest = 0.5;  // mixed only: cos(phi) of blocks 3..p
  double theta = 0.0;
};

// One-row CSV with closed_form, numeric, discrepancy.
ConcurrenceReport cmd_concurrence(const ConcurrenceArgs& args, std::ostream& out);

// Writes one figure CSV to `output`, or all six as <dir>/<figN>.csv when
// `figure` is empty.
void cmd_figure(std::optional<FigureId> figure, const std::filesystem::path& output, int jobs);

}  // namespace cohnet
