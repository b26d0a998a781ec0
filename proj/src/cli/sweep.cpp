#include "cohnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "cohnet/entanglement.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/parallel.hpp"

namespace cohnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThetaMargin = 0.01;

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) {
    v[i] = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
  }
  return v;
}

// cos(phi) on [0, pi/2] can round to a hair outside [0, 1].
double overlap_of(double phi) { return std::clamp(std::cos(phi), 0.0, 1.0); }

}  // namespace

std::string_view figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
    case FigureId::fig5: return "fig5";
    case FigureId::fig6: return "fig6";
    case FigureId::fig7: return "fig7";
  }
  return "?";
}

std::optional<FigureId> parse_figure_id(std::string_view name) {
  for (FigureId id : kAllFigures) {
    if (figure_name(id) == name) return id;
  }
  return std::nullopt;
}

SweepSpec default_sweep(FigureId id) {
  switch (id) {
    case FigureId::fig2: return {id, 101, 101, {1}, 0.0};
    case FigureId::fig3: return {id, 181, 0, {1, 2, 5, 10, 20}, 0.0};
    case FigureId::fig4: return {id, 181, 0, {1, 2, 5, 10, 20}, kPi / 2.0};
    case FigureId::fig5: return {id, 91, 91, {1}, 0.0};
    case FigureId::fig6: return {id, 91, 91, {5}, 0.0};
    case FigureId::fig7: return {id, 91, 91, {10}, 0.0};
  }
  throw SpecError("unknown figure");
}

void validate(const SweepSpec& spec) {
  const bool line_plot = spec.figure == FigureId::fig3 || spec.figure == FigureId::fig4;
  if (spec.primary_points < 2 || (!line_plot && spec.theta_points < 2)) {
    throw SpecError("sweep resolutions must be >= 2");
  }
  if (spec.n_values.empty()) throw SpecError("sweep needs at least one photon number");
  for (int n : spec.n_values) {
    if (n < 1) throw SpecError("sweep photon numbers must be >= 1");
  }
  if (spec.theta < 0.0 || spec.theta > kPi) throw SpecError("sweep theta must lie in [0, pi]");
}

double theta_grid_max(double max_overlap) { return max_overlap < 1.0 ? kPi : kPi - kThetaMargin; }

CsvTable evaluate_sweep(const SweepSpec& spec, int jobs) {
  validate(spec);
  CsvTable table;
  switch (spec.figure) {
    case FigureId::fig2: {
      table.header = {"c", "theta", "C11"};
      const auto cs = linspace(0.0, 1.0, spec.primary_points);
      const auto thetas = linspace(0.0, theta_grid_max(cs.back()), spec.theta_points);
      const int n = spec.n_values.front();
      table.rows.resize(cs.size() * thetas.size());
      parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
        const double c = cs[i / thetas.size()];
        const double theta = thetas[i % thetas.size()];
        table.rows[i] = {c, theta, concurrence_pure_uniform(c, n, 2, 1, theta)};
      });
      break;
    }
    case FigureId::fig3:
    case FigureId::fig4: {
      table.header = {"varphi", "n", "C11"};
      const auto phis = linspace(0.0, kPi / 2.0, spec.primary_points);
      table.rows.resize(spec.n_values.size() * phis.size());
      parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
        const int n = spec.n_values[i / phis.size()];
        const double phi = phis[i % phis.size()];
        table.rows[i] = {phi, static_cast<double>(n),
                         concurrence_pure_uniform(overlap_of(phi), n, 2, 1, spec.theta)};
      });
      break;
    }
    case FigureId::fig5:
    case FigureId::fig6:
    case FigureId::fig7: {
      table.header = {"varphi", "theta", "C12"};
      const auto phis = linspace(0.0, kPi / 2.0, spec.primary_points);
      const auto thetas = linspace(0.0, theta_grid_max(overlap_of(phis.front())), spec.theta_points);
      const int n = spec.n_values.front();
      table.rows.resize(phis.size() * thetas.size());
      parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
        const double phi = phis[i / thetas.size()];
        const double theta = thetas[i % thetas.size()];
        table.rows[i] = {phi, theta, concurrence_pure_uniform(overlap_of(phi), n, 3, 1, theta)};
      });
      break;
    }
  }
  return table;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace cohnet
