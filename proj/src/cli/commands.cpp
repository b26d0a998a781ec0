#include "cohnet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "cohnet/coherent.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/optics.hpp"

namespace cohnet {

namespace {

std::vector<Occupation> support_union(const PureState& a, const PureState& b) {
  std::vector<Occupation> occ;
  for (const auto& e : a.entries()) occ.push_back(e.occupation);
  for (const auto& e : b.entries()) occ.push_back(e.occupation);
  std::sort(occ.begin(), occ.end(), std::greater<>());
  occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
  return occ;
}

double checked_phi(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw SpecError("--c must lie in [0, 1]");
  return std::acos(c);
}

}  // namespace

int resolve_jobs(int flag_jobs) {
  if (const char* env = std::getenv("COHNET_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(flag_jobs, 1);
}

double cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  if (args.angles.empty()) throw SpecError("simulate: no angles given");
  if (args.photons < 0) throw SpecError("simulate: photon count must be >= 0");

  Topology topology = ChainTopology{static_cast<int>(args.angles.size())};
  int blocks = 1;
  if (args.parallel) {
    blocks = args.blocks;
    if (blocks < 1 || args.angles.size() % static_cast<std::size_t>(blocks) != 0) {
      throw SpecError("simulate: angle count must be a positive multiple of the block count");
    }
    topology = ParallelTopology{blocks, static_cast<int>(args.angles.size()) / blocks};
  }
  const NetworkSpec net = network_from_angles(topology, args.angles);
  const PureState simulated = apply_network(network_input(topology, args.photons), net);

  const std::size_t k = args.angles.size() / static_cast<std::size_t>(blocks);
  std::vector<PureState> closed_blocks;
  for (int b = 0; b < blocks; ++b) {
    const std::span<const double> block_angles(args.angles.data() + b * k, k);
    closed_blocks.push_back(su_coherent_closed_form(
        {static_cast<int>(k), args.photons, xi_from_angles(block_angles)}));
  }
  const PureState closed = tensor(closed_blocks);

  const int modes = simulated.mode_count();
  for (int m = 0; m < modes; ++m) out << 'n' << m << ',';
  out << "real,imag,closed_real,closed_imag,abs_diff\n";
  double worst = 0.0;
  for (const auto& occ : support_union(simulated, closed)) {
    const Complex a = simulated.amplitude(occ);
    const Complex c = closed.amplitude(occ);
    const double diff = std::abs(a - c);
    worst = std::max(worst, diff);
    for (int v : occ) out << v << ',';
    out << format_number(a.real()) << ',' << format_number(a.imag()) << ',' << format_number(c.real())
        << ',' << format_number(c.imag()) << ',' << format_number(diff) << '\n';
  }
  out << "# max_discrepancy," << format_number(worst) << '\n';
  return worst;
}

ConcurrenceReport cmd_concurrence(const ConcurrenceArgs& args, std::ostream& out) {
  ConcurrenceReport report;
  if (args.mixed) {
    const auto spec = SuperpositionSpec::swapped(args.n, args.p, checked_phi(args.c),
                                                 checked_phi(args.c_rest), args.theta);
    report = mixed_report(spec).concurrence;
  } else {
    const auto spec = SuperpositionSpec::uniform(args.n, args.p, checked_phi(args.c), args.theta);
    report = pure_report(spec, args.q);
    report.closed_form = concurrence_pure_uniform(args.c, args.n, args.p, args.q, args.theta);
    report.discrepancy = std::abs(report.closed_form - report.numeric);
  }
  out << "closed_form,numeric,discrepancy\n"
      << format_number(report.closed_form) << ',' << format_number(report.numeric) << ','
      << format_number(report.discrepancy) << '\n';
  return report;
}

void cmd_figure(std::optional<FigureId> figure, const std::filesystem::path& output, int jobs) {
  if (figure) {
    write_text_file(output, format_csv(evaluate_sweep(default_sweep(*figure), jobs)));
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(output, ec);
  if (ec) throw IoError("cannot create directory " + output.string() + ": " + ec.message());
  for (FigureId id : kAllFigures) {
    write_text_file(output / (std::string(figure_name(id)) + ".csv"),
                    format_csv(evaluate_sweep(default_sweep(id), jobs)));
  }
}

}  // namespace cohnet
