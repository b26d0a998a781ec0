#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cohnet/commands.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/selftest.hpp"

namespace {

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    cohnet::write_text_file(output, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state beam-splitter networks: simulation and entanglement"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;
  std::uint64_t seed = cohnet::RunConfig{}.seed;
  std::optional<double> tolerance;
  int jobs = 1;
  app.add_option("--output", output, "Output file (simulate, concurrence, single figure) or directory (figure all)");
  app.add_option("--seed", seed, "Seed for randomized selftest cases");
  app.add_option("--tolerance", tolerance, "Override every selftest discrepancy tolerance");
  app.add_option("--jobs", jobs, "Worker threads (COHNET_JOBS overrides)")->check(CLI::PositiveNumber);

  cohnet::SimulateArgs sim;
  bool chain = false;
  auto* simulate = app.add_subcommand("simulate", "Run a beam-splitter network and compare with the closed form");
  auto* chain_flag = simulate->add_flag("--chain", chain, "Single chain of splitters");
  auto* parallel_opt = simulate->add_option("--parallel", sim.blocks, "Parallel network with P blocks");
  chain_flag->excludes(parallel_opt);
  simulate->add_option("--angles", sim.angles, "Splitter angles, comma separated")->delimiter(',')->required();
  simulate->add_option("--photons", sim.photons, "Photons injected per chain")->required();

  cohnet::ConcurrenceArgs conc;
  std::string kind;
  auto* concurrence = app.add_subcommand("concurrence", "Closed-form vs numeric concurrence");
  concurrence->add_option("kind", kind, "pure or mixed")->required()->check(CLI::IsMember({"pure", "mixed"}));
  concurrence->add_option("--p", conc.p, "Number of blocks");
  concurrence->add_option("--q", conc.q, "Blocks on the first side (pure)");
  concurrence->add_option("--n", conc.n, "Photons per block");
  concurrence->add_option("--c", conc.c, "cos(phi) of the varied overlap");
  concurrence->add_option("--c-rest", conc.c_rest, "cos(phi) of blocks 3..p (mixed)");
  concurrence->add_option("--theta", conc.theta, "Relative phase");

  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "Write figure CSVs");
  figure->add_option("figure", figure_name, "fig2..fig7 or all")->required();

  bool flip = false;
  auto* selftest = app.add_subcommand("selftest", "Run the oracle-equivalence suite");
  selftest->add_flag("--inject-xi-sign-flip", flip)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    const int workers = cohnet::resolve_jobs(jobs);
    if (simulate->parsed()) {
      if (!chain && parallel_opt->count() == 0) throw cohnet::SpecError("simulate needs --chain or --parallel P");
      sim.parallel = parallel_opt->count() > 0;
      std::ostringstream out;
      cohnet::cmd_simulate(sim, out);
      emit(out.str(), output);
    } else if (concurrence->parsed()) {
      conc.mixed = kind == "mixed";
      std::ostringstream out;
      cohnet::cmd_concurrence(conc, out);
      emit(out.str(), output);
    } else if (figure->parsed()) {
      if (output.empty()) throw cohnet::SpecError("figure needs --output");
      std::optional<cohnet::FigureId> id;
      if (figure_name != "all") {
        id = cohnet::parse_figure_id(figure_name);
        if (!id) throw cohnet::SpecError("unknown figure '" + figure_name + "'");
      }
      cohnet::cmd_figure(id, output, workers);
    } else if (selftest->parsed()) {
      cohnet::RunConfig config{tolerance, workers, seed, flip};
      return cohnet::cmd_selftest(config, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
