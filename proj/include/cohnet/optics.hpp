#pragma once

#include <span>
#include <variant>
#include <vector>

#include "cohnet/fock.hpp"

namespace cohnet {

// B_{a,b}(theta) = exp(i theta/2 (a_a^+ a_b + a_a a_b^+)).
struct BeamSplitterSpec {
  int mode_a = 0;
  int mode_b = 1;
  double angle = 0.0;

  double transmission() const;  // cos(theta/2)
  double reflection() const;    // sin(theta/2)
};

// k splitters B_{0,1}, B_{1,2}, ..., B_{k-1,k} over k+1 modes.
struct ChainTopology {
  int k = 1;
};

// p disjoint blocks of k+1 consecutive modes, a chain inside each block.
struct ParallelTopology {
  int p = 1;
  int k = 1;
};

using Topology = std::variant<ChainTopology, ParallelTopology>;

int mode_count(const Topology& topology);
int splitter_count(const Topology& topology);

struct NetworkSpec {
  Topology topology;
  // In application order: the rightmost factor of the operator product first.
  std::vector<BeamSplitterSpec> splitters;
};

// Chain: angles theta_1..theta_k. Parallel: k angles per block, block-major.
// Throws SpecError on a count mismatch or an invalid topology.
NetworkSpec network_from_angles(const Topology& topology, std::span<const double> angles);

// |n, 0, ..., 0> on a chain, |n,0..0, n,0..0, ...> on a parallel network.
PureState network_input(const Topology& topology, int photons);

struct KerrSpec {
  double chi = 1.0;
  double time = 0.0;
  std::vector<int> acted_modes;
};

// Modes 1, 3, ..., 2p-1: the second mode of each two-mode block.
std::vector<int> second_modes_of_pairs(int p);

PureState apply_beam_splitter(const PureState& state, const BeamSplitterSpec& bs);
PureState apply_network(const PureState& state, const NetworkSpec& net);
// Multiplies |..> by exp(-i chi t N^2) with N the photon count on acted_modes.
PureState apply_kerr(const PureState& state, const KerrSpec& kerr);

}  // namespace cohnet
