#include "cohnet/optics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cohnet/errors.hpp"
#include "cohnet/numerics.hpp"

namespace cohnet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void validate(const Topology& topology) {
  std::visit(overloaded{
                 [](const ChainTopology& c) {
                   if (c.k < 1) throw SpecError("chain topology needs k >= 1");
                 },
                 [](const ParallelTopology& p) {
                   if (p.p < 1 || p.k < 1) throw SpecError("parallel topology needs p, k >= 1");
                 },
             },
             topology);
}

// Beam-splitter generator a_a^+ a_b + a_a a_b^+ on the (N+1)-dimensional
// sector n_a + n_b = N, indexed by m = n_a.
HermitianMatrix splitter_generator(int photons) {
  const std::size_t dim = static_cast<std::size_t>(photons) + 1;
  CMatrix g(dim, dim);
  for (int m = 0; m < photons; ++m) {
    const double elem = std::sqrt(static_cast<double>(m + 1) * static_cast<double>(photons - m));
    g(m + 1, m) = elem;
    g(m, m + 1) = elem;
  }
  return HermitianMatrix(std::move(g));
}

}  // namespace

double BeamSplitterSpec::transmission() const { return std::cos(angle / 2.0); }
double BeamSplitterSpec::reflection() const { return std::sin(angle / 2.0); }

int mode_count(const Topology& topology) {
  return std::visit(overloaded{
                        [](const ChainTopology& c) { return c.k + 1; },
                        [](const ParallelTopology& p) { return p.p * (p.k + 1); },
                    },
                    topology);
}

int splitter_count(const Topology& topology) {
  return std::visit(overloaded{
                        [](const ChainTopology& c) { return c.k; },
                        [](const ParallelTopology& p) { return p.p * p.k; },
                    },
                    topology);
}

NetworkSpec network_from_angles(const Topology& topology, std::span<const double> angles) {
  validate(topology);
  const int expected = splitter_count(topology);
  if (static_cast<int>(angles.size()) != expected) {
    throw SpecError("network_from_angles: expected " + std::to_string(expected) + " angles, got " +
                    std::to_string(angles.size()));
  }
  NetworkSpec net{topology, {}};
  const int blocks = std::holds_alternative<ParallelTopology>(topology)
                         ? std::get<ParallelTopology>(topology).p
                         : 1;
  const int k = expected / blocks;
  for (int b = 0; b < blocks; ++b) {
    const int base = b * (k + 1);
    for (int l = 0; l < k; ++l) {
      net.splitters.push_back({base + l, base + l + 1, angles[b * k + l]});
    }
  }
  return net;
}

PureState network_input(const Topology& topology, int photons) {
  validate(topology);
  if (photons < 0) throw SpecError("network_input: negative photon count");
  Occupation occ(mode_count(topology), 0);
  const int stride = std::visit(overloaded{
                                    [](const ChainTopology& c) { return c.k + 1; },
                                    [](const ParallelTopology& p) { return p.k + 1; },
                                },
                                topology);
  for (std::size_t m = 0; m < occ.size(); m += stride) occ[m] = photons;
  return PureState::basis_state(occ);
}

std::vector<int> second_modes_of_pairs(int p) {
  std::vector<int> modes;
  for (int i = 0; i < p; ++i) modes.push_back(2 * i + 1);
  return modes;
}

PureState apply_beam_splitter(const PureState& state, const BeamSplitterSpec& bs) {
  const int m = state.mode_count();
  if (bs.mode_a < 0 || bs.mode_a >= m || bs.mode_b < 0 || bs.mode_b >= m || bs.mode_a == bs.mode_b) {
    throw ShapeError("apply_beam_splitter: modes (" + std::to_string(bs.mode_a) + ", " +
                     std::to_string(bs.mode_b) + ") invalid for " + std::to_string(m) + " modes");
  }

  // Key: the tuple with n_a replaced by N = n_a + n_b and n_b by -1.
  std::map<Occupation, std::vector<Complex>> sectors;
  for (const auto& e : state.entries()) {
    Occupation key = e.occupation;
    const int total = key[bs.mode_a] + key[bs.mode_b];
    key[bs.mode_a] = total;
    key[bs.mode_b] = -1;
    auto& v = sectors[key];
    if (v.empty()) v.assign(static_cast<std::size_t>(total) + 1, Complex{0.0, 0.0});
    v[e.occupation[bs.mode_a]] = e.value;
  }

  std::map<int, CMatrix> unitaries;
  std::vector<Amplitude> out;
  out.reserve(state.size());
  for (const auto& [key, amps] : sectors) {
    const int total = key[bs.mode_a];
    auto it = unitaries.find(total);
    if (it == unitaries.end()) {
      it = unitaries.emplace(total, exp_i_hermitian(splitter_generator(total), bs.angle / 2.0)).first;
    }
    const std::vector<Complex> rotated = it->second.apply(amps);
    Occupation occ = key;
    for (int na = 0; na <= total; ++na) {
      if (std::abs(rotated[na]) < kPruneThreshold) continue;
      occ[bs.mode_a] = na;
      occ[bs.mode_b] = total - na;
      out.push_back({occ, rotated[na]});
    }
  }
  return PureState::from_entries(m, std::move(out));
}

PureState apply_network(const PureState& state, const NetworkSpec& net) {
  if (state.mode_count() != mode_count(net.topology)) {
    throw ShapeError("apply_network: state has " + std::to_string(state.mode_count()) +
                     " modes, topology needs " + std::to_string(mode_count(net.topology)));
  }
  PureState out = state;
  for (const auto& bs : net.splitters) out = apply_beam_splitter(out, bs);
  return out;
}

PureState apply_kerr(const PureState& state, const KerrSpec& kerr) {
  if (!(kerr.chi > 0.0)) throw SpecError("apply_kerr: chi must be positive");
  if (kerr.acted_modes.empty()) throw SpecError("apply_kerr: no acted modes");
  std::vector<int> acted = kerr.acted_modes;
  std::sort(acted.begin(), acted.end());
  acted.erase(std::unique(acted.begin(), acted.end()), acted.end());
  for (int mode : acted) {
    if (mode < 0 || mode >= state.mode_count()) {
      throw ShapeError("apply_kerr: mode " + std::to_string(mode) + " out of range");
    }
  }
  std::vector<Amplitude> out;
  out.reserve(state.size());
  for (const auto& e : state.entries()) {
    long long photons = 0;
    for (int mode : acted) photons += e.occupation[mode];
    const double phase = -kerr.chi * kerr.time * static_cast<double>(photons * photons);
    out.push_back({e.occupation, e.value * std::polar(1.0, phase)});
  }
  return PureState::from_entries(state.mode_count(), std::move(out));
}

}  // namespace cohnet
