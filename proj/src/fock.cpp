#include "cohnet/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "cohnet/errors.hpp"
#include "cohnet/numerics.hpp"

namespace cohnet {

namespace {

constexpr double kDensityTol = 1e-12;

// Descending lexicographic order on occupation tuples.
bool before(const Occupation& a, const Occupation& b) { return b < a; }

void enumerate(int mode, int remaining, Occupation& current, std::vector<Occupation>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (mode == last) {
    current[mode] = remaining;
    out.push_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[mode] = v;
    enumerate(mode + 1, remaining - v, current, out);
  }
}

// Number of ways to put `photons` into `modes` modes.
std::size_t sector_dim(int modes, int photons) {
  if (modes == 0) return photons == 0 ? 1 : 0;
  return binomial(static_cast<std::size_t>(photons + modes - 1),
                  static_cast<std::size_t>(modes - 1));
}

struct KeepSplit {
  std::vector<int> kept;
  std::vector<int> traced;
};

KeepSplit split_modes(int mode_count, std::span<const int> keep_modes) {
  std::vector<int> kept(keep_modes.begin(), keep_modes.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (int m : kept) {
    if (m < 0 || m >= mode_count) {
      throw ShapeError("partial_trace: mode " + std::to_string(m) + " outside [0, " +
                       std::to_string(mode_count) + ")");
    }
  }
  if (kept.empty() || static_cast<int>(kept.size()) == mode_count) {
    throw InvalidBipartition("partial_trace: keep set must be a nonempty strict subset of modes");
  }
  std::vector<int> traced;
  for (int m = 0; m < mode_count; ++m) {
    if (!std::binary_search(kept.begin(), kept.end(), m)) traced.push_back(m);
  }
  return {std::move(kept), std::move(traced)};
}

Occupation pick(const Occupation& occ, const std::vector<int>& modes) {
  Occupation out;
  out.reserve(modes.size());
  for (int m : modes) out.push_back(occ[m]);
  return out;
}

void check_truncation(const Occupation& kept, std::optional<int> max_occupation) {
  if (!max_occupation) return;
  for (int v : kept) {
    if (v > *max_occupation) {
      throw TruncationExceeded("partial_trace: kept occupation " + std::to_string(v) +
                               " exceeds cutoff " + std::to_string(*max_occupation));
    }
  }
}

std::vector<Occupation> sorted_unique(std::vector<Occupation> v) {
  std::sort(v.begin(), v.end(), before);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t index_in(const std::vector<Occupation>& sorted, const Occupation& occ) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), occ, before);
  return static_cast<std::size_t>(it - sorted.begin());
}

CMatrix normalized_by_trace(CMatrix rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw NumericalError("partial_trace: input has zero norm");
  rho *= Complex{1.0 / tr, 0.0};
  return rho;
}

}  // namespace

int total_photons(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

Occupation concat(const Occupation& a, const Occupation& b) {
  Occupation out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    // r * num / i is exact at every step because r * num = C(n-k+i, i) * i.
    if (r > std::numeric_limits<std::size_t>::max() / num) {
      throw NumericalError("binomial: overflow");
    }
    r = r * num / i;
  }
  return r;
}

// ---------------------------------------------------------------------------
// SectorBasis

SectorBasis::SectorBasis(int mode_count, int total_photons)
    : mode_count_(mode_count), total_photons_(total_photons) {
  if (mode_count < 1) throw ShapeError("SectorBasis: mode_count must be >= 1");
  if (total_photons < 0) throw SectorMismatch("SectorBasis: negative photon count");
  tuples_.reserve(sector_dim(mode_count, total_photons));
  Occupation current(mode_count, 0);
  enumerate(0, total_photons, current, tuples_);
}

std::size_t SectorBasis::rank(const Occupation& occ) const {
  if (static_cast<int>(occ.size()) != mode_count_) {
    throw SectorMismatch("rank: tuple length " + std::to_string(occ.size()) + " != " +
                         std::to_string(mode_count_));
  }
  if (std::any_of(occ.begin(), occ.end(), [](int v) { return v < 0; }) ||
      cohnet::total_photons(occ) != total_photons_) {
    throw SectorMismatch("rank: tuple does not sum to " + std::to_string(total_photons_));
  }
  // Count the tuples that precede occ: same prefix, larger entry at mode i.
  std::size_t r = 0;
  int remaining = total_photons_;
  for (int i = 0; i + 1 < mode_count_; ++i) {
    const int tail_modes = mode_count_ - i - 1;
    for (int v = remaining; v > occ[i]; --v) r += sector_dim(tail_modes, remaining - v);
    remaining -= occ[i];
  }
  return r;
}

const Occupation& SectorBasis::unrank(std::size_t index) const {
  if (index >= tuples_.size()) {
    throw SectorMismatch("unrank: index " + std::to_string(index) + " outside sector of dim " +
                         std::to_string(tuples_.size()));
  }
  return tuples_[index];
}

// ---------------------------------------------------------------------------
// PureState

PureState PureState::from_entries(int mode_count, std::vector<Amplitude> entries) {
  for (const auto& e : entries) {
    if (static_cast<int>(e.occupation.size()) != mode_count) {
      throw ShapeError("PureState: tuple length " + std::to_string(e.occupation.size()) +
                       " != mode count " + std::to_string(mode_count));
    }
    if (std::any_of(e.occupation.begin(), e.occupation.end(), [](int v) { return v < 0; })) {
      throw ShapeError("PureState: negative occupation");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Amplitude& a, const Amplitude& b) { return before(a.occupation, b.occupation); });
  PureState out(mode_count);
  out.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().occupation == e.occupation) {
      out.entries_.back().value += e.value;
    } else {
      out.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(out.entries_, [](const Amplitude& a) { return std::abs(a.value) < kPruneThreshold; });
  return out;
}

PureState PureState::basis_state(const Occupation& occ) {
  return from_entries(static_cast<int>(occ.size()), {Amplitude{occ, Complex{1.0, 0.0}}});
}

Complex PureState::amplitude(const Occupation& occ) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), occ,
                             [](const Amplitude& a, const Occupation& o) { return before(a.occupation, o); });
  if (it != entries_.end() && it->occupation == occ) return it->value;
  return Complex{0.0, 0.0};
}

double PureState::norm_squared() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e.value);
  return s;
}

PureState PureState::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw NumericalError("normalized: zero vector");
  return scaled(Complex{1.0 / std::sqrt(n2), 0.0});
}

PureState PureState::scaled(Complex factor) const {
  PureState out(mode_count_);
  out.entries_.reserve(entries_.size());
  for (const auto& e : entries_) {
    const Complex v = e.value * factor;
    if (std::abs(v) >= kPruneThreshold) out.entries_.push_back({e.occupation, v});
  }
  return out;
}

PureState linear_combination(Complex a, const PureState& x, Complex b, const PureState& y) {
  if (x.mode_count() != y.mode_count()) throw ShapeError("linear_combination: mode counts differ");
  std::vector<Amplitude> entries;
  entries.reserve(x.size() + y.size());
  for (const auto& e : x.entries()) entries.push_back({e.occupation, a * e.value});
  for (const auto& e : y.entries()) entries.push_back({e.occupation, b * e.value});
  return PureState::from_entries(x.mode_count(), std::move(entries));
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.mode_count() != b.mode_count()) {
    throw ShapeError("inner_product: mode counts " + std::to_string(a.mode_count()) + " and " +
                     std::to_string(b.mode_count()) + " differ");
  }
  Complex acc{0.0, 0.0};
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->occupation == ib->occupation) {
      acc += std::conj(ia->value) * ib->value;
      ++ia;
      ++ib;
    } else if (before(ia->occupation, ib->occupation)) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return acc;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner_product(a, b)); }

double max_amplitude_diff(const PureState& a, const PureState& b) {
  if (a.mode_count() != b.mode_count()) throw ShapeError("max_amplitude_diff: mode counts differ");
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e.value - b.amplitude(e.occupation)));
  for (const auto& e : b.entries()) m = std::max(m, std::abs(e.value - a.amplitude(e.occupation)));
  return m;
}

PureState tensor(const PureState& a, const PureState& b) {
  // Concatenating keys of two descending lists, outer loop over a, is already
  // in descending order.
  std::vector<Amplitude> entries;
  entries.reserve(a.size() * b.size());
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      entries.push_back({concat(ea.occupation, eb.occupation), ea.value * eb.value});
    }
  }
  return PureState::from_entries(a.mode_count() + b.mode_count(), std::move(entries));
}

PureState tensor(std::span<const PureState> factors) {
  if (factors.empty()) throw ShapeError("tensor: no factors");
  PureState out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::vector<Occupation> basis, CMatrix rho)
    : basis_(std::move(basis)), rho_(std::move(rho)) {
  if (!rho_.square() || rho_.rows() != basis_.size()) {
    throw ShapeError("DensityMatrix: matrix size does not match basis size");
  }
  double herm = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i; j < dim(); ++j) {
      herm = std::max(herm, std::abs(rho_(i, j) - std::conj(rho_(j, i))));
    }
  }
  if (herm > kDensityTol) {
    throw NumericalError("DensityMatrix: not Hermitian, residual " + std::to_string(herm));
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kDensityTol) {
    throw NumericalError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const PureState unit = psi.normalized();
  std::vector<Occupation> basis;
  std::vector<Complex> amps;
  for (const auto& e : unit.entries()) {
    basis.push_back(e.occupation);
    amps.push_back(e.value);
  }
  CMatrix rho = CMatrix::outer(amps, amps);
  return DensityMatrix(std::move(basis), std::move(rho));
}

std::optional<std::size_t> DensityMatrix::index_of(const Occupation& occ) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i] == occ) return i;
  }
  return std::nullopt;
}

double DensityMatrix::purity() const {
  double p = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) p += std::norm(rho_(i, j));
  }
  return p;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  return eig_hermitian(HermitianMatrix(rho_)).eigenvalues;
}

bool DensityMatrix::is_psd() const {
  const auto ev = eigenvalues();
  return ev.empty() || ev.front() >= -kPsdSlack;
}

// ---------------------------------------------------------------------------
// Partial trace

DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep_modes,
                            std::optional<int> max_occupation) {
  const auto [kept_modes, traced_modes] = split_modes(psi.mode_count(), keep_modes);

  std::vector<Occupation> kept_tuples;
  kept_tuples.reserve(psi.size());
  for (const auto& e : psi.entries()) kept_tuples.push_back(pick(e.occupation, kept_modes));
  for (const auto& k : kept_tuples) check_truncation(k, max_occupation);
  const std::vector<Occupation> basis = sorted_unique(kept_tuples);

  // traced tuple -> (kept index, amplitude)
  std::map<Occupation, std::vector<std::pair<std::size_t, Complex>>> groups;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const auto& e = psi.entries()[i];
    groups[pick(e.occupation, traced_modes)].emplace_back(index_in(basis, kept_tuples[i]), e.value);
  }

  CMatrix rho(basis.size(), basis.size());
  for (const auto& [traced, members] : groups) {
    for (const auto& [i, ai] : members) {
      for (const auto& [j, aj] : members) {
        if (j < i) continue;
        rho(i, j) += ai * std::conj(aj);
      }
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < basis.size(); ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(basis, normalized_by_trace(std::move(rho)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_modes,
                            std::optional<int> max_occupation) {
  if (rho.dim() == 0) throw ShapeError("partial_trace: empty density matrix");
  const int mode_count = static_cast<int>(rho.basis().front().size());
  for (const auto& occ : rho.basis()) {
    if (static_cast<int>(occ.size()) != mode_count) {
      throw ShapeError("partial_trace: basis tuples of unequal length");
    }
  }
  const auto [kept_modes, traced_modes] = split_modes(mode_count, keep_modes);

  std::vector<Occupation> kept_tuples;
  std::vector<Occupation> traced_tuples;
  for (const auto& occ : rho.basis()) {
    kept_tuples.push_back(pick(occ, kept_modes));
    traced_tuples.push_back(pick(occ, traced_modes));
    check_truncation(kept_tuples.back(), max_occupation);
  }
  const std::vector<Occupation> basis = sorted_unique(kept_tuples);

  std::map<Occupation, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rho.dim(); ++i) groups[traced_tuples[i]].push_back(i);

  CMatrix out(basis.size(), basis.size());
  for (const auto& [traced, members] : groups) {
    for (std::size_t r : members) {
      const std::size_t i = index_in(basis, kept_tuples[r]);
      for (std::size_t c : members) {
        out(i, index_in(basis, kept_tuples[c])) += rho(r, c);
      }
    }
  }
  return DensityMatrix(basis, normalized_by_trace(std::move(out)));
}

}  // namespace cohnet
