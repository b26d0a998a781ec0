#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cohnet/matrix.hpp"

namespace cohnet {

// Photons per mode, |n_0, n_1, ..., n_{m-1}>.
using Occupation = std::vector<int>;

// Amplitudes below this magnitude are dropped after every operator application.
inline constexpr double kPruneThreshold = 1e-15;

int total_photons(const Occupation& occ);
Occupation concat(const Occupation& a, const Occupation& b);

// Exact binomial coefficient; throws NumericalError on size_t overflow.
std::size_t binomial(std::size_t n, std::size_t k);

// All occupation tuples over `mode_count` modes holding exactly
// `total_photons` photons, in descending lexicographic order:
// (n,0,...,0) has rank 0 and (0,...,0,n) has rank dim-1.
class SectorBasis {
 public:
  SectorBasis(int mode_count, int total_photons);

  int mode_count() const { return mode_count_; }
  int total_photons() const { return total_photons_; }
  std::size_t dim() const { return tuples_.size(); }

  // Combinatorial rank; throws SectorMismatch for tuples outside the sector.
  std::size_t rank(const Occupation& occ) const;
  const Occupation& unrank(std::size_t index) const;
  std::span<const Occupation> tuples() const { return tuples_; }

 private:
  int mode_count_;
  int total_photons_;
  std::vector<Occupation> tuples_;
};

struct Amplitude {
  Occupation occupation;
  Complex value;
};

// Sparse pure state over `mode_count` bosonic modes. Entries are kept sorted
// in descending lexicographic order of their occupation tuples with no
// duplicates and no magnitude below kPruneThreshold. Values are immutable;
// every transformation returns a new state.
class PureState {
 public:
  explicit PureState(int mode_count) : mode_count_(mode_count) {}

  // Sorts, merges duplicate tuples and prunes. Throws ShapeError on a tuple
  // of the wrong length or with a negative entry.
  static PureState from_entries(int mode_count, std::vector<Amplitude> entries);
  // The normalized basis ket |occ>.
  static PureState basis_state(const Occupation& occ);

  int mode_count() const { return mode_count_; }
  std::span<const Amplitude> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Complex amplitude(const Occupation& occ) const;
  double norm_squared() const;
  // Throws NumericalError on the zero vector.
  PureState normalized() const;
  PureState scaled(Complex factor) const;

 private:
  int mode_count_;
  std::vector<Amplitude> entries_;
};

// a*x + b*y, pruned. Throws ShapeError on mode-count mismatch.
PureState linear_combination(Complex a, const PureState& x, Complex b, const PureState& y);

// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const PureState& b);
// max over the union of supports of |a(t) - b(t)|.
double max_amplitude_diff(const PureState& a, const PureState& b);

PureState tensor(const PureState& a, const PureState& b);
PureState tensor(std::span<const PureState> factors);

// Dense density matrix over an explicit list of occupation tuples. The
// constructor enforces Hermiticity and unit trace within 1e-12.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<Occupation> basis, CMatrix rho);

  // |psi><psi| over the support of psi (psi is normalized first).
  static DensityMatrix from_pure(const PureState& psi);

  std::size_t dim() const { return basis_.size(); }
  std::span<const Occupation> basis() const { return basis_; }
  const CMatrix& matrix() const { return rho_; }
  Complex operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }

  std::optional<std::size_t> index_of(const Occupation& occ) const;
  double purity() const;
  std::vector<double> eigenvalues() const;
  // Every eigenvalue above -1e-10.
  bool is_psd() const;

 private:
  std::vector<Occupation> basis_;
  CMatrix rho_;
};

// Reduced density matrix on `keep_modes`. The induced basis is the set of
// kept sub-tuples occurring in the input, ordered like SectorBasis, over
// the kept modes in ascending index order. When `max_occupation` is given,
// support with any kept mode above it throws TruncationExceeded.
DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep_modes,
                            std::optional<int> max_occupation = std::nullopt);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_modes,
                            std::optional<int> max_occupation = std::nullopt);

}  // namespace cohnet
