#pragma once

#include <span>
#include <vector>

#include "cohnet/fock.hpp"

namespace cohnet {

// Lower bound on 2(1 + c_1 c_3 ... cos theta) below which the superposition
// is rejected as null.
inline constexpr double kDegenerateNormTol = 1e-10;
// Relative eigenvalue floor below which rho is treated as rank deficient in
// the spin-flip spectrum.
inline constexpr double kRankTol = 1e-13;

// N_p [ |a_1> x ... x |a_p> + e^{i theta} |a'_1> x ... x |a'_p> ] over 2p
// modes, each |a_i> an SU(2) coherent state of n photons on modes (2i, 2i+1).
struct SuperpositionSpec {
  int n = 1;
  std::vector<Complex> alphas;
  std::vector<Complex> alphas_prime;
  double theta = 0.0;

  int p() const { return static_cast<int>(alphas.size()); }

  // alpha_i = i tan(theta_i / 2) for each block angle.
  static SuperpositionSpec from_angles(int n, std::span<const double> angles,
                                       std::span<const double> angles_prime, double theta);
  // Uniform overlap family: block i uses angles base_i and base_i - 2 phi, so
  // every overlap equals cos(phi)^n.
  static SuperpositionSpec uniform(int n, int p, double phi, double theta);
  // Swap-condition family for the mixed two-pair analysis:
  // alpha_1 = i tan((base+phi13)/2), alpha_3 = i tan((base-phi13)/2),
  // alpha'_1 = alpha_3, alpha'_3 = alpha_1; blocks 3..p use base +- phi_rest.
  static SuperpositionSpec swapped(int n, int p, double phi13, double phi_rest, double theta);
};

// c_i = <a_i|a'_i>, required real.
struct OverlapVector {
  std::vector<double> c;

  double product(std::size_t first, std::size_t last) const;  // c_first ... c_{last-1}
  double product() const { return product(0, c.size()); }
};

// Checks p >= 2, n >= 1, matching sizes, real overlaps (|Im| <= 1e-12) and a
// non-degenerate normalization. Throws SpecError or DegenerateSuperposition.
OverlapVector validate(const SuperpositionSpec& spec);
OverlapVector overlaps(const SuperpositionSpec& spec);
// c_i = cos((theta_i - theta'_i)/2)^n.
OverlapVector overlaps_from_angles(std::span<const double> angles,
                                   std::span<const double> angles_prime, int n);

// 2 (1 + c_1 c_3 ... c_{2p-1} cos theta).
double inverse_norm_squared(const OverlapVector& c, double theta);

PureState build_superposition(const SuperpositionSpec& spec);

// Closed-form concurrence of the (q, p-q) block bipartition.
double concurrence_pure_closed(const OverlapVector& c, int q, double theta);
// Same with every overlap equal to c^n (c = cos phi).
double concurrence_pure_uniform(double c, int n, int p, int q, double theta);

// The global state written in the logical basis {|0>_q, |1>_q} x {|0>_{p-q}, |1>_{p-q}}
// obtained by Gram-Schmidt on the two branches of each side. Overlaps and
// coefficients are computed from the states themselves. Basis order is
// |00>, |01>, |10>, |11>. Throws DegenerateLogicalBasis when one side's
// branches coincide.
DensityMatrix logical_qubit_density(const PureState& state, const SuperpositionSpec& spec, int q);

// 2 sqrt(det rho_1) for a pure two-qubit state.
double pure_state_concurrence(const DensityMatrix& rho);

// Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.
// Computed as eigenvalues of the Hermitian sqrt(rho) rho~ sqrt(rho).
std::vector<double> spin_flip_spectrum(const DensityMatrix& rho);
// max(lambda_1 - lambda_2 - lambda_3 - lambda_4, 0).
double wootters_concurrence(const DensityMatrix& rho);

// Reduced state of blocks 1 and 2 (modes 0..3): numeric partial trace of the
// built superposition.
DensityMatrix reduced_pair_density(const SuperpositionSpec& spec);
// The four-term assembly N_p^2 [ |b><b| + R e^{-i theta} |b><b'| + h.c. + |b'><b'| ]
// with b = |a_1 a_3>, b' = |a'_1 a'_3>, R = c_5 ... c_{2p-1}, expanded over `basis`.
DensityMatrix reduced_pair_density_closed(const SuperpositionSpec& spec,
                                          std::span<const Occupation> basis);
// Reduced state of an arbitrary pair of blocks (0-based block indices).
DensityMatrix block_pair_density(const PureState& state, int block_a, int block_b);

// Requires alpha_1 = alpha'_3 and alpha_3 = alpha'_1 (SpecError otherwise).
double concurrence_mixed_closed(const SuperpositionSpec& spec);
// lambda_{1,2} = N_p^2 (1 - <a_1|a_3>^2)(1 +- R).
std::vector<double> mixed_spectrum_closed(const SuperpositionSpec& spec);

// rho_13 expressed in {|a_1>, GS(|a_3>)} on each pair (swap condition).
DensityMatrix mixed_logical_density(const DensityMatrix& rho13, const SuperpositionSpec& spec);

struct ConcurrenceReport {
  double closed_form = 0.0;
  double numeric = 0.0;
  double discrepancy = 0.0;
};

struct MixedReport {
  ConcurrenceReport concurrence;
  std::vector<double> spectrum;  // numeric lambdas, descending
};

// Closed form vs Wootters on the logical-qubit state of the built superposition.
// A degenerate logical basis means a product state and reports numeric 0.
ConcurrenceReport pure_report(const SuperpositionSpec& spec, int q);
// Closed form vs Wootters on the numerically traced rho_13.
MixedReport mixed_report(const SuperpositionSpec& spec);

}  // namespace cohnet
