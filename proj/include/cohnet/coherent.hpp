#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cohnet/fock.hpp"
#include "cohnet/matrix.hpp"

namespace cohnet {

// SU(k+1) coherent state of the symmetric representation with n photons,
// labelled by xi_1..xi_k (the chain parametrization).
struct SUNCoherentLabel {
  int k = 1;
  int n = 0;
  std::vector<Complex> xi;
};

// Two-mode binomial state, amplitude(m) ~ alpha^m sqrt(C(n,m)) on |n-m, m>.
struct SU2CoherentLabel {
  int n = 0;
  Complex alpha{0.0, 0.0};
};

struct GlauberLabel {
  Complex z{0.0, 0.0};
  int cutoff = 0;
};

// Labels produced by a chain of beam splitters with angles theta_1..theta_k:
// xi_l = i t_{l+1} r_l / t_l for l < k and xi_k = i r_k / t_k.
// Throws SingularAngle when some transmission vanishes.
std::vector<Complex> xi_from_angles(std::span<const double> angles);
// alpha = i tan(theta/2), the single-splitter label.
Complex alpha_from_angle(double angle);
// zeta_i = xi_1 xi_2 ... xi_i.
std::vector<Complex> zeta_from_xi(std::span<const Complex> xi);

// log of n! / (m_0! m_1! ... m_k!).
double log_multinomial(std::span<const int> parts);

// The chain output in closed form: amplitude of |n-n_1, n_1-n_2, ..., n_k>
// is C xi_1^{n_1} ... xi_k^{n_k} sqrt(multinomial).
PureState su_coherent_closed_form(const SUNCoherentLabel& label);
// Same state expanded over the zeta variables: amplitude of
// |n - sum m_i, m_1, ..., m_k> is C zeta_1^{m_1} ... zeta_k^{m_k} sqrt(multinomial).
PureState su_coherent_from_zeta(int n, std::span<const Complex> zeta);

PureState su2_coherent(const SU2CoherentLabel& label);
// <alpha|alpha'> in closed form, ((1 + conj(a) a') / sqrt((1+|a|^2)(1+|a'|^2)))^n.
Complex su2_overlap(int n, Complex alpha, Complex alpha_prime);

// Explicit double-sum SU(3) state over (beta_i, beta_{i+1}).
PureState su3_coherent(int n, std::pair<Complex, Complex> beta);
// beta_i = i t_{i+1} r_i / t_i, beta_{i+1} = i r_{i+1} / t_{i+1}.
std::pair<Complex, Complex> beta_from_angles(double theta_i, double theta_next);

// Matrices of the Schwinger su(k+1) generators over SectorBasis(k+1, n).
// Index conventions: e_plus[i], e_minus[i], h[i] for i = 0..k-1;
// t_plus[i-1], t_minus[i-1] for i = 1..k.
struct GeneratorSet {
  int k = 0;
  int n = 0;
  std::vector<CMatrix> e_plus;   // a_i a_{i+1}^+
  std::vector<CMatrix> e_minus;  // a_i^+ a_{i+1}
  std::vector<CMatrix> h;        // a_i^+ a_i - a_{i+1}^+ a_{i+1}
  std::vector<CMatrix> t_plus;   // a_0 a_i^+
  std::vector<CMatrix> t_minus;  // a_0^+ a_i
};

GeneratorSet generator_set(int k, int n);

// Matrix of a_to^+ a_from over a sector basis (to != from).
CMatrix hop_matrix(const SectorBasis& basis, int to, int from);

// Displacement parameters tau reproducing the closed-form state labelled by xi:
// tau = zeta arctan|zeta| / |zeta| with zeta the cumulative products of xi.
std::vector<Complex> displacement_parameters(std::span<const Complex> xi);

// exp(sum_i tau_i t_i^+ - conj(tau_i) t_i^-) |n, 0, ..., 0>, by matrix
// exponentiation over the sector.
PureState displacement_state(int k, int n, std::span<const Complex> tau);

PureState glauber_truncated(const GlauberLabel& label);
// Squared norm of the truncated expansion before renormalization.
double glauber_truncated_norm(const GlauberLabel& label);

// Builds the SU(k+1) state at zeta_i = z_i / sqrt(n), drops the mode-0
// label (|n - m> taken as |n>) and returns the fidelity of the resulting
// state on modes 1..k with the truncated Glauber product |z_1>...|z_k>.
double contraction_fidelity(int k, int n, std::span<const Complex> z, int cutoff);
// <z_1..z_k| rho |z_1..z_k> with rho the partial trace over mode 0. Mode 0
// records m exactly, so rho is diagonal and the limit is sum_m |<m|z>|^4.
double traced_reservoir_fidelity(int k, int n, std::span<const Complex> z, int cutoff);

}  // namespace cohnet
