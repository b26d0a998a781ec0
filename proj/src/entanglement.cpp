#include "cohnet/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cohnet/coherent.hpp"
#include "cohnet/errors.hpp"
#include "cohnet/numerics.hpp"

namespace cohnet {

namespace {

constexpr double kRealOverlapTol = 1e-12;
constexpr double kSwapTol = 1e-12;
constexpr double kLogicalBasisTol = 1e-12;
constexpr double kSpanLeakTol = 1e-9;
// Anchor angle for the generated families; keeps every block angle in (-pi, pi).
constexpr double kBaseAngle = 0.35;
constexpr double kBaseStep = 0.4;
constexpr double kSwapBase = 0.6;

PureState block_product(const std::vector<Complex>& labels, int n, std::size_t first, std::size_t last) {
  std::vector<PureState> blocks;
  for (std::size_t i = first; i < last; ++i) blocks.push_back(su2_coherent({n, labels[i]}));
  return tensor(blocks);
}

// Orthonormal pair spanning {v0, v1}: (v0, (v1 - <v0|v1> v0)/norm). When v1
// is parallel to v0 and `allow_completion` is set, the second vector is
// completed from basis kets instead.
std::pair<PureState, PureState> gram_schmidt(const PureState& v0, const PureState& v1,
                                             bool allow_completion) {
  const Complex s = inner_product(v0, v1);
  const double residual = 1.0 - std::norm(s);
  if (residual > kLogicalBasisTol) {
    return {v0, linear_combination(1.0, v1, -s, v0).scaled(1.0 / std::sqrt(residual))};
  }
  if (!allow_completion) {
    throw DegenerateLogicalBasis("logical basis: branches coincide (|overlap| = " +
                                 std::to_string(std::abs(s)) + ")");
  }
  for (const auto& e : v0.entries()) {
    const PureState ket = PureState::basis_state(e.occupation);
    const Complex t = inner_product(v0, ket);
    const double r = 1.0 - std::norm(t);
    if (r > 0.5) return {v0, linear_combination(1.0, ket, -t, v0).scaled(1.0 / std::sqrt(r))};
  }
  // v0 sits on one ket; any other ket of the same mode count is orthogonal.
  Occupation occ = v0.entries().front().occupation;
  occ.back() += 1;
  return {v0, PureState::basis_state(occ)};
}

Occupation slice(const Occupation& occ, std::size_t first, std::size_t last) {
  return Occupation(occ.begin() + static_cast<std::ptrdiff_t>(first),
                    occ.begin() + static_cast<std::ptrdiff_t>(last));
}

// sqrt(rho) keeping only eigenvalues above kRankTol * max; roundoff in the
// null space would otherwise enter the lambdas at first order.
CMatrix rank_truncated_root(const DensityMatrix& rho) {
  const auto eig = eig_hermitian(HermitianMatrix(rho.matrix()));
  const double top = std::max(eig.eigenvalues.back(), 0.0);
  if (eig.eigenvalues.front() < -kPsdSlack) {
    throw NotPSD("density matrix has eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  const std::size_t d = rho.dim();
  CMatrix root(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double mu = eig.eigenvalues[k];
    if (mu <= kRankTol * top) continue;
    const double s = std::sqrt(mu);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        root(i, j) += s * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
      }
    }
  }
  return root;
}

CMatrix spin_flip_operator() {
  const CMatrix sy(2, 2, {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}});
  return kron(sy, sy);
}

const std::vector<Occupation>& two_qubit_labels() {
  static const std::vector<Occupation> labels{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  return labels;
}

// Hermitian part with unit trace.
CMatrix tidy_density(CMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = h;
      m(j, i) = std::conj(h);
    }
  }
  const double tr = m.trace().real();
  m *= Complex{1.0 / tr, 0.0};
  return m;
}

void check_swap_condition(const SuperpositionSpec& spec) {
  const auto close = [](Complex a, Complex b) {
    return std::abs(a - b) <= kSwapTol * (1.0 + std::abs(a));
  };
  if (!close(spec.alphas[0], spec.alphas_prime[1]) || !close(spec.alphas[1], spec.alphas_prime[0])) {
    throw SpecError("mixed concurrence closed form needs alpha_1 = alpha'_3 and alpha_3 = alpha'_1");
  }
}

double real_overlap(int n, Complex a, Complex b) {
  const Complex s = su2_overlap(n, a, b);
  if (std::abs(s.imag()) > kRealOverlapTol) {
    throw SpecError("overlap <" + std::to_string(a.imag()) + "|" + std::to_string(b.imag()) +
                    "> is complex; only real overlaps are supported");
  }
  return s.real();
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs and overlaps

SuperpositionSpec SuperpositionSpec::from_angles(int n, std::span<const double> angles,
                                                 std::span<const double> angles_prime, double theta) {
  if (angles.size() != angles_prime.size()) throw SpecError("from_angles: angle lists differ in length");
  SuperpositionSpec spec;
  spec.n = n;
  spec.theta = theta;
  for (double a : angles) spec.alphas.push_back(alpha_from_angle(a));
  for (double a : angles_prime) spec.alphas_prime.push_back(alpha_from_angle(a));
  return spec;
}

SuperpositionSpec SuperpositionSpec::uniform(int n, int p, double phi, double theta) {
  std::vector<double> angles;
  std::vector<double> primes;
  for (int i = 0; i < p; ++i) {
    const double base = kBaseAngle + kBaseStep * (i % 5);
    angles.push_back(base);
    primes.push_back(base - 2.0 * phi);
  }
  return from_angles(n, angles, primes, theta);
}

SuperpositionSpec SuperpositionSpec::swapped(int n, int p, double phi13, double phi_rest, double theta) {
  if (p < 2) throw SpecError("swapped: need p >= 2");
  std::vector<double> angles{kSwapBase + phi13, kSwapBase - phi13};
  std::vector<double> primes{kSwapBase - phi13, kSwapBase + phi13};
  for (int i = 2; i < p; ++i) {
    angles.push_back(kSwapBase + phi_rest);
    primes.push_back(kSwapBase - phi_rest);
  }
  return from_angles(n, angles, primes, theta);
}

double OverlapVector::product(std::size_t first, std::size_t last) const {
  double r = 1.0;
  for (std::size_t i = first; i < last && i < c.size(); ++i) r *= c[i];
  return r;
}

OverlapVector overlaps(const SuperpositionSpec& spec) {
  if (spec.alphas.size() != spec.alphas_prime.size()) {
    throw SpecError("superposition: label lists differ in length");
  }
  OverlapVector out;
  for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
    out.c.push_back(real_overlap(spec.n, spec.alphas[i], spec.alphas_prime[i]));
  }
  return out;
}

OverlapVector validate(const SuperpositionSpec& spec) {
  if (spec.p() < 2) throw SpecError("superposition: need p >= 2 blocks");
  if (spec.n < 1) throw SpecError("superposition: need n >= 1 photons per block");
  OverlapVector c = overlaps(spec);
  const double inv = inverse_norm_squared(c, spec.theta);
  if (inv <= kDegenerateNormTol) {
    throw DegenerateSuperposition("superposition is null: N_p^-2 = " + std::to_string(inv));
  }
  return c;
}

OverlapVector overlaps_from_angles(std::span<const double> angles,
                                   std::span<const double> angles_prime, int n) {
  if (angles.size() != angles_prime.size()) {
    throw SpecError("overlaps_from_angles: angle lists differ in length");
  }
  OverlapVector out;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    out.c.push_back(std::pow(std::cos((angles[i] - angles_prime[i]) / 2.0), n));
  }
  return out;
}

double inverse_norm_squared(const OverlapVector& c, double theta) {
  return 2.0 * (1.0 + c.product() * std::cos(theta));
}

PureState build_superposition(const SuperpositionSpec& spec) {
  const OverlapVector c = validate(spec);
  const std::size_t p = spec.alphas.size();
  const PureState branch = block_product(spec.alphas, spec.n, 0, p);
  const PureState branch_prime = block_product(spec.alphas_prime, spec.n, 0, p);
  const double norm = 1.0 / std::sqrt(inverse_norm_squared(c, spec.theta));
  return linear_combination(norm, branch, norm * std::polar(1.0, spec.theta), branch_prime);
}

// ---------------------------------------------------------------------------
// Closed forms

double concurrence_pure_closed(const OverlapVector& c, int q, double theta) {
  const int p = static_cast<int>(c.c.size());
  if (q < 1 || q >= p) {
    throw InvalidBipartition("bipartition q = " + std::to_string(q) + " outside [1, " +
                             std::to_string(p - 1) + "]");
  }
  const double first = c.product(0, q);
  const double second = c.product(q, p);
  const double denom = 1.0 + c.product() * std::cos(theta);
  if (denom <= kDegenerateNormTol) {
    throw DegenerateSuperposition("concurrence denominator " + std::to_string(denom) + " vanishes");
  }
  const double numer = std::sqrt(std::max(0.0, 1.0 - first * first)) *
                       std::sqrt(std::max(0.0, 1.0 - second * second));
  return std::min(1.0, numer / denom);
}

double concurrence_pure_uniform(double c, int n, int p, int q, double theta) {
  if (c < 0.0 || c > 1.0) throw SpecError("uniform overlap c must lie in [0, 1]");
  if (q < 1 || q >= p) {
    throw InvalidBipartition("bipartition q = " + std::to_string(q) + " outside [1, " +
                             std::to_string(p - 1) + "]");
  }
  const double denom = 1.0 + std::pow(c, n * p) * std::cos(theta);
  if (denom <= kDegenerateNormTol) {
    throw DegenerateSuperposition("concurrence denominator " + std::to_string(denom) + " vanishes");
  }
  const double a = std::sqrt(1.0 - std::pow(c, 2 * n * q));
  const double b = std::sqrt(1.0 - std::pow(c, 2 * n * (p - q)));
  return std::min(1.0, a * b / denom);
}

// ---------------------------------------------------------------------------
// Numeric route

DensityMatrix logical_qubit_density(const PureState& state, const SuperpositionSpec& spec, int q) {
  const int p = spec.p();
  if (q < 1 || q >= p) {
    throw InvalidBipartition("bipartition q = " + std::to_string(q) + " outside [1, " +
                             std::to_string(p - 1) + "]");
  }
  if (state.mode_count() != 2 * p) throw ShapeError("logical_qubit_density: state is not 2p-mode");
  const auto uq = static_cast<std::size_t>(q);
  const auto up = static_cast<std::size_t>(p);

  const auto [e0, e1] = gram_schmidt(block_product(spec.alphas, spec.n, 0, uq),
                                     block_product(spec.alphas_prime, spec.n, 0, uq), false);
  const auto [f0, f1] = gram_schmidt(block_product(spec.alphas_prime, spec.n, uq, up),
                                     block_product(spec.alphas, spec.n, uq, up), false);

  // psi_ij = <e_i x f_j | state>.
  std::array<Complex, 4> psi{};
  const std::size_t split = 2 * uq;
  for (const auto& e : state.entries()) {
    const Occupation left = slice(e.occupation, 0, split);
    const Occupation right = slice(e.occupation, split, e.occupation.size());
    const std::array<Complex, 2> l{std::conj(e0.amplitude(left)), std::conj(e1.amplitude(left))};
    const std::array<Complex, 2> r{std::conj(f0.amplitude(right)), std::conj(f1.amplitude(right))};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) psi[2 * i + j] += l[i] * r[j] * e.value;
    }
  }
  double captured = 0.0;
  for (const auto& a : psi) captured += std::norm(a);
  if (std::abs(captured - state.norm_squared()) > kSpanLeakTol) {
    throw NumericalError("logical_qubit_density: state leaves the logical span by " +
                         std::to_string(state.norm_squared() - captured));
  }
  for (auto& a : psi) a /= std::sqrt(captured);
  return DensityMatrix(two_qubit_labels(), tidy_density(CMatrix::outer(psi, psi)));
}

double pure_state_concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw ShapeError("pure_state_concurrence: needs a 4x4 density matrix");
  const Complex r00 = rho(0, 0) + rho(1, 1);
  const Complex r11 = rho(2, 2) + rho(3, 3);
  const Complex r01 = rho(0, 2) + rho(1, 3);
  const double det = (r00 * r11).real() - std::norm(r01);
  return 2.0 * std::sqrt(std::max(0.0, det));
}

std::vector<double> spin_flip_spectrum(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw ShapeError("spin_flip_spectrum: needs a 4x4 density matrix");
  // lambda_i are the singular values of sqrt(rho) Y sqrt(rho)*, read off the
  // Hermitian dilation [[0, M], [M^+, 0]] so small ones are not squared.
  const CMatrix root = rank_truncated_root(rho);
  const CMatrix m = root * spin_flip_operator() * root.conjugate();
  CMatrix dilation(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, j + 4) = m(i, j);
      dilation(j + 4, i) = std::conj(m(i, j));
    }
  }
  const auto mu = eig_hermitian(HermitianMatrix(dilation)).eigenvalues;
  std::vector<double> lambda;
  for (std::size_t i = 4; i < 8; ++i) lambda.push_back(std::max(0.0, mu[i]));
  std::sort(lambda.rbegin(), lambda.rend());
  return lambda;
}

double wootters_concurrence(const DensityMatrix& rho) {
  const auto l = spin_flip_spectrum(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

DensityMatrix block_pair_density(const PureState& state, int block_a, int block_b) {
  const int p = state.mode_count() / 2;
  if (block_a < 0 || block_b < 0 || block_a >= p || block_b >= p || block_a == block_b) {
    throw ShapeError("block_pair_density: invalid block pair");
  }
  if (p == 2) return DensityMatrix::from_pure(state);
  const std::array<int, 4> keep{2 * block_a, 2 * block_a + 1, 2 * block_b, 2 * block_b + 1};
  return partial_trace(state, keep);
}

DensityMatrix reduced_pair_density(const SuperpositionSpec& spec) {
  return block_pair_density(build_superposition(spec), 0, 1);
}

DensityMatrix reduced_pair_density_closed(const SuperpositionSpec& spec,
                                          std::span<const Occupation> basis) {
  const OverlapVector c = validate(spec);
  const PureState b = block_product(spec.alphas, spec.n, 0, 2);
  const PureState bp = block_product(spec.alphas_prime, spec.n, 0, 2);
  std::vector<Complex> v(basis.size());
  std::vector<Complex> vp(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    v[i] = b.amplitude(basis[i]);
    vp[i] = bp.amplitude(basis[i]);
  }
  const double rest = c.product(2, c.c.size());
  const double weight = 1.0 / inverse_norm_squared(c, spec.theta);
  CMatrix rho = CMatrix::outer(v, v);
  rho += (rest * std::polar(1.0, -spec.theta)) * CMatrix::outer(v, vp);
  rho += (rest * std::polar(1.0, spec.theta)) * CMatrix::outer(vp, v);
  rho += CMatrix::outer(vp, vp);
  rho *= Complex{weight, 0.0};
  return DensityMatrix(std::vector<Occupation>(basis.begin(), basis.end()), std::move(rho));
}

DensityMatrix mixed_logical_density(const DensityMatrix& rho13, const SuperpositionSpec& spec) {
  if (spec.p() < 2) throw SpecError("mixed_logical_density: need p >= 2");
  const PureState a1 = su2_coherent({spec.n, spec.alphas[0]});
  const PureState a3 = su2_coherent({spec.n, spec.alphas[1]});
  // When a_1 = a_3 rho13 lives on |a_1 a_1> and any completion of the basis works.
  const auto [e0, e1] = gram_schmidt(a1, a3, true);
  const std::array<const PureState*, 2> e{&e0, &e1};

  CMatrix w(rho13.dim(), 4);
  for (std::size_t r = 0; r < rho13.dim(); ++r) {
    const auto& occ = rho13.basis()[r];
    if (occ.size() != 4) throw ShapeError("mixed_logical_density: rho13 must be over 4 modes");
    const Occupation left = slice(occ, 0, 2);
    const Occupation right = slice(occ, 2, 4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) w(r, 2 * i + j) = e[i]->amplitude(left) * e[j]->amplitude(right);
    }
  }
  CMatrix logical = w.adjoint() * rho13.matrix() * w;
  const double tr = logical.trace().real();
  if (std::abs(tr - 1.0) > kSpanLeakTol) {
    throw NumericalError("mixed_logical_density: rho13 leaves the logical span, trace " +
                         std::to_string(tr));
  }
  return DensityMatrix(two_qubit_labels(), tidy_density(std::move(logical)));
}

double concurrence_mixed_closed(const SuperpositionSpec& spec) {
  const OverlapVector c = validate(spec);
  check_swap_condition(spec);
  const double s = real_overlap(spec.n, spec.alphas[0], spec.alphas[1]);
  const double rest = c.product(2, c.c.size());
  const double denom = 1.0 + c.product() * std::cos(spec.theta);
  return std::min(1.0, (1.0 - s * s) * rest / denom);
}

std::vector<double> mixed_spectrum_closed(const SuperpositionSpec& spec) {
  const OverlapVector c = validate(spec);
  check_swap_condition(spec);
  const double s = real_overlap(spec.n, spec.alphas[0], spec.alphas[1]);
  const double rest = c.product(2, c.c.size());
  const double weight = 1.0 / inverse_norm_squared(c, spec.theta);
  std::vector<double> l{weight * (1.0 - s * s) * (1.0 + rest), weight * (1.0 - s * s) * (1.0 - rest),
                        0.0, 0.0};
  std::sort(l.rbegin(), l.rend());
  return l;
}

// ---------------------------------------------------------------------------
// Reports

ConcurrenceReport pure_report(const SuperpositionSpec& spec, int q) {
  ConcurrenceReport r;
  r.closed_form = concurrence_pure_closed(validate(spec), q, spec.theta);
  const PureState state = build_superposition(spec);
  try {
    r.numeric = wootters_concurrence(logical_qubit_density(state, spec, q));
  } catch (const DegenerateLogicalBasis&) {
    r.numeric = 0.0;
  }
  r.discrepancy = std::abs(r.closed_form - r.numeric);
  return r;
}

MixedReport mixed_report(const SuperpositionSpec& spec) {
  MixedReport r;
  r.concurrence.closed_form = concurrence_mixed_closed(spec);
  const DensityMatrix logical = mixed_logical_density(reduced_pair_density(spec), spec);
  r.spectrum = spin_flip_spectrum(logical);
  r.concurrence.numeric =
      std::clamp(r.spectrum[0] - r.spectrum[1] - r.spectrum[2] - r.spectrum[3], 0.0, 1.0);
  r.concurrence.discrepancy = std::abs(r.concurrence.closed_form - r.concurrence.numeric);
  return r;
}

}  // namespace cohnet
