#include "cohnet/coherent.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cohnet/errors.hpp"
#include "cohnet/numerics.hpp"

namespace cohnet {

namespace {

constexpr double kSingularTransmission = 1e-12;

Complex ipow(Complex base, int exponent) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

double transmission_checked(double angle) {
  const double t = std::cos(angle / 2.0);
  if (std::abs(t) < kSingularTransmission) {
    throw SingularAngle("beam splitter angle " + std::to_string(angle) +
                        " has zero transmission; label is infinite");
  }
  return t;
}

void validate_label(const SUNCoherentLabel& label) {
  if (label.k < 1) throw SpecError("SU(k+1) label needs k >= 1");
  if (label.n < 0) throw SpecError("SU(k+1) label needs n >= 0");
  if (static_cast<int>(label.xi.size()) != label.k) {
    throw SpecError("SU(k+1) label: expected " + std::to_string(label.k) + " xi values, got " +
                    std::to_string(label.xi.size()));
  }
}

std::vector<Complex> single_mode_glauber(const GlauberLabel& label) {
  if (label.cutoff < 0) throw SpecError("glauber: cutoff must be >= 0");
  std::vector<Complex> amps(static_cast<std::size_t>(label.cutoff) + 1);
  Complex term = std::exp(-0.5 * std::norm(label.z));
  amps[0] = term;
  for (int m = 1; m <= label.cutoff; ++m) {
    term *= label.z / std::sqrt(static_cast<double>(m));
    amps[m] = term;
  }
  return amps;
}

}  // namespace

std::vector<Complex> xi_from_angles(std::span<const double> angles) {
  const std::size_t k = angles.size();
  if (k == 0) throw SpecError("xi_from_angles: need at least one angle");
  std::vector<double> t(k);
  std::vector<double> r(k);
  for (std::size_t l = 0; l < k; ++l) {
    t[l] = transmission_checked(angles[l]);
    r[l] = std::sin(angles[l] / 2.0);
  }
  std::vector<Complex> xi(k);
  for (std::size_t l = 0; l + 1 < k; ++l) xi[l] = kI * t[l + 1] * r[l] / t[l];
  xi[k - 1] = kI * r[k - 1] / t[k - 1];
  return xi;
}

Complex alpha_from_angle(double angle) {
  const double t = transmission_checked(angle);
  return kI * std::sin(angle / 2.0) / t;
}

std::vector<Complex> zeta_from_xi(std::span<const Complex> xi) {
  std::vector<Complex> zeta(xi.size());
  Complex running{1.0, 0.0};
  for (std::size_t i = 0; i < xi.size(); ++i) {
    running *= xi[i];
    zeta[i] = running;
  }
  return zeta;
}

double log_multinomial(std::span<const int> parts) {
  const int total = std::accumulate(parts.begin(), parts.end(), 0);
  double r = std::lgamma(total + 1.0);
  for (int m : parts) r -= std::lgamma(m + 1.0);
  return r;
}

PureState su_coherent_closed_form(const SUNCoherentLabel& label) {
  validate_label(label);
  const int k = label.k;

  double weight = 1.0;
  double running = 1.0;
  for (const auto& x : label.xi) {
    running *= std::norm(x);
    weight += running;
  }
  const double norm_const = std::pow(weight, -0.5 * label.n);

  const SectorBasis basis(k + 1, label.n);
  std::vector<Amplitude> entries;
  entries.reserve(basis.dim());
  for (const auto& occ : basis.tuples()) {
    // n_l = m_l + m_{l+1} + ... + m_k photons passed splitter l.
    Complex amp{norm_const, 0.0};
    int passed = 0;
    for (int l = k; l >= 1; --l) {
      passed += occ[l];
      amp *= ipow(label.xi[l - 1], passed);
    }
    amp *= std::exp(0.5 * log_multinomial(occ));
    entries.push_back({occ, amp});
  }
  return PureState::from_entries(k + 1, std::move(entries));
}

PureState su_coherent_from_zeta(int n, std::span<const Complex> zeta) {
  if (zeta.empty()) throw SpecError("su_coherent_from_zeta: need k >= 1 variables");
  if (n < 0) throw SpecError("su_coherent_from_zeta: negative photon count");
  const int k = static_cast<int>(zeta.size());
  double weight = 1.0;
  for (const auto& z : zeta) weight += std::norm(z);
  const double norm_const = std::pow(weight, -0.5 * n);

  const SectorBasis basis(k + 1, n);
  std::vector<Amplitude> entries;
  entries.reserve(basis.dim());
  for (const auto& occ : basis.tuples()) {
    Complex amp{norm_const, 0.0};
    for (int i = 1; i <= k; ++i) amp *= ipow(zeta[i - 1], occ[i]);
    amp *= std::exp(0.5 * log_multinomial(occ));
    entries.push_back({occ, amp});
  }
  return PureState::from_entries(k + 1, std::move(entries));
}

PureState su2_coherent(const SU2CoherentLabel& label) {
  if (label.n < 0) throw SpecError("su2_coherent: negative photon count");
  const double norm_const = std::pow(1.0 + std::norm(label.alpha), -0.5 * label.n);
  std::vector<Amplitude> entries;
  Complex power{1.0, 0.0};
  for (int m = 0; m <= label.n; ++m) {
    const double log_binom =
        std::lgamma(label.n + 1.0) - std::lgamma(label.n - m + 1.0) - std::lgamma(m + 1.0);
    entries.push_back({{label.n - m, m}, norm_const * std::exp(0.5 * log_binom) * power});
    power *= label.alpha;
  }
  return PureState::from_entries(2, std::move(entries));
}

Complex su2_overlap(int n, Complex alpha, Complex alpha_prime) {
  const Complex base = (1.0 + std::conj(alpha) * alpha_prime) /
                       std::sqrt((1.0 + std::norm(alpha)) * (1.0 + std::norm(alpha_prime)));
  return ipow(base, n);
}

PureState su3_coherent(int n, std::pair<Complex, Complex> beta) {
  if (n < 0) throw SpecError("su3_coherent: negative photon count");
  const auto [b1, b2] = beta;
  const double norm_const = std::pow(1.0 + std::norm(b1) + std::norm(b1 * b2), -0.5 * n);
  std::vector<Amplitude> entries;
  for (int ni = 0; ni <= n; ++ni) {
    for (int nj = 0; nj <= ni; ++nj) {
      const double log_coeff = std::lgamma(n + 1.0) - std::lgamma(n - ni + 1.0) -
                               std::lgamma(ni - nj + 1.0) - std::lgamma(nj + 1.0);
      const Complex amp = norm_const * ipow(b1, ni) * ipow(b2, nj) * std::exp(0.5 * log_coeff);
      entries.push_back({{n - ni, ni - nj, nj}, amp});
    }
  }
  return PureState::from_entries(3, std::move(entries));
}

std::pair<Complex, Complex> beta_from_angles(double theta_i, double theta_next) {
  const std::vector<double> angles{theta_i, theta_next};
  const auto xi = xi_from_angles(angles);
  return {xi[0], xi[1]};
}

CMatrix hop_matrix(const SectorBasis& basis, int to, int from) {
  if (to == from || to < 0 || from < 0 || to >= basis.mode_count() || from >= basis.mode_count()) {
    throw ShapeError("hop_matrix: invalid mode pair");
  }
  CMatrix m(basis.dim(), basis.dim());
  for (std::size_t col = 0; col < basis.dim(); ++col) {
    Occupation occ = basis.unrank(col);
    if (occ[from] == 0) continue;
    const double coeff = std::sqrt(static_cast<double>(occ[from]) * (occ[to] + 1.0));
    occ[from] -= 1;
    occ[to] += 1;
    m(basis.rank(occ), col) = coeff;
  }
  return m;
}

GeneratorSet generator_set(int k, int n) {
  if (k < 1 || n < 0) throw SpecError("generator_set: need k >= 1 and n >= 0");
  const SectorBasis basis(k + 1, n);
  GeneratorSet g{k, n, {}, {}, {}, {}, {}};
  for (int i = 0; i < k; ++i) {
    g.e_plus.push_back(hop_matrix(basis, i + 1, i));
    g.e_minus.push_back(hop_matrix(basis, i, i + 1));
    std::vector<double> diag(basis.dim());
    for (std::size_t r = 0; r < basis.dim(); ++r) {
      const auto& occ = basis.unrank(r);
      diag[r] = occ[i] - occ[i + 1];
    }
    g.h.push_back(CMatrix::diagonal(std::span<const double>(diag)));
  }
  for (int i = 1; i <= k; ++i) {
    g.t_plus.push_back(hop_matrix(basis, i, 0));
    g.t_minus.push_back(hop_matrix(basis, 0, i));
  }
  return g;
}

std::vector<Complex> displacement_parameters(std::span<const Complex> xi) {
  const auto zeta = zeta_from_xi(xi);
  double mag2 = 0.0;
  for (const auto& z : zeta) mag2 += std::norm(z);
  std::vector<Complex> tau(zeta.size(), Complex{0.0, 0.0});
  if (mag2 == 0.0) return tau;
  const double mag = std::sqrt(mag2);
  const double scale = std::atan(mag) / mag;
  for (std::size_t i = 0; i < zeta.size(); ++i) tau[i] = zeta[i] * scale;
  return tau;
}

PureState displacement_state(int k, int n, std::span<const Complex> tau) {
  if (static_cast<int>(tau.size()) != k) {
    throw SpecError("displacement_state: expected " + std::to_string(k) + " parameters");
  }
  const GeneratorSet g = generator_set(k, n);
  const SectorBasis basis(k + 1, n);
  // A = sum tau_i t_i^+ - conj(tau_i) t_i^- is anti-Hermitian; exp(A) = exp(i H), H = -i A.
  CMatrix a(basis.dim(), basis.dim());
  for (int i = 0; i < k; ++i) {
    a += tau[i] * g.t_plus[i];
    a -= std::conj(tau[i]) * g.t_minus[i];
  }
  const CMatrix u = exp_i_hermitian(HermitianMatrix(Complex{0.0, -1.0} * a), 1.0);

  std::vector<Amplitude> entries;
  entries.reserve(basis.dim());
  for (std::size_t r = 0; r < basis.dim(); ++r) entries.push_back({basis.unrank(r), u(r, 0)});
  return PureState::from_entries(k + 1, std::move(entries));
}

PureState glauber_truncated(const GlauberLabel& label) {
  const auto amps = single_mode_glauber(label);
  std::vector<Amplitude> entries;
  for (std::size_t m = 0; m < amps.size(); ++m) entries.push_back({{static_cast<int>(m)}, amps[m]});
  return PureState::from_entries(1, std::move(entries)).normalized();
}

double glauber_truncated_norm(const GlauberLabel& label) {
  double s = 0.0;
  for (const auto& a : single_mode_glauber(label)) s += std::norm(a);
  return s;
}

double contraction_fidelity(int k, int n, std::span<const Complex> z, int cutoff) {
  if (k < 1 || static_cast<int>(z.size()) != k) throw SpecError("contraction_fidelity: need k values of z");
  if (n < 1) throw SpecError("contraction_fidelity: need n >= 1");
  std::vector<Complex> zeta(z.begin(), z.end());
  for (auto& x : zeta) x /= std::sqrt(static_cast<double>(n));
  const PureState state = su_coherent_from_zeta(n, zeta);

  // Mode 0 is the reservoir: |n - m> is identified with |n>, keeping the
  // coherence between the occupations of modes 1..k.
  std::vector<Amplitude> contracted;
  for (const auto& e : state.entries()) {
    contracted.push_back({Occupation(e.occupation.begin() + 1, e.occupation.end()), e.value});
  }
  const PureState reduced = PureState::from_entries(k, std::move(contracted)).normalized();

  std::vector<PureState> glauber;
  for (const auto& zi : z) glauber.push_back(glauber_truncated({zi, cutoff}));
  return fidelity(reduced, tensor(glauber));
}

double traced_reservoir_fidelity(int k, int n, std::span<const Complex> z, int cutoff) {
  if (k < 1 || static_cast<int>(z.size()) != k) throw SpecError("traced_reservoir_fidelity: need k values of z");
  if (n < 1) throw SpecError("traced_reservoir_fidelity: need n >= 1");
  std::vector<Complex> zeta(z.begin(), z.end());
  for (auto& x : zeta) x /= std::sqrt(static_cast<double>(n));
  std::vector<int> keep(k);
  std::iota(keep.begin(), keep.end(), 1);
  const DensityMatrix rho = partial_trace(su_coherent_from_zeta(n, zeta), keep);

  std::vector<PureState> factors;
  for (const auto& zi : z) factors.push_back(glauber_truncated({zi, cutoff}));
  const PureState g = tensor(factors);
  Complex f{0.0, 0.0};
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      f += std::conj(g.amplitude(rho.basis()[i])) * rho(i, j) * g.amplitude(rho.basis()[j]);
    }
  }
  return f.real();
}

}  // namespace cohnet
