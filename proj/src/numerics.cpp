#include "cohnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cohnet/errors.hpp"

namespace cohnet {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_sum(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::abs(a(i, j));
  }
  return s;
}

// Zeroes a(p,q) with the unitary G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// acting on columns p and q, where phi = arg a(p,q). A <- G^dagger A G, V <- V G.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const Complex b = a(p, q);
  const double mag = std::abs(b);
  const Complex phase = b / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex ph_conj = std::conj(phase);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = a(k, p);
    const Complex y = a(k, q);
    a(k, p) = c * x - s * ph_conj * y;
    a(k, q) = s * x + c * ph_conj * y;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = a(p, k);
    const Complex y = a(q, k);
    a(p, k) = c * x - s * phase * y;
    a(q, k) = s * x + c * phase * y;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = v(k, p);
    const Complex y = v(k, q);
    v(k, p) = c * x - s * ph_conj * y;
    v(k, q) = s * x + c * ph_conj * y;
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m) {
  if (!m.square()) throw ShapeError("HermitianMatrix: matrix is not square");
  const double scale = std::max(1.0, m.max_abs());
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  if (worst > kHermitianTol * scale) {
    throw NumericalError("HermitianMatrix: max |A - A^dagger| = " + std::to_string(worst));
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = h;
      m(j, i) = std::conj(h);
    }
  }
  m_ = std::move(m);
}

CMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * CMatrix::diagonal(std::span<const double>(eigenvalues)) *
         eigenvectors.adjoint();
}

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
  CMatrix a = h.matrix();
  const std::size_t n = a.rows();
  CMatrix v = CMatrix::identity(n);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_sum(a) == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Once the element no longer registers against both diagonal entries
        // the rotation is a no-op at working precision.
        const double dp = std::abs(a(p, p).real());
        const double dq = std::abs(a(q, q).real());
        if (sweep > 3 && dp + 100.0 * mag == dp && dq + 100.0 * mag == dq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (sweep == kMaxSweeps) {
    throw NumericalError("eig_hermitian: Jacobi did not converge in " +
                         std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

CMatrix exp_i_hermitian(const HermitianMatrix& a, double scale) {
  if (scale == 0.0) return CMatrix::identity(a.dim());
  const auto eig = eig_hermitian(a);
  std::vector<Complex> phases(eig.eigenvalues.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    phases[i] = std::polar(1.0, scale * eig.eigenvalues[i]);
  }
  return eig.eigenvectors * CMatrix::diagonal(std::span<const Complex>(phases)) *
         eig.eigenvectors.adjoint();
}

HermitianMatrix sqrt_psd(const HermitianMatrix& a) {
  const auto eig = eig_hermitian(a);
  std::vector<double> roots(eig.eigenvalues.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda < -kPsdSlack) {
      throw NotPSD("sqrt_psd: eigenvalue " + std::to_string(lambda) + " below -1e-10");
    }
    roots[i] = std::sqrt(std::max(lambda, 0.0));
  }
  return HermitianMatrix(eig.eigenvectors * CMatrix::diagonal(std::span<const double>(roots)) *
                         eig.eigenvectors.adjoint());
}

}  // namespace cohnet
