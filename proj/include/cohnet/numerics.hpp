#pragma once

#include <vector>

#include "cohnet/matrix.hpp"

namespace cohnet {

// Absolute Hermiticity tolerance, scaled by max(1, max|a_ij|).
inline constexpr double kHermitianTol = 1e-12;
// Eigenvalues above this (but negative) are treated as roundoff and clamped to 0.
inline constexpr double kPsdSlack = 1e-10;

// A complex square matrix checked to equal its conjugate transpose. The
// stored entries are the exact Hermitian part (A + A^dagger)/2.
class HermitianMatrix {
 public:
  // Throws NumericalError when max|A - A^dagger| exceeds kHermitianTol.
  explicit HermitianMatrix(CMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // unitary, eigenvectors in columns

  CMatrix reconstruct() const;
};

// Cyclic Jacobi with complex plane rotations.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

// exp(i * scale * A) = V diag(exp(i scale lambda)) V^dagger.
CMatrix exp_i_hermitian(const HermitianMatrix& a, double scale);

// Principal square root of a PSD matrix. Eigenvalues in [-kPsdSlack, 0) are
// clamped to zero; anything more negative throws NotPSD.
HermitianMatrix sqrt_psd(const HermitianMatrix& a);

}  // namespace cohnet
