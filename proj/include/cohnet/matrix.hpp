#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cohnet {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Dense row-major complex matrix. Sizes here stay in the hundreds, so no
// expression templates or blocking.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix diagonal(std::span<const double> diag);
  // Column vector v, or the outer product v w^dagger.
  static CMatrix column(std::span<const Complex> v);
  static CMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix transpose() const;
  Complex trace() const;
  // Largest |a_ij|.
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
// AB - BA.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// max |a_ij - b_ij|; throws ShapeError on size mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace cohnet
