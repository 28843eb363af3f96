#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace opmeans {

using Complex = std::complex<double>;

// Dense row-major complex matrix. General (possibly non-Hermitian) values
// such as products A X B live here; HermitianMatrix wraps one of these.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  // Rejects non-finite entries and size mismatches.
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix adjoint() const;
  double frobenius_norm() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, double s);
Matrix operator*(double s, Matrix rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

// ||lhs - rhs||_F, throws DimensionMismatch on shape disagreement.
double distance(const Matrix& lhs, const Matrix& rhs);

// Square matrix equal to its conjugate transpose. Construction from an
// arbitrary square Matrix symmetrizes (M + M*)/2 and keeps the Frobenius
// norm of the discarded skew part as defect().
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> d);
  static HermitianMatrix scalar(std::size_t n, double c);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  double defect() const noexcept { return defect_; }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  Matrix m_;
  double defect_ = 0.0;
};

HermitianMatrix operator+(const HermitianMatrix& lhs, const HermitianMatrix& rhs);
HermitianMatrix operator-(const HermitianMatrix& lhs, const HermitianMatrix& rhs);
HermitianMatrix operator*(double s, const HermitianMatrix& rhs);
Matrix operator*(const HermitianMatrix& lhs, const HermitianMatrix& rhs);
Matrix operator*(const Matrix& lhs, const HermitianMatrix& rhs);
Matrix operator*(const HermitianMatrix& lhs, const Matrix& rhs);

// ||AB - BA||_F
double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace opmeans
