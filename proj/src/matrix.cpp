#include "opmeans/matrix.hpp"

#include <cmath>
#include <string>

#include "opmeans/errors.hpp"

namespace opmeans {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("matrix expects " + std::to_string(rows * cols) +
                            " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw NonFinite("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw NonFinite("diagonal entries must be finite");
    m(i, i) = d[i];
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double Matrix::frobenius_norm() const {
  // Scaled sum of squares; entries are at most ~1e6 in practice but spectra
  // near 1e-300 would otherwise underflow.
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : data_) {
    for (double v : {z.real(), z.imag()}) {
      if (v == 0.0) continue;
      const double a = std::abs(v);
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

bool Matrix::all_finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
Matrix operator*(double s, Matrix rhs) { return rhs *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionMismatch("multiply: inner dimensions " + std::to_string(lhs.cols()) +
                            " and " + std::to_string(rhs.rows()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

double distance(const Matrix& lhs, const Matrix& rhs) {
  require_same_shape(lhs, rhs, "distance");
  return (lhs - rhs).frobenius_norm();
}

HermitianMatrix::HermitianMatrix(const Matrix& m) : m_(m.rows(), m.cols()) {
  if (!m.is_square()) {
    throw DimensionMismatch("Hermitian matrix must be square, got " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
  }
  if (!m.all_finite()) throw NonFinite("matrix entries must be finite");
  const std::size_t n = m.rows();
  Matrix skew(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = Complex(m(i, i).real(), 0.0);
    skew(i, i) = Complex(0.0, m(i, i).imag());
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      const Complex half_skew = 0.5 * (m(i, j) - std::conj(m(j, i)));
      m_(i, j) = avg.imag() == 0.0 ? Complex(avg.real(), 0.0) : avg;
      // Keep real entries free of -0 imaginary parts on both sides.
      m_(j, i) = avg.imag() == 0.0 ? Complex(avg.real(), 0.0) : std::conj(avg);
      skew(i, j) = half_skew;
      skew(j, i) = -std::conj(half_skew);
    }
  }
  defect_ = skew.frobenius_norm();
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(Matrix::identity(n));
}

HermitianMatrix HermitianMatrix::zeros(std::size_t n) { return HermitianMatrix(Matrix(n, n)); }

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  return HermitianMatrix(Matrix::diagonal(d));
}

HermitianMatrix HermitianMatrix::scalar(std::size_t n, double c) {
  return HermitianMatrix(Matrix::identity(n) * c);
}

HermitianMatrix operator+(const HermitianMatrix& lhs, const HermitianMatrix& rhs) {
  return HermitianMatrix(lhs.matrix() + rhs.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& lhs, const HermitianMatrix& rhs) {
  return HermitianMatrix(lhs.matrix() - rhs.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& rhs) {
  return HermitianMatrix(s * rhs.matrix());
}

Matrix operator*(const HermitianMatrix& lhs, const HermitianMatrix& rhs) {
  return lhs.matrix() * rhs.matrix();
}
Matrix operator*(const Matrix& lhs, const HermitianMatrix& rhs) { return lhs * rhs.matrix(); }
Matrix operator*(const HermitianMatrix& lhs, const Matrix& rhs) { return lhs.matrix() * rhs; }

double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
  return distance(a * b, b * a);
}

}  // namespace opmeans
