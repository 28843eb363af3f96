#pragma once

// Internal: a small Hermitian toolkit in long double, used where a double
// evaluation loses the small end of a wide spectrum (the inner matrix of the
// geometric mean can have a condition number near the square of its inputs').

#include <complex>
#include <cstddef>
#include <vector>

#include "opmeans/linalg.hpp"
#include "opmeans/matrix.hpp"
#include "opmeans/tolerance.hpp"

namespace opmeans::detail {

using XReal = long double;
using XComplex = std::complex<long double>;

class XMatrix {
 public:
  explicit XMatrix(std::size_t n) : n_(n), d_(n * n) {}
  explicit XMatrix(const Matrix& m);

  std::size_t dim() const noexcept { return n_; }
  XComplex& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  const XComplex& operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

  // Rounds to double and wraps as Hermitian (the skew part is recorded).
  HermitianMatrix to_hermitian() const;

 private:
  std::size_t n_;
  std::vector<XComplex> d_;
};

// U diag(values) U*, Hermitian by construction.
XMatrix spectral(const XMatrix& u, const std::vector<XReal>& values);
// X* A X with A Hermitian; only the upper triangle is formed, then mirrored.
XMatrix congruence(const XMatrix& x, const XMatrix& a);

struct XEigen {
  std::vector<XReal> values;  // ascending
  XMatrix vectors;
};

// Cyclic complex Jacobi with the same stopping rule as eigen_hermitian.
XEigen eigen(XMatrix a, const ToleranceConfig& cfg);

}  // namespace opmeans::detail
