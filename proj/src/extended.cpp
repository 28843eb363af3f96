#include "extended.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "opmeans/errors.hpp"

namespace opmeans::detail {

XMatrix::XMatrix(const Matrix& m) : n_(m.rows()), d_(m.rows() * m.rows()) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) (*this)(i, j) = XComplex(m(i, j).real(), m(i, j).imag());
}

HermitianMatrix XMatrix::to_hermitian() const {
  Matrix out(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const XComplex z = (*this)(i, j);
      out(i, j) = Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
  return HermitianMatrix(out);
}

XMatrix spectral(const XMatrix& u, const std::vector<XReal>& values) {
  const std::size_t n = u.dim();
  XMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      XComplex sum = 0.0L;
      for (std::size_t k = 0; k < n; ++k) sum += u(i, k) * values[k] * std::conj(u(j, k));
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

XMatrix congruence(const XMatrix& x, const XMatrix& a) {
  const std::size_t n = x.dim();
  XMatrix ax(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      XComplex sum = 0.0L;
      for (std::size_t k = 0; k < n; ++k) sum += a(i, k) * x(k, j);
      ax(i, j) = sum;
    }
  XMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      XComplex sum = 0.0L;
      for (std::size_t k = 0; k < n; ++k) sum += std::conj(x(k, i)) * ax(k, j);
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

namespace {

XReal off_norm(const XMatrix& a) {
  XReal sum = 0.0L;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

XReal frobenius(const XMatrix& a) {
  XReal sum = 0.0L;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Same rotation as the double solver.
void rotate(XMatrix& a, XMatrix& v, std::size_t p, std::size_t q) {
  const XComplex apq = a(p, q);
  if (apq == XComplex(0.0L, 0.0L)) return;
  // The long double range makes the squares safe here.
  const XReal mag = std::sqrt(std::norm(apq));
  const XComplex u = apq / mag;
  const XReal alpha = a(p, p).real();
  const XReal beta = a(q, q).real();
  const XReal theta = (beta - alpha) / (2.0L * mag);
  const XReal t =
      (theta >= 0.0L ? 1.0L : -1.0L) / (std::abs(theta) + std::sqrt(theta * theta + 1.0L));
  const XReal c = 1.0L / std::sqrt(t * t + 1.0L);
  const XReal s = t * c;
  const XComplex su = s * u, suc = s * std::conj(u);
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const XComplex akp = a(k, p), akq = a(k, q);
    const XComplex np = c * akp - suc * akq;
    const XComplex nq = su * akp + c * akq;
    a(k, p) = np;
    a(k, q) = nq;
    a(p, k) = std::conj(np);
    a(q, k) = std::conj(nq);
  }
  a(p, q) = 0.0L;
  a(q, p) = 0.0L;
  a(p, p) = alpha - t * mag;
  a(q, q) = beta + t * mag;
  for (std::size_t k = 0; k < n; ++k) {
    const XComplex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - suc * vkq;
    v(k, q) = su * vkp + c * vkq;
  }
}

}  // namespace

XEigen eigen(XMatrix a, const ToleranceConfig& cfg) {
  const std::size_t n = a.dim();
  XMatrix v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0L;

  const XReal norm = frobenius(a);
  const XReal target = static_cast<XReal>(cfg.rel_residual_tol) * norm;
  const XReal roundoff =
      4.0L * static_cast<XReal>(n) * std::numeric_limits<XReal>::epsilon() * norm;
  int sweeps = 0;
  XReal off = off_norm(a);
  while (off > roundoff) {
    if (sweeps == cfg.eigen_sweep_limit) {
      if (off <= target) break;
      throw NonConvergence("eigen (extended): off-diagonal norm " +
                               format_value(static_cast<double>(off)) + " after " +
                               std::to_string(sweeps) + " sweeps",
                           static_cast<double>(off), sweeps);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
    const XReal next = off_norm(a);
    const bool stalled = next >= off;
    off = next;
    if (off <= target && stalled) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  XEigen out{std::vector<XReal>(n), XMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) out.vectors(row, col) = v(row, order[col]);
  }
  return out;
}

}  // namespace opmeans::detail
