#include "opmeans/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "opmeans/errors.hpp"

namespace opmeans {

void ToleranceConfig::validate() const {
  if (!(rel_residual_tol > 0.0) || !(psd_slack > 0.0) || !(strict_pos_floor > 0.0) ||
      !(commute_tol > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (eigen_sweep_limit < 1) throw InvalidArgument("eigen_sweep_limit must be >= 1");
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Zeroes a(p,q) with the unitary J = [[c, s u], [-s conj(u), c]] acting on
// columns p, q (u = phase of a(p,q)); applies A <- J* A J and V <- V J.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  if (apq == Complex(0.0, 0.0)) return;
  // hypot-free on the hot path; fall back where squaring would underflow.
  double mag = std::sqrt(std::norm(apq));
  if (mag == 0.0) mag = std::abs(apq);
  const Complex u = apq / mag;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();
  const double theta = (beta - alpha) / (2.0 * mag);
  const double at = std::abs(theta);
  // For huge theta, t ~ 1/(2 theta) and theta^2 would overflow.
  const double t = at > 1e150 ? 0.5 / theta
                              : (theta >= 0.0 ? 1.0 : -1.0) / (at + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // Columns p, q of A J; rows p, q follow by Hermitian symmetry.
  const Complex su = s * u, suc = s * std::conj(u);
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Complex akp = a(k, p), akq = a(k, q);
    const Complex np = c * akp - suc * akq;
    const Complex nq = su * akp + c * akq;
    a(k, p) = np;
    a(k, q) = nq;
    a(p, k) = std::conj(np);
    a(q, k) = std::conj(nq);
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = alpha - t * mag;
  a(q, q) = beta + t * mag;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - suc * vkq;
    v(k, q) = su * vkp + c * vkq;
  }
}

void sweep(Matrix& a, Matrix& v) {
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
}

}  // namespace

bool certifies_lower_bound(const HermitianMatrix& a, double shift) {
  const std::size_t n = a.dim();
  Matrix l = a.matrix();
  for (std::size_t i = 0; i < n; ++i) l(i, i) -= shift;
  // In-place Cholesky of the lower triangle; any non-positive pivot fails.
  for (std::size_t j = 0; j < n; ++j) {
    double d = l(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double r = std::sqrt(d);
    l(j, j) = r;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex x = l(i, j);
      for (std::size_t k = 0; k < j; ++k) x -= l(i, k) * std::conj(l(j, k));
      l(i, j) = x / r;
    }
  }
  return true;
}

double EigenDecomposition::spectral_norm() const {
  if (eigenvalues.empty()) return 0.0;
  return std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
}

HermitianMatrix EigenDecomposition::reconstruct(std::span<const double> values) const {
  const std::size_t n = dim();
  if (values.size() != n) throw DimensionMismatch("reconstruct: eigenvalue count mismatch");
  Matrix scaled = eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= values[j];
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += scaled(i, k) * std::conj(eigenvectors(j, k));
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
  }
  return HermitianMatrix(out);
}

EigenDecomposition eigen_hermitian(const HermitianMatrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const std::size_t n = a.dim();
  if (n == 0) throw InvalidArgument("eigen_hermitian: empty matrix");

  Matrix work = a.matrix();
  Matrix vecs = Matrix::identity(n);
  const double target = cfg.rel_residual_tol * a.frobenius_norm();

  // Sweep past the stopping criterion until the off-diagonal mass reaches
  // roundoff or stops shrinking at all: with clustered eigenvalues the
  // quadratic phase only starts once off-diagonals drop below the cluster gaps,
  // so a matrix already within tolerance can still be far from diagonal.
  const double roundoff = 4.0 * static_cast<double>(n) *
                          std::numeric_limits<double>::epsilon() * a.frobenius_norm();
  int sweeps = 0;
  double off = off_diagonal_norm(work);
  while (off > roundoff) {
    if (sweeps == cfg.eigen_sweep_limit) {
      if (off <= target) break;
      throw NonConvergence("eigen_hermitian: off-diagonal norm " + format_value(off) +
                               " after " + std::to_string(sweeps) + " sweeps",
                           off, sweeps);
    }
    sweep(work, vecs);
    ++sweeps;
    const double next = off_diagonal_norm(work);
    const bool stalled = next >= off;
    off = next;
    if (off <= target && stalled) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work(i, i).real() < work(j, j).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = work(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, col) = vecs(row, order[col]);
  }
  out.sweeps = sweeps;
  out.off_diagonal = off;
  return out;
}

bool SpectralFunction::needs_strict_positivity() const noexcept {
  switch (kind_) {
    case Kind::Identity:
    case Kind::Exp:
      return false;
    case Kind::Inverse:
    case Kind::Sqrt:
    case Kind::InverseSqrt:
    case Kind::Log:
      return true;
    case Kind::Power:
      // Integer exponents >= 1 are polynomials and fine on any spectrum.
      return !(exponent_ >= 1.0 && std::floor(exponent_) == exponent_);
  }
  return true;
}

double SpectralFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::Inverse:
      return 1.0 / x;
    case Kind::Sqrt:
      return std::sqrt(x);
    case Kind::InverseSqrt:
      return 1.0 / std::sqrt(x);
    case Kind::Power:
      if (exponent_ == 0.0) return 1.0;
      if (exponent_ == 1.0) return x;
      return std::pow(x, exponent_);
    case Kind::Log:
      return std::log(x);
    case Kind::Exp:
      return std::exp(x);
  }
  return x;
}

std::string_view SpectralFunction::name() const noexcept {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Inverse: return "inverse";
    case Kind::Sqrt: return "sqrt";
    case Kind::InverseSqrt: return "inverse_sqrt";
    case Kind::Power: return "power";
    case Kind::Log: return "log";
    case Kind::Exp: return "exp";
  }
  return "?";
}

void require_strictly_positive(const EigenDecomposition& eig, const ToleranceConfig& cfg,
                               std::string_view what) {
  const double floor = cfg.strict_pos_floor * std::max(1.0, eig.spectral_norm());
  const double lo = eig.min_eigenvalue();
  if (!(lo >= floor)) {
    throw NotStrictlyPositive(std::string(what) + ": not strictly positive, min eigenvalue " +
                                  format_value(lo) + " below floor " + format_value(floor),
                              lo);
  }
}

void require_strictly_positive(const HermitianMatrix& a, const ToleranceConfig& cfg,
                               std::string_view what) {
  // ||A||_F bounds ||A||_2 from above, so passing this shift is sufficient.
  if (certifies_lower_bound(a, cfg.strict_pos_floor * std::max(1.0, a.frobenius_norm()))) return;
  require_strictly_positive(eigen_hermitian(a, cfg), cfg, what);
}

HermitianMatrix spectral_function(const EigenDecomposition& eig, const SpectralFunction& f,
                                  const ToleranceConfig& cfg) {
  if (f.needs_strict_positivity()) require_strictly_positive(eig, cfg, f.name());
  std::vector<double> values(eig.dim());
  std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), values.begin(), f);
  return eig.reconstruct(values);
}

HermitianMatrix spectral_function(const HermitianMatrix& a, const SpectralFunction& f,
                                  const ToleranceConfig& cfg) {
  if (f.kind() == SpectralFunction::Kind::Identity ||
      (f.kind() == SpectralFunction::Kind::Power && f.exponent() == 1.0)) {
    return a;
  }
  if (f.kind() == SpectralFunction::Kind::Power && f.exponent() == 0.0) {
    return HermitianMatrix::identity(a.dim());
  }
  return spectral_function(eigen_hermitian(a, cfg), f, cfg);
}

HermitianMatrix inverse(const HermitianMatrix& a, const ToleranceConfig& cfg) {
  return spectral_function(a, SpectralFunction::inverse(), cfg);
}

HermitianMatrix sqrtm(const HermitianMatrix& a, const ToleranceConfig& cfg) {
  return spectral_function(a, SpectralFunction::sqrt(), cfg);
}

HermitianMatrix power(const HermitianMatrix& a, double t, const ToleranceConfig& cfg) {
  return spectral_function(a, SpectralFunction::power(t), cfg);
}

HermitianMatrix congruence(const Matrix& x, const HermitianMatrix& a) {
  if (!x.is_square() || x.rows() != a.dim()) {
    throw DimensionMismatch("congruence: X is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", A is " + std::to_string(a.dim()) +
                            "x" + std::to_string(a.dim()));
  }
  return HermitianMatrix(x.adjoint() * (a.matrix() * x));
}

HermitianMatrix congruence(const HermitianMatrix& x, const HermitianMatrix& a) {
  return congruence(x.matrix(), a);
}

std::string_view to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive_definite";
    case Definiteness::PositiveSemidefinite: return "positive_semidefinite";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::NegativeSemidefinite: return "negative_semidefinite";
    case Definiteness::NegativeDefinite: return "negative_definite";
    case Definiteness::Zero: return "zero";
  }
  return "?";
}

bool LoewnerClass::is_psd() const noexcept {
  return kind == Definiteness::PositiveDefinite || kind == Definiteness::PositiveSemidefinite ||
         kind == Definiteness::Zero;
}

LoewnerClass loewner_classify(const HermitianMatrix& a, const EigenDecomposition& eig,
                              const ToleranceConfig& cfg) {
  LoewnerClass out{};
  out.min_eigenvalue = eig.min_eigenvalue();
  out.max_eigenvalue = eig.max_eigenvalue();
  out.slack = cfg.psd_slack * std::max(1.0, eig.spectral_norm());
  const double s = out.slack;
  if (a.frobenius_norm() <= s) {
    out.kind = Definiteness::Zero;
  } else if (out.min_eigenvalue >= s) {
    out.kind = Definiteness::PositiveDefinite;
  } else if (out.min_eigenvalue >= -s) {
    out.kind = Definiteness::PositiveSemidefinite;
  } else if (out.max_eigenvalue <= -s) {
    out.kind = Definiteness::NegativeDefinite;
  } else if (out.max_eigenvalue <= s) {
    out.kind = Definiteness::NegativeSemidefinite;
  } else {
    out.kind = Definiteness::Indefinite;
  }
  return out;
}

LoewnerClass loewner_classify(const HermitianMatrix& a, const ToleranceConfig& cfg) {
  return loewner_classify(a, eigen_hermitian(a, cfg), cfg);
}

LoewnerComparison loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                              const ToleranceConfig& cfg) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("loewner_leq: dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  const LoewnerClass c = loewner_classify(b - a, cfg);
  return {c.is_psd(), c.min_eigenvalue};
}

}  // namespace opmeans
