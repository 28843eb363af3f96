#include "opmeans/means.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "extended.hpp"
#include "opmeans/errors.hpp"

namespace opmeans {

std::string_view to_string(MeanKind k) {
  switch (k) {
    case MeanKind::Arithmetic: return "arithmetic";
    case MeanKind::Geometric: return "geometric";
    case MeanKind::Harmonic: return "harmonic";
  }
  return "?";
}

std::optional<MeanKind> parse_mean_kind(std::string_view s) {
  if (s == "arithmetic") return MeanKind::Arithmetic;
  if (s == "geometric") return MeanKind::Geometric;
  if (s == "harmonic") return MeanKind::Harmonic;
  return std::nullopt;
}

Weight::Weight(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("weight must lie in [0, 1], got " + format_value(lambda));
  }
}

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
}

EigenDecomposition positive_decomposition(const HermitianMatrix& m, const ToleranceConfig& cfg,
                                          const char* what) {
  EigenDecomposition eig = eigen_hermitian(m, cfg);
  require_strictly_positive(eig, cfg, what);
  return eig;
}

}  // namespace

HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b, Weight w) {
  require_same_dim(a, b, "arithmetic mean");
  if (w.value() == 0.0) return a;
  if (w.value() == 1.0) return b;
  return HermitianMatrix(w.complement() * a.matrix() + w.value() * b.matrix());
}

HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                               const ToleranceConfig& cfg) {
  require_same_dim(a, b, "geometric mean");
  const EigenDecomposition eig_a = positive_decomposition(a, cfg, "geometric mean (A)");
  require_strictly_positive(b, cfg, "geometric mean (B)");
  if (w.value() == 0.0) return a;
  if (w.value() == 1.0) return b;

  // A^1/2 (A^-1/2 B A^-1/2)^w A^1/2. The inner matrix is formed and
  // decomposed in long double: in double its small eigenvalues carry an
  // absolute error of eps ||A^-1|| ||B||, which the outer congruence then
  // spreads over the whole result.
  using detail::XReal;
  const std::size_t n = a.dim();
  const detail::XMatrix u(eig_a.eigenvectors);
  std::vector<XReal> root(n), inv_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    root[i] = std::sqrt(static_cast<XReal>(eig_a.eigenvalues[i]));
    inv_root[i] = 1.0L / root[i];
  }
  const detail::XMatrix a_half = detail::spectral(u, root);
  const detail::XMatrix inner = detail::congruence(detail::spectral(u, inv_root),
                                                   detail::XMatrix(b.matrix()));
  detail::XEigen eig_inner = detail::eigen(inner, cfg);
  if (!(eig_inner.values.front() > 0.0L)) {
    throw NotStrictlyPositive("geometric mean: inner congruence lost positivity",
                              static_cast<double>(eig_inner.values.front()));
  }
  for (XReal& x : eig_inner.values) x = std::pow(x, static_cast<XReal>(w.value()));
  return detail::congruence(a_half, detail::spectral(eig_inner.vectors, eig_inner.values))
      .to_hermitian();
}

HermitianMatrix harmonic_mean(const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                              const ToleranceConfig& cfg) {
  require_same_dim(a, b, "harmonic mean");
  const EigenDecomposition eig_a = positive_decomposition(a, cfg, "harmonic mean (A)");
  const EigenDecomposition eig_b = positive_decomposition(b, cfg, "harmonic mean (B)");
  if (w.value() == 0.0) return a;
  if (w.value() == 1.0) return b;

  const HermitianMatrix a_inv = spectral_function(eig_a, SpectralFunction::inverse(), cfg);
  const HermitianMatrix b_inv = spectral_function(eig_b, SpectralFunction::inverse(), cfg);
  return inverse(HermitianMatrix(w.complement() * a_inv.matrix() + w.value() * b_inv.matrix()),
                 cfg);
}

HermitianMatrix weighted_mean(MeanKind kind, const HermitianMatrix& a, const HermitianMatrix& b,
                              Weight w, const ToleranceConfig& cfg) {
  switch (kind) {
    case MeanKind::Arithmetic: return arithmetic_mean(a, b, w);
    case MeanKind::Geometric: return geometric_mean(a, b, w, cfg);
    case MeanKind::Harmonic: return harmonic_mean(a, b, w, cfg);
  }
  throw InvalidArgument("unknown mean kind");
}

void require_half_bounded(const HermitianMatrix& a, const ToleranceConfig& cfg,
                          std::string_view name) {
  // Fast path: certificates with the strictest slack scale (scale >= 1, and
  // the Frobenius norm bounds the spectral norm).
  if (certifies_lower_bound(a, cfg.strict_pos_floor * std::max(1.0, a.frobenius_norm())) &&
      certifies_lower_bound(HermitianMatrix(-1.0 * a.matrix()), -(0.5 + cfg.psd_slack))) {
    return;
  }
  const EigenDecomposition eig = eigen_hermitian(a, cfg);
  const double scale = std::max(1.0, eig.spectral_norm());
  const double lo = eig.min_eigenvalue();
  const double hi = eig.max_eigenvalue();
  if (!(lo >= cfg.strict_pos_floor * scale)) {
    throw DomainViolation(std::string(name) + " must satisfy 0 < " + std::string(name) +
                              " <= I/2: min eigenvalue " + format_value(lo) +
                              " is not strictly positive",
                          lo);
  }
  if (!(hi <= 0.5 + cfg.psd_slack * scale)) {
    throw DomainViolation(std::string(name) + " must satisfy 0 < " + std::string(name) +
                              " <= I/2: max eigenvalue " + format_value(hi) + " exceeds 1/2",
                          hi);
  }
}

HermitianMatrix complement(const HermitianMatrix& a, const ToleranceConfig& cfg) {
  require_half_bounded(a, cfg);
  return HermitianMatrix(Matrix::identity(a.dim()) - a.matrix());
}

}  // namespace opmeans
