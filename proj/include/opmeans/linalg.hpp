#pragma once

#include <string_view>
#include <vector>

#include "opmeans/matrix.hpp"
#include "opmeans/tolerance.hpp"

namespace opmeans {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // columns are orthonormal eigenvectors
  int sweeps = 0;
  double off_diagonal = 0.0;  // ||offdiag(U* A U)||_F at termination

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  double min_eigenvalue() const { return eigenvalues.front(); }
  double max_eigenvalue() const { return eigenvalues.back(); }
  // max |lambda_i|, i.e. the operator 2-norm of the decomposed matrix.
  double spectral_norm() const;
  // U diag(values) U*, re-symmetrized.
  HermitianMatrix reconstruct(std::span<const double> values) const;
  HermitianMatrix reconstruct() const { return reconstruct(eigenvalues); }
};

// Cyclic complex Jacobi. Deterministic for identical input. Throws
// NonConvergence (carrying the residual reached) when eigen_sweep_limit sweeps
// do not bring the off-diagonal mass under rel_residual_tol * ||A||_F.
EigenDecomposition eigen_hermitian(const HermitianMatrix& a, const ToleranceConfig& cfg = {});

// Real function applied through the spectral theorem.
class SpectralFunction {
 public:
  enum class Kind { Identity, Inverse, Sqrt, InverseSqrt, Power, Log, Exp };

  static SpectralFunction identity() { return {Kind::Identity, 1.0}; }
  static SpectralFunction inverse() { return {Kind::Inverse, -1.0}; }
  static SpectralFunction sqrt() { return {Kind::Sqrt, 0.5}; }
  static SpectralFunction inverse_sqrt() { return {Kind::InverseSqrt, -0.5}; }
  static SpectralFunction power(double t) { return {Kind::Power, t}; }
  static SpectralFunction log() { return {Kind::Log, 0.0}; }
  static SpectralFunction exp() { return {Kind::Exp, 0.0}; }

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  // Whether the function needs a strictly positive spectrum.
  bool needs_strict_positivity() const noexcept;
  double operator()(double x) const;
  std::string_view name() const noexcept;

 private:
  SpectralFunction(Kind k, double e) : kind_(k), exponent_(e) {}
  Kind kind_;
  double exponent_;
};

// Throws NotStrictlyPositive (naming the eigenvalue) unless
// min eig >= strict_pos_floor * max(1, ||A||_2).
void require_strictly_positive(const EigenDecomposition& eig, const ToleranceConfig& cfg,
                               std::string_view what);

// Same predicate without a full decomposition when a Cholesky factorization
// certifies it; falls back to the eigensolver for the verdict and message.
void require_strictly_positive(const HermitianMatrix& a, const ToleranceConfig& cfg,
                               std::string_view what);

// True when A - shift I admits a Cholesky factorization, i.e. min eig > shift
// up to roundoff. Never true for a matrix whose spectrum reaches below shift
// by more than roundoff.
bool certifies_lower_bound(const HermitianMatrix& a, double shift);

HermitianMatrix spectral_function(const HermitianMatrix& a, const SpectralFunction& f,
                                  const ToleranceConfig& cfg = {});
// Same, reusing an existing decomposition of the argument.
HermitianMatrix spectral_function(const EigenDecomposition& eig, const SpectralFunction& f,
                                  const ToleranceConfig& cfg = {});

HermitianMatrix inverse(const HermitianMatrix& a, const ToleranceConfig& cfg = {});
HermitianMatrix sqrtm(const HermitianMatrix& a, const ToleranceConfig& cfg = {});
HermitianMatrix power(const HermitianMatrix& a, double t, const ToleranceConfig& cfg = {});

// X* A X, symmetrized.
HermitianMatrix congruence(const Matrix& x, const HermitianMatrix& a);
// X A X for Hermitian X (no adjoint needed).
HermitianMatrix congruence(const HermitianMatrix& x, const HermitianMatrix& a);

enum class Definiteness {
  PositiveDefinite,
  PositiveSemidefinite,
  Indefinite,
  NegativeSemidefinite,
  NegativeDefinite,
  Zero
};

std::string_view to_string(Definiteness d);

struct LoewnerClass {
  Definiteness kind;
  double min_eigenvalue;
  double max_eigenvalue;
  double slack;  // psd_slack * max(1, ||A||_2)

  // PSD in the wide sense: PD, PSD or Zero.
  bool is_psd() const noexcept;
};

LoewnerClass loewner_classify(const HermitianMatrix& a, const ToleranceConfig& cfg = {});
LoewnerClass loewner_classify(const HermitianMatrix& a, const EigenDecomposition& eig,
                              const ToleranceConfig& cfg);

struct LoewnerComparison {
  bool leq;
  double min_eigenvalue;  // of B - A
};

// A <= B iff B - A is PSD within slack.
LoewnerComparison loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                              const ToleranceConfig& cfg = {});

}  // namespace opmeans
