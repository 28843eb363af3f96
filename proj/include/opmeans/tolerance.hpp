#pragma once

namespace opmeans {

// Numerical thresholds threaded through every verdict.
struct ToleranceConfig {
  // Identity checks pass when ||lhs - rhs||_F / max(1, ||lhs||_F) is below this.
  // Also the eigensolver's off-diagonal stopping criterion (relative to ||A||_F).
  double rel_residual_tol = 1e-10;
  // Loewner predicates accept min eigenvalue >= -psd_slack * max(1, ||A||_2).
  double psd_slack = 1e-10;
  // Inversions and fractional powers need min eigenvalue >= floor * max(1, ||A||_2).
  double strict_pos_floor = 1e-12;
  int eigen_sweep_limit = 50;
  // Pairs count as commuting when ||AB - BA||_F <= commute_tol * ||A||_F * ||B||_F.
  double commute_tol = 1e-10;

  // Throws InvalidArgument unless every tolerance is positive and the sweep limit >= 1.
  void validate() const;
};

}  // namespace opmeans
