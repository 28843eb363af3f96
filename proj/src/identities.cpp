#include "opmeans/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opmeans/errors.hpp"

namespace opmeans {

std::string_view to_string(LemmaPart p) {
  switch (p) {
    case LemmaPart::I: return "i";
    case LemmaPart::II: return "ii";
    case LemmaPart::III: return "iii";
  }
  return "?";
}

std::string_view to_string(TheoremPart p) {
  switch (p) {
    case TheoremPart::I: return "i";
    case TheoremPart::II: return "ii";
    case TheoremPart::III: return "iii";
  }
  return "?";
}

std::string_view to_string(ChainPart p) { return p == ChainPart::Eq1 ? "eq1" : "eq2"; }

std::string_view to_string(CommutativePart p) {
  return p == CommutativePart::HarmonicGap ? "harm_gap" : "ratio";
}

std::string_view to_string(KyFanPart p) {
  switch (p) {
    case KyFanPart::I: return "i";
    case KyFanPart::II: return "ii";
    case KyFanPart::III: return "iii";
  }
  return "?";
}

std::string_view to_string(CommutativeGapPart p) {
  return p == CommutativeGapPart::InverseGap ? "inv_gap" : "ratio_gap";
}

namespace {

const Weight kHalf{0.5};

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
}

void require_positive(const HermitianMatrix& m, const ToleranceConfig& cfg, const char* what) {
  require_strictly_positive(m, cfg, what);
}

HermitianMatrix eye(std::size_t n) { return HermitianMatrix::identity(n); }

// (1-l) X + l Y without going through the means module.
HermitianMatrix raw_blend(const HermitianMatrix& x, const HermitianMatrix& y, Weight w) {
  return HermitianMatrix(w.complement() * x.matrix() + w.value() * y.matrix());
}

// s * D M D for Hermitian D, M.
HermitianMatrix scaled_sandwich(double s, const HermitianMatrix& d, const HermitianMatrix& m) {
  return s * congruence(d, m);
}

// Theorem (ii) left side.
HermitianMatrix sandwiched_inverse_gap(const HermitianMatrix& a, const HermitianMatrix& b,
                                       Weight w, const ToleranceConfig& cfg) {
  const HermitianMatrix g = geometric_mean(a, b, kHalf, cfg);
  const HermitianMatrix x =
      inverse(harmonic_mean(a, b, w, cfg), cfg) - inverse(arithmetic_mean(a, b, w), cfg);
  return congruence(g, x);
}

// A (A^-1 # (A!B)^-1) (A nabla B) (A^-1 # (A!B)^-1) A, i.e. the first chain
// member of Eq2 and theorem (iii) before subtracting A.
HermitianMatrix riccati_sandwich(const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                                 const ToleranceConfig& cfg) {
  const HermitianMatrix g =
      geometric_mean(inverse(a, cfg), inverse(harmonic_mean(a, b, w, cfg), cfg), kHalf, cfg);
  return congruence(g * a, arithmetic_mean(a, b, w));
}

}  // namespace

IdentityCheck make_identity_check(HermitianMatrix lhs, HermitianMatrix rhs,
                                  const ToleranceConfig& cfg) {
  IdentityCheck out;
  out.residual = distance(lhs.matrix(), rhs.matrix());
  out.rel_residual = out.residual / std::max(1.0, lhs.frobenius_norm());
  out.pass = out.rel_residual <= cfg.rel_residual_tol;
  out.lhs = std::move(lhs);
  out.rhs = std::move(rhs);
  return out;
}

GapCheck make_gap_check(const HermitianMatrix& majorant, const HermitianMatrix& minorant,
                        const ToleranceConfig& cfg) {
  GapCheck out;
  out.gap = HermitianMatrix(majorant.matrix() - minorant.matrix());
  out.defect = out.gap.defect() + majorant.defect() + minorant.defect();
  out.majorant_norm = majorant.frobenius_norm();
  out.minorant_norm = minorant.frobenius_norm();
  const EigenDecomposition eig = eigen_hermitian(out.gap, cfg);
  const double scale = std::max(1.0, eig.spectral_norm());
  out.min_eigenvalue = eig.min_eigenvalue();
  out.margin = out.min_eigenvalue / scale;
  out.slack = cfg.psd_slack * scale;
  out.pass = out.min_eigenvalue >= -out.slack;
  return out;
}

ChainCheck make_chain_check(std::vector<Matrix> members, const ToleranceConfig& cfg) {
  ChainCheck out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const double scale =
          std::max({1.0, members[i].frobenius_norm(), members[j].frobenius_norm()});
      out.max_pairwise_rel_residual =
          std::max(out.max_pairwise_rel_residual, distance(members[i], members[j]) / scale);
    }
  }
  out.pass = out.max_pairwise_rel_residual <= cfg.rel_residual_tol;
  out.members = std::move(members);
  return out;
}

void require_commuting(const HermitianMatrix& a, const HermitianMatrix& b,
                       const ToleranceConfig& cfg) {
  require_same_dim(a, b, "commutation test");
  const double c = commutator_norm(a, b);
  const double bound = cfg.commute_tol * a.frobenius_norm() * b.frobenius_norm();
  if (c > bound) {
    throw NotCommuting("operators do not commute: ||AB - BA||_F = " + format_value(c) +
                           " exceeds " + format_value(bound),
                       c);
  }
}

IdentityCheck lemma_identity(LemmaPart part, const HermitianMatrix& t, Weight w,
                             const ToleranceConfig& cfg) {
  const EigenDecomposition eig_t = eigen_hermitian(t, cfg);
  require_strictly_positive(eig_t, cfg, "lemma_identity (T)");
  const std::size_t n = t.dim();
  const HermitianMatrix id = eye(n);
  const double k = w.spread();

  switch (part) {
    case LemmaPart::I: {
      HermitianMatrix lhs = arithmetic_mean(id, t, w) - harmonic_mean(id, t, w, cfg);
      HermitianMatrix rhs =
          scaled_sandwich(k, id - t, inverse(raw_blend(t, id, w), cfg));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
    case LemmaPart::II: {
      const HermitianMatrix t_inv = spectral_function(eig_t, SpectralFunction::inverse(), cfg);
      const HermitianMatrix t_half = spectral_function(eig_t, SpectralFunction::sqrt(), cfg);
      HermitianMatrix lhs = congruence(
          t_half, arithmetic_mean(id, t_inv, w) - harmonic_mean(id, t_inv, w, cfg));
      HermitianMatrix rhs = scaled_sandwich(k, t - id, inverse(raw_blend(id, t, w), cfg));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
    case LemmaPart::III: {
      const HermitianMatrix h_inv_half =
          spectral_function(harmonic_mean(id, t, w, cfg), SpectralFunction::inverse_sqrt(), cfg);
      HermitianMatrix lhs = congruence(h_inv_half, arithmetic_mean(id, t, w)) - id;
      HermitianMatrix rhs = scaled_sandwich(
          k, id - t, spectral_function(eig_t, SpectralFunction::inverse(), cfg));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
  }
  throw InvalidArgument("unknown lemma part");
}

IdentityCheck theorem_identity(TheoremPart part, const HermitianMatrix& a,
                               const HermitianMatrix& b, Weight w, const ToleranceConfig& cfg) {
  require_same_dim(a, b, "theorem_identity");
  require_positive(a, cfg, "theorem_identity (A)");
  require_positive(b, cfg, "theorem_identity (B)");
  const double k = w.spread();

  switch (part) {
    case TheoremPart::I: {
      HermitianMatrix lhs = arithmetic_mean(a, b, w) - harmonic_mean(a, b, w, cfg);
      HermitianMatrix rhs = scaled_sandwich(k, a - b, inverse(raw_blend(b, a, w), cfg));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
    case TheoremPart::II: {
      HermitianMatrix lhs = sandwiched_inverse_gap(a, b, w, cfg);
      HermitianMatrix rhs = scaled_sandwich(k, b - a, inverse(raw_blend(a, b, w), cfg));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
    case TheoremPart::III: {
      HermitianMatrix lhs = riccati_sandwich(a, b, w, cfg) - a;
      HermitianMatrix rhs = scaled_sandwich(k, a - b, inverse(b, cfg));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
  }
  throw InvalidArgument("unknown theorem part");
}

ChainCheck chain_identity(ChainPart part, const HermitianMatrix& a, const HermitianMatrix& b,
                          Weight w, const ToleranceConfig& cfg) {
  require_same_dim(a, b, "chain_identity");
  require_positive(a, cfg, "chain_identity (A)");
  require_positive(b, cfg, "chain_identity (B)");
  const double k = w.spread();

  std::vector<Matrix> members;
  switch (part) {
    case ChainPart::Eq1: {
      const HermitianMatrix x =
          inverse(harmonic_mean(a, b, w, cfg), cfg) - inverse(arithmetic_mean(a, b, w), cfg);
      const HermitianMatrix g = geometric_mean(a, b, kHalf, cfg);
      members.push_back(g * (x * g));
      members.push_back(a * (x * b));
      members.push_back(b * (x * a));
      members.push_back(k * ((b - a) * (inverse(raw_blend(a, b, w), cfg) * (b - a))));
      break;
    }
    case ChainPart::Eq2: {
      const HermitianMatrix h_inv = inverse(harmonic_mean(a, b, w, cfg), cfg);
      const HermitianMatrix m = arithmetic_mean(a, b, w);
      members.push_back(riccati_sandwich(a, b, w, cfg).matrix());
      members.push_back(a * (h_inv * m));
      members.push_back(m * (h_inv * a));
      members.push_back(k * ((a - b) * (inverse(b, cfg) * (a - b))) + a.matrix());
      break;
    }
  }
  return make_chain_check(std::move(members), cfg);
}

IdentityCheck commutative_identity(CommutativePart part, const HermitianMatrix& a,
                                   const HermitianMatrix& b, Weight w,
                                   const ToleranceConfig& cfg) {
  require_same_dim(a, b, "commutative_identity");
  require_positive(a, cfg, "commutative_identity (A)");
  require_positive(b, cfg, "commutative_identity (B)");
  require_commuting(a, b, cfg);
  const double k = w.spread();

  switch (part) {
    case CommutativePart::HarmonicGap: {
      HermitianMatrix lhs =
          inverse(harmonic_mean(a, b, w, cfg), cfg) - inverse(arithmetic_mean(a, b, w), cfg);
      const HermitianMatrix g_inv_sq = power(geometric_mean(a, b, kHalf, cfg), -2.0, cfg);
      const HermitianMatrix d = b - a;
      HermitianMatrix rhs(k * (d * (g_inv_sq * (inverse(raw_blend(a, b, w), cfg) * d))));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
    case CommutativePart::Ratio: {
      const std::size_t n = a.dim();
      HermitianMatrix lhs(inverse(harmonic_mean(a, b, w, cfg), cfg) * arithmetic_mean(a, b, w) -
                          Matrix::identity(n));
      const HermitianMatrix d = a - b;
      HermitianMatrix rhs(k * (d * (inverse(a, cfg) * (inverse(b, cfg) * d))));
      return make_identity_check(std::move(lhs), std::move(rhs), cfg);
    }
  }
  throw InvalidArgument("unknown commutative part");
}

HermitianMatrix kyfan_expression(KyFanPart part, const HermitianMatrix& a,
                                 const HermitianMatrix& b, Weight w,
                                 const ToleranceConfig& cfg) {
  require_same_dim(a, b, "kyfan_expression");
  switch (part) {
    case KyFanPart::I: return arithmetic_mean(a, b, w) - harmonic_mean(a, b, w, cfg);
    case KyFanPart::II: return sandwiched_inverse_gap(a, b, w, cfg);
    case KyFanPart::III: return riccati_sandwich(a, b, w, cfg) - a;
  }
  throw InvalidArgument("unknown Ky Fan part");
}

GapCheck kyfan_gap(KyFanPart part, const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                   const ToleranceConfig& cfg) {
  require_same_dim(a, b, "kyfan_gap");
  require_half_bounded(a, cfg, "A");
  require_half_bounded(b, cfg, "B");
  const std::size_t n = a.dim();
  const HermitianMatrix a_c(Matrix::identity(n) - a.matrix());
  const HermitianMatrix b_c(Matrix::identity(n) - b.matrix());
  return make_gap_check(kyfan_expression(part, a, b, w, cfg),
                        kyfan_expression(part, a_c, b_c, w, cfg), cfg);
}

HermitianMatrix commutative_expression(CommutativeGapPart part, const HermitianMatrix& a,
                                       const HermitianMatrix& b, Weight w,
                                       const ToleranceConfig& cfg) {
  require_same_dim(a, b, "commutative_expression");
  const HermitianMatrix h_inv = inverse(harmonic_mean(a, b, w, cfg), cfg);
  switch (part) {
    case CommutativeGapPart::InverseGap: return h_inv - inverse(arithmetic_mean(a, b, w), cfg);
    case CommutativeGapPart::RatioGap: return HermitianMatrix(h_inv * arithmetic_mean(a, b, w));
  }
  throw InvalidArgument("unknown commutative gap part");
}

GapCheck commutative_kyfan_gap(CommutativeGapPart part, const HermitianMatrix& a,
                               const HermitianMatrix& b, Weight w, const ToleranceConfig& cfg,
                               CommutationPolicy policy) {
  require_same_dim(a, b, "commutative_kyfan_gap");
  if (policy == CommutationPolicy::Require) require_commuting(a, b, cfg);
  require_half_bounded(a, cfg, "A");
  require_half_bounded(b, cfg, "B");
  const std::size_t n = a.dim();
  const HermitianMatrix a_c(Matrix::identity(n) - a.matrix());
  const HermitianMatrix b_c(Matrix::identity(n) - b.matrix());
  return make_gap_check(commutative_expression(part, a, b, w, cfg),
                        commutative_expression(part, a_c, b_c, w, cfg), cfg);
}

}  // namespace opmeans
