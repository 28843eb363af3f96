#pragma once

#include <string_view>
#include <vector>

#include "opmeans/means.hpp"

namespace opmeans {

// Both sides of an operator identity, evaluated along independent paths:
// the left side through the means module, the right side from raw products
// and inversions.
struct IdentityCheck {
  HermitianMatrix lhs;
  HermitianMatrix rhs;
  double residual = 0.0;      // ||lhs - rhs||_F
  double rel_residual = 0.0;  // residual / max(1, ||lhs||_F)
  bool pass = false;
};

// Difference "larger side minus smaller side" of a Loewner inequality.
struct GapCheck {
  HermitianMatrix gap;
  double min_eigenvalue = 0.0;
  double margin = 0.0;  // min_eigenvalue / max(1, ||gap||_2)
  double slack = 0.0;   // psd_slack * max(1, ||gap||_2)
  double majorant_norm = 0.0;
  double minorant_norm = 0.0;
  double defect = 0.0;  // skew part discarded when forming gap
  bool pass = false;
};

// Members of an identity chain, compared entrywise as general matrices.
struct ChainCheck {
  std::vector<Matrix> members;
  double max_pairwise_rel_residual = 0.0;
  bool pass = false;
};

enum class LemmaPart { I, II, III };
enum class TheoremPart { I, II, III };
enum class ChainPart { Eq1, Eq2 };
enum class CommutativePart { HarmonicGap, Ratio };
enum class KyFanPart { I, II, III };
enum class CommutativeGapPart { InverseGap, RatioGap };

std::string_view to_string(LemmaPart p);
std::string_view to_string(TheoremPart p);
std::string_view to_string(ChainPart p);
std::string_view to_string(CommutativePart p);
std::string_view to_string(KyFanPart p);
std::string_view to_string(CommutativeGapPart p);

// Whether the commutative checks refuse non-commuting input (NotCommuting) or
// evaluate anyway. Skip exists for exploratory fuzzing only.
enum class CommutationPolicy { Require, Skip };

IdentityCheck make_identity_check(HermitianMatrix lhs, HermitianMatrix rhs,
                                  const ToleranceConfig& cfg);
GapCheck make_gap_check(const HermitianMatrix& majorant, const HermitianMatrix& minorant,
                        const ToleranceConfig& cfg);
ChainCheck make_chain_check(std::vector<Matrix> members, const ToleranceConfig& cfg);

// Identities in a single strictly positive T against the identity operator:
//   I:   I nabla T - I ! T = l(1-l)(I-T)(T nabla I)^-1(I-T)
//   II:  T^1/2 (I nabla T^-1 - I ! T^-1) T^1/2 = l(1-l)(T-I)(I nabla T)^-1(T-I)
//   III: (I!T)^-1/2 (I nabla T)(I!T)^-1/2 - I = l(1-l)(I-T)T^-1(I-T)
IdentityCheck lemma_identity(LemmaPart part, const HermitianMatrix& t, Weight w,
                             const ToleranceConfig& cfg = {});

// Two-operator versions for strictly positive A, B:
//   I:   A nabla B - A ! B = l(1-l)(A-B)(B nabla A)^-1(A-B)
//   II:  (A#B)[(A!B)^-1 - (A nabla B)^-1](A#B) = l(1-l)(B-A)(A nabla B)^-1(B-A)
//   III: A(A^-1 # (A!B)^-1)(A nabla B)(A^-1 # (A!B)^-1)A - A = l(1-l)(A-B)B^-1(A-B)
// Weighted means carry weight l; # without subscript is the l = 1/2 mean.
IdentityCheck theorem_identity(TheoremPart part, const HermitianMatrix& a,
                               const HermitianMatrix& b, Weight w,
                               const ToleranceConfig& cfg = {});

// Eq1: (A#B) X (A#B) = A X B = B X A = l(1-l)(B-A)(A nabla B)^-1(B-A),
//      X = (A!B)^-1 - (A nabla B)^-1
// Eq2: A G (A nabla B) G A = A (A!B)^-1 (A nabla B) = (A nabla B)(A!B)^-1 A
//      = l(1-l)(A-B)B^-1(A-B) + A,  G = A^-1 # (A!B)^-1
ChainCheck chain_identity(ChainPart part, const HermitianMatrix& a, const HermitianMatrix& b,
                          Weight w, const ToleranceConfig& cfg = {});

// For commuting strictly positive A, B:
//   HarmonicGap: (A!B)^-1 - (A nabla B)^-1 = l(1-l)(B-A)(A#B)^-2 (A nabla B)^-1 (B-A)
//   Ratio:       (A!B)^-1 (A nabla B) - I  = l(1-l)(A-B)A^-1 B^-1(A-B)
// The complemented forms are the same call on (complement(A), complement(B)).
IdentityCheck commutative_identity(CommutativePart part, const HermitianMatrix& a,
                                   const HermitianMatrix& b, Weight w,
                                   const ToleranceConfig& cfg = {});

// Left-hand expressions of theorem_identity; kyfan_gap compares them at
// (A, B) and at (I - A, I - B).
HermitianMatrix kyfan_expression(KyFanPart part, const HermitianMatrix& a,
                                 const HermitianMatrix& b, Weight w,
                                 const ToleranceConfig& cfg = {});

// For 0 < A, B <= I/2: gap = expr(A, B) - expr(I - A, I - B), expected PSD.
GapCheck kyfan_gap(KyFanPart part, const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                   const ToleranceConfig& cfg = {});

// InverseGap expression: (A!B)^-1 - (A nabla B)^-1.
// RatioGap expression:   (A!B)^-1 (A nabla B), symmetrized (Hermitian only
//                        when A and B commute).
HermitianMatrix commutative_expression(CommutativeGapPart part, const HermitianMatrix& a,
                                       const HermitianMatrix& b, Weight w,
                                       const ToleranceConfig& cfg = {});

// For commuting 0 < A, B <= I/2: gap = expr(A, B) - expr(I - A, I - B).
GapCheck commutative_kyfan_gap(CommutativeGapPart part, const HermitianMatrix& a,
                               const HermitianMatrix& b, Weight w,
                               const ToleranceConfig& cfg = {},
                               CommutationPolicy policy = CommutationPolicy::Require);

// Throws NotCommuting unless ||AB - BA||_F <= commute_tol * ||A||_F ||B||_F.
void require_commuting(const HermitianMatrix& a, const HermitianMatrix& b,
                       const ToleranceConfig& cfg);

}  // namespace opmeans
