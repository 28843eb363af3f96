#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace opmeans::scalar {

// Positive reals with nonnegative weights summing to one.
struct Sample {
  std::vector<double> xs;
  std::vector<double> weights;

  // Equal weights 1/n.
  static Sample uniform(std::vector<double> xs);
  // Two points with weights (1 - lambda, lambda), matching the binary operator means.
  static Sample pair(double x1, double x2, double lambda);

  // Throws DomainViolation for nonpositive x_i, negative weights, size
  // mismatch, or |sum(weights) - 1| > 1e-14.
  void validate() const;
  // Throws DomainViolation unless every x_i lies in (0, 1/2].
  void validate_half_bounded() const;
};

struct Means {
  double arithmetic = 0.0;
  double geometric = 0.0;
  double harmonic = 0.0;
};

struct MeansBundle {
  Means plain;
  // Means of 1 - x_i; present only when every x_i <= 1/2.
  std::optional<Means> primed;
};

Means means_of(const Sample& s);
// Means of the complements 1 - x_i; throws PrimedUnavailable if some x_i > 1/2.
Means primed_means_of(const Sample& s);
MeansBundle scalar_means(const Sample& s);

enum class Inequality {
  RatioAG,     // A'/G' <= A/G
  DiffAG,      // A' - G' <= A - G
  DiffAH,      // A' - H' <= A - H
  DiffRecip,   // 1/H' - 1/A' <= 1/H - 1/A
  RatioAH,     // A'/H' <= A/H
};

std::string_view to_string(Inequality i);
std::optional<Inequality> parse_inequality(std::string_view s);
inline constexpr Inequality kAllInequalities[] = {Inequality::RatioAG, Inequality::DiffAG,
                                                  Inequality::DiffAH, Inequality::DiffRecip,
                                                  Inequality::RatioAH};

struct InequalityCheck {
  double lhs = 0.0;  // complemented side
  double rhs = 0.0;  // plain side
  bool holds = false;
  bool equality = false;
};

// |lhs - rhs| <= 1e-12 * max(1, |rhs|) counts as equality; holds allows the same slack.
inline constexpr double kEqualityThreshold = 1e-12;

InequalityCheck kyfan_scalar_check(Inequality which, const Sample& s);

struct AuxiliaryFacts {
  double ah_primed = 0.0;  // A' H'
  double ah = 0.0;         // A H
  double h_primed = 0.0;
  double h = 0.0;
  bool ah_primed_ge = false;  // A'H' >= AH
  bool h_primed_ge = false;   // H' >= H
};

AuxiliaryFacts auxiliary_facts(const Sample& s);

}  // namespace opmeans::scalar
