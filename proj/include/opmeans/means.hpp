#pragma once

#include <optional>
#include <string_view>

#include "opmeans/linalg.hpp"

namespace opmeans {

enum class MeanKind { Arithmetic, Geometric, Harmonic };

std::string_view to_string(MeanKind k);
std::optional<MeanKind> parse_mean_kind(std::string_view s);

// Interpolation weight lambda in [0, 1].
class Weight {
 public:
  // Throws InvalidArgument outside [0, 1] or for NaN.
  explicit Weight(double lambda);
  double value() const noexcept { return lambda_; }
  double complement() const noexcept { return 1.0 - lambda_; }
  // lambda (1 - lambda), the factor every identity in this library carries.
  double spread() const noexcept { return lambda_ * (1.0 - lambda_); }
  bool is_endpoint() const noexcept { return lambda_ == 0.0 || lambda_ == 1.0; }

 private:
  double lambda_;
};

// A nabla_l B = (1-l)A + l B
// A #_l B     = A^1/2 (A^-1/2 B A^-1/2)^l A^1/2
// A !_l B     = ((1-l)A^-1 + l B^-1)^-1
// Geometric and harmonic require both arguments strictly positive.
HermitianMatrix weighted_mean(MeanKind kind, const HermitianMatrix& a, const HermitianMatrix& b,
                              Weight w, const ToleranceConfig& cfg = {});

HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b, Weight w);
HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                               const ToleranceConfig& cfg = {});
HermitianMatrix harmonic_mean(const HermitianMatrix& a, const HermitianMatrix& b, Weight w,
                              const ToleranceConfig& cfg = {});

// Throws DomainViolation unless floor <= spectrum <= 1/2 + slack.
void require_half_bounded(const HermitianMatrix& a, const ToleranceConfig& cfg,
                          std::string_view name = "A");

// I - A for 0 < A <= I/2.
HermitianMatrix complement(const HermitianMatrix& a, const ToleranceConfig& cfg = {});

}  // namespace opmeans
