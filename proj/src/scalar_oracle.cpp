#include "opmeans/scalar_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opmeans/errors.hpp"

namespace opmeans::scalar {

Sample Sample::uniform(std::vector<double> xs) {
  const double w = xs.empty() ? 0.0 : 1.0 / static_cast<double>(xs.size());
  std::vector<double> weights(xs.size(), w);
  return Sample{std::move(xs), std::move(weights)};
}

Sample Sample::pair(double x1, double x2, double lambda) {
  return Sample{{x1, x2}, {1.0 - lambda, lambda}};
}

void Sample::validate() const {
  if (xs.empty()) throw DomainViolation("sample must contain at least one value", 0.0);
  if (xs.size() != weights.size()) {
    throw DomainViolation("got " + std::to_string(xs.size()) + " values but " +
                              std::to_string(weights.size()) + " weights",
                          static_cast<double>(weights.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !std::isfinite(xs[i])) {
      throw DomainViolation("x_i must be positive, got " + format_value(xs[i]), xs[i]);
    }
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw DomainViolation("weights must be nonnegative, got " + format_value(weights[i]),
                            weights[i]);
    }
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-14) {
    throw DomainViolation("weights must sum to 1, got " + format_value(sum), sum);
  }
}

void Sample::validate_half_bounded() const {
  validate();
  for (double x : xs) {
    if (x > 0.5) throw DomainViolation("x_i must lie in (0, 1/2], got " + format_value(x), x);
  }
}

Means means_of(const Sample& s) {
  s.validate();
  Means m;
  double log_sum = 0.0;
  double recip_sum = 0.0;
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    m.arithmetic += s.weights[i] * s.xs[i];
    if (s.weights[i] != 0.0) log_sum += s.weights[i] * std::log(s.xs[i]);
    recip_sum += s.weights[i] / s.xs[i];
  }
  m.geometric = std::exp(log_sum);
  m.harmonic = 1.0 / recip_sum;
  return m;
}

Means primed_means_of(const Sample& s) {
  s.validate();
  Sample c{s.xs, s.weights};
  for (double& x : c.xs) {
    if (x > 0.5) {
      throw PrimedUnavailable("complemented means need every x_i <= 1/2, got " +
                              format_value(x));
    }
    x = 1.0 - x;
  }
  return means_of(c);
}

MeansBundle scalar_means(const Sample& s) {
  MeansBundle out{means_of(s), std::nullopt};
  if (std::all_of(s.xs.begin(), s.xs.end(), [](double x) { return x <= 0.5; })) {
    out.primed = primed_means_of(s);
  }
  return out;
}

std::string_view to_string(Inequality i) {
  switch (i) {
    case Inequality::RatioAG: return "ratio_ag";
    case Inequality::DiffAG: return "diff_ag";
    case Inequality::DiffAH: return "diff_ah";
    case Inequality::DiffRecip: return "diff_recip";
    case Inequality::RatioAH: return "ratio_ah";
  }
  return "?";
}

std::optional<Inequality> parse_inequality(std::string_view s) {
  for (Inequality i : kAllInequalities)
    if (to_string(i) == s) return i;
  return std::nullopt;
}

namespace {

double side(Inequality which, const Means& m) {
  switch (which) {
    case Inequality::RatioAG: return m.arithmetic / m.geometric;
    case Inequality::DiffAG: return m.arithmetic - m.geometric;
    case Inequality::DiffAH: return m.arithmetic - m.harmonic;
    case Inequality::DiffRecip: return 1.0 / m.harmonic - 1.0 / m.arithmetic;
    case Inequality::RatioAH: return m.arithmetic / m.harmonic;
  }
  return 0.0;
}

}  // namespace

InequalityCheck kyfan_scalar_check(Inequality which, const Sample& s) {
  s.validate_half_bounded();
  InequalityCheck out;
  out.lhs = side(which, primed_means_of(s));
  out.rhs = side(which, means_of(s));
  const double threshold = kEqualityThreshold * std::max(1.0, std::abs(out.rhs));
  out.equality = std::abs(out.lhs - out.rhs) <= threshold;
  out.holds = out.lhs <= out.rhs + threshold;
  return out;
}

AuxiliaryFacts auxiliary_facts(const Sample& s) {
  s.validate_half_bounded();
  const Means m = means_of(s);
  const Means p = primed_means_of(s);
  AuxiliaryFacts out;
  out.ah_primed = p.arithmetic * p.harmonic;
  out.ah = m.arithmetic * m.harmonic;
  out.h_primed = p.harmonic;
  out.h = m.harmonic;
  out.ah_primed_ge = out.ah_primed >= out.ah - kEqualityThreshold * std::max(1.0, out.ah);
  out.h_primed_ge = out.h_primed >= out.h - kEqualityThreshold * std::max(1.0, out.h);
  return out;
}

}  // namespace opmeans::scalar
