#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "opmeans/errors.hpp"
#include "opmeans/rng.hpp"
#include "opmeans/scalar_oracle.hpp"

using namespace opmeans;
using namespace opmeans::scalar;

namespace {

// Random sample with n in [2, 10], x_i in (0, 1/2], Dirichlet-ish weights.
Sample random_sample(Rng& rng) {
  const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 9);
  Sample s;
  for (std::size_t i = 0; i < n; ++i) {
    s.xs.push_back(0.5 * rng.uniform_open_low());
    s.weights.push_back(-std::log(rng.uniform_open_low()));
  }
  const double total = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
  for (double& w : s.weights) w /= total;
  // Push the rounding residue into the largest weight so the sum is 1 to 1e-14.
  const double residue = 1.0 - std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
  *std::max_element(s.weights.begin(), s.weights.end()) += residue;
  return s;
}

bool all_equal(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
}

}  // namespace

TEST_CASE("scalar_means: examples") {
  SUBCASE("all equal") {
    const auto m = means_of(Sample::uniform({0.37, 0.37, 0.37, 0.37}));
    CHECK(m.arithmetic == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(m.geometric == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(m.harmonic == doctest::Approx(0.37).epsilon(1e-15));
  }
  SUBCASE("two points") {
    const auto b = scalar_means(Sample::uniform({0.1, 0.5}));
    REQUIRE(b.primed.has_value());
    CHECK(b.plain.arithmetic == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(b.plain.geometric == doctest::Approx(0.2236068).epsilon(1e-6));
    CHECK(b.plain.harmonic == doctest::Approx(0.1666667).epsilon(1e-6));
    CHECK(b.primed->arithmetic == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(b.primed->geometric == doctest::Approx(0.6708204).epsilon(1e-6));
    CHECK(b.primed->harmonic == doctest::Approx(0.6428571).epsilon(1e-6));
  }
  SUBCASE("three weighted points") {
    const auto m = means_of({{0.1, 0.2, 0.4}, {0.2, 0.3, 0.5}});
    CHECK(m.arithmetic == doctest::Approx(0.28).epsilon(1e-5));
    CHECK(m.geometric == doctest::Approx(0.2462289).epsilon(1e-6));
    CHECK(m.harmonic == doctest::Approx(0.210526).epsilon(1e-5));
  }
  SUBCASE("primed unavailable above one half") {
    const auto b = scalar_means(Sample::uniform({0.1, 0.7}));
    CHECK_FALSE(b.primed.has_value());
    CHECK_THROWS_AS(primed_means_of(Sample::uniform({0.1, 0.7})), PrimedUnavailable);
  }
}

TEST_CASE("scalar_means: domain") {
  CHECK_THROWS_AS(means_of(Sample::uniform({0.1, 0.0})), DomainViolation);
  CHECK_THROWS_AS(means_of(Sample::uniform({0.1, -1.0})), DomainViolation);
  CHECK_THROWS_AS(means_of({{0.1, 0.2}, {0.5, 0.6}}), DomainViolation);
  CHECK_THROWS_AS(means_of({{0.1, 0.2}, {1.5, -0.5}}), DomainViolation);
  CHECK_THROWS_AS(means_of({{0.1, 0.2}, {1.0}}), DomainViolation);
  CHECK_THROWS_AS(means_of({{}, {}}), DomainViolation);
}

TEST_CASE("kyfan_scalar_check: examples") {
  SUBCASE("equality case") {
    for (Inequality i : kAllInequalities) {
      const auto c = kyfan_scalar_check(i, Sample::uniform({0.3, 0.3, 0.3}));
      CHECK(c.holds);
      CHECK(c.equality);
      CHECK(c.lhs == doctest::Approx(c.rhs));
    }
  }
  SUBCASE("diff_ah") {
    const auto c = kyfan_scalar_check(Inequality::DiffAH, Sample::uniform({0.1, 0.5}));
    CHECK(c.lhs == doctest::Approx(0.0571429).epsilon(1e-6));
    CHECK(c.rhs == doctest::Approx(0.1333333).epsilon(1e-6));
    CHECK(c.holds);
    CHECK_FALSE(c.equality);
  }
  SUBCASE("ratio_ag") {
    const auto c = kyfan_scalar_check(Inequality::RatioAG, Sample::uniform({0.1, 0.5}));
    CHECK(c.lhs == doctest::Approx(1.0434984).epsilon(1e-6));
    CHECK(c.rhs == doctest::Approx(1.3416408).epsilon(1e-6));
    CHECK(c.holds);
  }
  SUBCASE("domain message") {
    try {
      (void)kyfan_scalar_check(Inequality::DiffAG, Sample::uniform({0.6, 0.2}));
      FAIL("expected DomainViolation");
    } catch (const DomainViolation& e) {
      CHECK(std::string(e.what()).find("x_i must lie in (0, 1/2]") != std::string::npos);
    }
  }
}

TEST_CASE("auxiliary_facts: examples") {
  const auto half = auxiliary_facts(Sample::uniform({0.5, 0.5}));
  CHECK(half.ah_primed == doctest::Approx(half.ah));
  CHECK(half.h_primed == doctest::Approx(half.h));
  CHECK(half.ah_primed_ge);
  CHECK(half.h_primed_ge);

  const auto f = auxiliary_facts(Sample::uniform({0.1, 0.5}));
  CHECK(f.ah_primed == doctest::Approx(0.45).epsilon(1e-6));
  CHECK(f.ah == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(f.h_primed == doctest::Approx(0.6428571).epsilon(1e-6));
  CHECK(f.h == doctest::Approx(0.1666667).epsilon(1e-6));

  const auto q = auxiliary_facts({{0.25, 0.25, 0.25}, {0.1, 0.3, 0.6}});
  CHECK(q.ah_primed == doctest::Approx(0.5625));
  CHECK(q.ah == doctest::Approx(0.0625));
}

TEST_CASE("random samples: ordering, inequalities, equality flag, auxiliary facts") {
  Rng rng(2718);
  for (int t = 0; t < 10000; ++t) {
    Sample s = random_sample(rng);
    if (t % 50 == 0) std::fill(s.xs.begin(), s.xs.end(), s.xs.front());
    const auto b = scalar_means(s);
    REQUIRE(b.primed.has_value());
    const double tol = 1e-14;
    CHECK(b.plain.harmonic <= b.plain.geometric * (1 + tol));
    CHECK(b.plain.geometric <= b.plain.arithmetic * (1 + tol));
    CHECK(b.primed->harmonic <= b.primed->geometric * (1 + tol));
    CHECK(b.primed->geometric <= b.primed->arithmetic * (1 + tol));
    const bool eq = all_equal(s.xs);
    for (Inequality i : kAllInequalities) {
      const auto c = kyfan_scalar_check(i, s);
      CHECK(c.holds);
      CHECK(c.equality == eq);
    }
    const auto f = auxiliary_facts(s);
    CHECK(f.ah_primed_ge);
    CHECK(f.h_primed_ge);
  }
}

TEST_CASE("near-equal probe of the equality threshold") {
  // Every gap is quadratic in the spread, so at spacing d the two sides differ
  // by O(d^2). With d = 1e-8 that mostly sits below the 1e-12 threshold and the
  // flag fires although the inputs are distinct. diff_recip carries an extra
  // 1/x^3 and resolves the spread when the base is small.
  Rng rng(99);
  std::size_t near_flags = 0, wide_flags = 0, total = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 9);
    const double base = rng.uniform(0.05, 0.45);
    std::vector<double> near, wide;
    for (std::size_t i = 0; i < n; ++i) {
      near.push_back(base + 1e-8 * static_cast<double>(i));
      wide.push_back(base + 1e-4 * static_cast<double>(i));
    }
    for (Inequality i : kAllInequalities) {
      const auto a = kyfan_scalar_check(i, Sample::uniform(near));
      const auto b = kyfan_scalar_check(i, Sample::uniform(wide));
      CHECK(a.holds);
      CHECK(b.holds);
      near_flags += a.equality;
      wide_flags += b.equality;
      ++total;
    }
  }
  MESSAGE("equality flag at spacing 1e-8: " << near_flags << "/" << total
                                            << ", at 1e-4: " << wide_flags << "/" << total);
  CHECK(near_flags >= total * 95 / 100);
  CHECK(wide_flags == 0);
}

TEST_CASE("inequality names round-trip") {
  for (Inequality i : kAllInequalities) CHECK(parse_inequality(to_string(i)) == i);
  CHECK(to_string(Inequality::DiffRecip) == "diff_recip");
  CHECK_FALSE(parse_inequality("ratio_gh").has_value());
}
