#include <cmath>
#include <vector>

#include "doctest.h"
#include "opmeans/errors.hpp"
#include "opmeans/gen.hpp"
#include "opmeans/identities.hpp"
#include "opmeans/linalg.hpp"
#include "opmeans/means.hpp"
#include "scalar_reference.hpp"

using namespace opmeans;

namespace {

HermitianMatrix s1(double x) { return HermitianMatrix::scalar(1, x); }
double v(const HermitianMatrix& m) { return m(0, 0).real(); }
double v(const Matrix& m) { return m(0, 0).real(); }

constexpr double kGolden = 1e-6;

bool is_zero(const Matrix& m) { return m.frobenius_norm() <= 1e-14; }

}  // namespace

TEST_CASE("reference formulas reproduce the hand values") {
  // Guards the oracle itself before it is used against the matrix path.
  const ref::Two s{0.2, 0.4, 0.5};
  CHECK(s.thm_i() == doctest::Approx(0.0333333).epsilon(kGolden));
  CHECK(s.thm_i_rhs() == doctest::Approx(0.0333333).epsilon(kGolden));
  CHECK(s.thm_iii() == doctest::Approx(0.025).epsilon(kGolden));
  CHECK(s.thm_iii_rhs() == doctest::Approx(0.025).epsilon(kGolden));
  CHECK(s.eq2_member() == doctest::Approx(0.225).epsilon(kGolden));
  CHECK(s.inv_gap_expr() == doctest::Approx(0.4166667).epsilon(kGolden));
  CHECK(s.harm_gap_rhs() == doctest::Approx(0.4166667).epsilon(kGolden));
  CHECK(s.ratio_expr() - 1 == doctest::Approx(0.125).epsilon(kGolden));
  CHECK(s.ratio_rhs() == doctest::Approx(0.125).epsilon(kGolden));
  CHECK(ref::gap_i(s) == doctest::Approx(0.0190476).epsilon(kGolden));
  CHECK(ref::gap_iii(s) == doctest::Approx(0.0083333).epsilon(kGolden));
  CHECK(ref::gap_inv(s) == doctest::Approx(0.3869048).epsilon(kGolden));
  CHECK(ref::gap_ratio(s) == doctest::Approx(0.1041667).epsilon(kGolden));
  const ref::One t{2.0, 0.5};
  CHECK(t.lemma_i() == doctest::Approx(0.1666667).epsilon(kGolden));
  CHECK(t.lemma_i_rhs() == doctest::Approx(0.1666667).epsilon(kGolden));
  CHECK(t.lemma_iii() == doctest::Approx(0.125).epsilon(kGolden));
  CHECK(t.lemma_iii_rhs() == doctest::Approx(0.125).epsilon(kGolden));
}

TEST_CASE("lemma_identity: examples") {
  SUBCASE("T = I annihilates both sides") {
    for (double l : {0.0, 0.3, 1.0}) {
      const auto c = lemma_identity(LemmaPart::I, HermitianMatrix::identity(3), Weight(l));
      CHECK(c.pass);
      CHECK(is_zero(c.lhs.matrix()));
      CHECK(is_zero(c.rhs.matrix()));
    }
  }
  SUBCASE("T = 2") {
    const ref::One t{2.0, 0.5};
    const auto i = lemma_identity(LemmaPart::I, s1(2.0), Weight(0.5));
    CHECK(i.pass);
    CHECK(v(i.lhs) == doctest::Approx(t.lemma_i()).epsilon(1e-14));
    CHECK(v(i.rhs) == doctest::Approx(t.lemma_i_rhs()).epsilon(1e-14));
    CHECK(v(i.lhs) == doctest::Approx(0.1666667).epsilon(kGolden));
    const auto iii = lemma_identity(LemmaPart::III, s1(2.0), Weight(0.5));
    CHECK(iii.pass);
    CHECK(v(iii.lhs) == doctest::Approx(0.125).epsilon(kGolden));
    CHECK(v(iii.rhs) == doctest::Approx(0.125).epsilon(kGolden));
  }
  SUBCASE("requires strict positivity") {
    const std::vector<double> d{1.0, 0.0};
    CHECK_THROWS_AS(lemma_identity(LemmaPart::II, HermitianMatrix::diagonal(d), Weight(0.5)),
                    NotStrictlyPositive);
  }
}

TEST_CASE("theorem_identity: examples") {
  SUBCASE("A = B") {
    const std::vector<double> d{0.2, 0.4};
    const auto a = HermitianMatrix::diagonal(d);
    const auto c = theorem_identity(TheoremPart::I, a, a, Weight(0.3));
    CHECK(c.pass);
    CHECK(c.lhs.frobenius_norm() < 1e-15);
    CHECK(c.rhs.frobenius_norm() < 1e-15);
  }
  SUBCASE("scalars 0.2, 0.4") {
    const ref::Two s{0.2, 0.4, 0.5};
    const auto i = theorem_identity(TheoremPart::I, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(i.pass);
    CHECK(v(i.lhs) == doctest::Approx(0.0333333).epsilon(kGolden));
    CHECK(v(i.rhs) == doctest::Approx(0.0333333).epsilon(kGolden));
    const auto ii = theorem_identity(TheoremPart::II, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(ii.pass);
    CHECK(v(ii.lhs) == doctest::Approx(s.thm_ii()).epsilon(1e-13));
    const auto iii = theorem_identity(TheoremPart::III, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(iii.pass);
    CHECK(v(iii.lhs) == doctest::Approx(0.025).epsilon(kGolden));
    CHECK(v(iii.rhs) == doctest::Approx(0.025).epsilon(kGolden));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(theorem_identity(TheoremPart::I, s1(0.2), HermitianMatrix::identity(2),
                                     Weight(0.5)),
                    DimensionMismatch);
  }
}

TEST_CASE("chain_identity: examples") {
  SUBCASE("EQ1 with A = B is all zeros") {
    Rng rng(1);
    const auto a = gen::random_spd(3, gen::SpectrumSpec::uniform(0.1, 1.0), rng);
    const auto c = chain_identity(ChainPart::Eq1, a, a, Weight(0.4));
    CHECK(c.pass);
    CHECK(c.members.size() == 4);
    for (const auto& m : c.members) CHECK(m.frobenius_norm() < 1e-12);
  }
  SUBCASE("EQ1 scalars") {
    const auto c = chain_identity(ChainPart::Eq1, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(c.pass);
    for (const auto& m : c.members) CHECK(v(m) == doctest::Approx(0.0333333).epsilon(kGolden));
  }
  SUBCASE("EQ2 scalars") {
    const auto c = chain_identity(ChainPart::Eq2, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(c.pass);
    CHECK(c.members.size() == 4);
    for (const auto& m : c.members) CHECK(v(m) == doctest::Approx(0.225).epsilon(kGolden));
  }
  SUBCASE("non-Hermitian members stay unsymmetrized") {
    Rng rng(2);
    const auto spec = gen::SpectrumSpec::uniform(0.1, 1.0);
    const auto a = gen::random_spd(3, spec, rng);
    const auto b = gen::random_spd(3, spec, rng);
    const auto c = chain_identity(ChainPart::Eq2, a, b, Weight(0.3));
    CHECK(c.pass);
    // A (A!B)^-1 (A nabla B) is not Hermitian for non-commuting A, B, yet it
    // equals the Hermitian members.
    const Matrix& m1 = c.members[1];
    CHECK(distance(m1, m1.adjoint()) < 1e-9 * m1.frobenius_norm());
    CHECK(commutator_norm(a, b) > 1e-3);
  }
}

TEST_CASE("commutative_identity: examples") {
  SUBCASE("ratio with A = B") {
    const auto a = HermitianMatrix::scalar(2, 0.3);
    const auto c = commutative_identity(CommutativePart::Ratio, a, a, Weight(0.7));
    CHECK(c.pass);
    CHECK(c.lhs.frobenius_norm() < 1e-14);
    CHECK(c.rhs.frobenius_norm() < 1e-14);
  }
  SUBCASE("scalars") {
    const auto h = commutative_identity(CommutativePart::HarmonicGap, s1(0.2), s1(0.4),
                                        Weight(0.5));
    CHECK(h.pass);
    CHECK(v(h.lhs) == doctest::Approx(0.4166667).epsilon(kGolden));
    CHECK(v(h.rhs) == doctest::Approx(0.4166667).epsilon(kGolden));
    const auto r = commutative_identity(CommutativePart::Ratio, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(r.pass);
    CHECK(v(r.lhs) == doctest::Approx(0.125).epsilon(kGolden));
    CHECK(v(r.rhs) == doctest::Approx(0.125).epsilon(kGolden));
  }
  SUBCASE("primed through the complement") {
    const ref::Two s{0.2, 0.4, 0.5};
    const auto r = commutative_identity(CommutativePart::HarmonicGap, complement(s1(0.2)),
                                        complement(s1(0.4)), Weight(0.5));
    CHECK(r.pass);
    CHECK(v(r.lhs) == doctest::Approx(s.primed().inv_gap_expr()).epsilon(1e-13));
  }
  SUBCASE("rejects non-commuting input") {
    const auto cases = gen::edge_case_suite(2);
    for (const auto& e : cases) {
      if (e.name != "noncommuting_rotation") continue;
      try {
        (void)commutative_identity(CommutativePart::Ratio, e.a, e.b, Weight(0.5));
        FAIL("expected NotCommuting");
      } catch (const NotCommuting& ex) {
        CHECK(ex.commutator_norm() == doctest::Approx(commutator_norm(e.a, e.b)));
      }
      CHECK_THROWS_AS(
          commutative_kyfan_gap(CommutativeGapPart::InverseGap, e.a, e.b, Weight(0.5)),
          NotCommuting);
    }
  }
}

TEST_CASE("kyfan_gap: examples") {
  SUBCASE("A = B") {
    const std::vector<double> d{0.1, 0.3};
    const auto a = HermitianMatrix::diagonal(d);
    const auto g = kyfan_gap(KyFanPart::I, a, a, Weight(0.4));
    CHECK(g.pass);
    CHECK(g.gap.frobenius_norm() < 1e-15);
  }
  SUBCASE("scalars") {
    const auto i = kyfan_gap(KyFanPart::I, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(i.pass);
    CHECK(v(i.gap) == doctest::Approx(0.0190476).epsilon(kGolden));
    const auto ii = kyfan_gap(KyFanPart::II, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(ii.pass);
    CHECK(v(ii.gap) == doctest::Approx(ref::gap_ii({0.2, 0.4, 0.5})).epsilon(1e-12));
    const auto iii = kyfan_gap(KyFanPart::III, s1(0.2), s1(0.4), Weight(0.5));
    CHECK(iii.pass);
    CHECK(v(iii.gap) == doctest::Approx(0.0083333).epsilon(kGolden));
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(kyfan_gap(KyFanPart::I, s1(0.6), s1(0.4), Weight(0.5)), DomainViolation);
    CHECK_THROWS_AS(kyfan_gap(KyFanPart::I, s1(0.2), s1(0.0), Weight(0.5)), DomainViolation);
  }
}

TEST_CASE("commutative_kyfan_gap: examples") {
  const auto a = HermitianMatrix::scalar(2, 0.3);
  CHECK(commutative_kyfan_gap(CommutativeGapPart::InverseGap, a, a, Weight(0.5))
            .gap.frobenius_norm() < 1e-14);
  const auto inv = commutative_kyfan_gap(CommutativeGapPart::InverseGap, s1(0.2), s1(0.4),
                                         Weight(0.5));
  CHECK(inv.pass);
  CHECK(v(inv.gap) == doctest::Approx(0.3869048).epsilon(kGolden));
  const auto ratio = commutative_kyfan_gap(CommutativeGapPart::RatioGap, s1(0.2), s1(0.4),
                                           Weight(0.5));
  CHECK(ratio.pass);
  CHECK(v(ratio.gap) == doctest::Approx(0.1041667).epsilon(kGolden));
}

TEST_CASE("lemma identities on random strictly positive T") {
  Rng root(31);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    const auto t = gen::random_spd(1 + i % 8, gen::SpectrumSpec::log_uniform(1e-2, 1e2), rng);
    for (int k = 0; k <= 10; ++k) {
      for (LemmaPart p : {LemmaPart::I, LemmaPart::II, LemmaPart::III}) {
        const auto c = lemma_identity(p, t, Weight(k / 10.0));
        worst = std::max(worst, c.rel_residual);
        CHECK(c.pass);
      }
    }
  }
  MESSAGE("worst lemma relative residual " << worst);
}

TEST_CASE("theorem and chain identities on random pairs") {
  Rng root(32);
  ToleranceConfig cfg;
  cfg.rel_residual_tol = 1e-9;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
    const auto spec = gen::SpectrumSpec::log_uniform(1e-2, 1e2);
    const auto a = gen::random_spd(n, spec, rng);
    const auto b = gen::random_spd(n, spec, rng);
    const Weight w(rng.uniform());
    for (TheoremPart p : {TheoremPart::I, TheoremPart::II, TheoremPart::III})
      CHECK(theorem_identity(p, a, b, w, cfg).pass);
    for (ChainPart p : {ChainPart::Eq1, ChainPart::Eq2})
      CHECK(chain_identity(p, a, b, w, cfg).pass);
    // The theorem (i) right side is a congruence of a positive matrix.
    const auto rhs = theorem_identity(TheoremPart::I, a, b, w, cfg).rhs;
    CHECK(loewner_classify(rhs, cfg).is_psd());
  }
}

TEST_CASE("Ky Fan gaps on random half-bounded pairs") {
  Rng root(33);
  for (int i = 0; i < 1000; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
    auto ea = gen::sample_spectrum(n, gen::SpectrumSpec::log_uniform(1e-4, 0.5), rng);
    auto eb = gen::sample_spectrum(n, gen::SpectrumSpec::uniform(1e-4, 0.5), rng);
    if (i % 4 == 0) {  // near-boundary spectra {eps, 1/2}
      ea.front() = 1e-6;
      eb.back() = 0.5;
    }
    const auto a = gen::random_spd_with_eigenvalues(ea, rng);
    const auto b = gen::random_spd_with_eigenvalues(eb, rng);
    const Weight w(rng.uniform());
    for (KyFanPart p : {KyFanPart::I, KyFanPart::II, KyFanPart::III}) {
      const auto g = kyfan_gap(p, a, b, w);
      CHECK(g.pass);
      // The recorded skew part is rounding from the sandwich products; with an
      // eigenvalue at 1e-6 those products pass through norms near 1e6.
      const double bound = (i % 4 == 0) ? 1e-10 : 1e-12;
      CHECK(g.defect <= bound * std::max({1.0, g.majorant_norm, g.minorant_norm}));
    }
  }
}

TEST_CASE("gaps vanish at the endpoints") {
  Rng root(34);
  for (int i = 0; i < 200; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
    const auto spec = gen::SpectrumSpec::uniform(1e-3, 0.5);
    const auto a = gen::random_spd(n, spec, rng);
    const auto b = gen::random_spd(n, spec, rng);
    for (double l : {0.0, 1.0}) {
      for (KyFanPart p : {KyFanPart::I, KyFanPart::II, KyFanPart::III}) {
        const auto g = kyfan_gap(p, a, b, Weight(l));
        const double scale = std::max({1.0, g.majorant_norm, g.minorant_norm});
        CHECK(g.gap.frobenius_norm() <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("commuting pairs agree with the scalar reference eigenvalue-wise") {
  Rng root(35);
  for (int i = 0; i < 300; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
    const auto p = gen::random_commuting_pair_with_basis(
        n, gen::SpectrumSpec::log_uniform(1e-3, 0.5), gen::SpectrumSpec::uniform(1e-3, 0.5), rng);
    const double l = rng.uniform();
    const Weight w(l);
    const Matrix& u = p.basis;
    auto eigenwise = [&](const HermitianMatrix& m) {
      return u.adjoint() * m.matrix() * u;  // diagonal in the shared basis
    };
    const Matrix inv = eigenwise(commutative_kyfan_gap(CommutativeGapPart::InverseGap, p.a, p.b, w).gap);
    const Matrix ratio =
        eigenwise(commutative_kyfan_gap(CommutativeGapPart::RatioGap, p.a, p.b, w).gap);
    const Matrix k1 = eigenwise(kyfan_gap(KyFanPart::I, p.a, p.b, w).gap);
    const Matrix k2 = eigenwise(kyfan_gap(KyFanPart::II, p.a, p.b, w).gap);
    const Matrix k3 = eigenwise(kyfan_gap(KyFanPart::III, p.a, p.b, w).gap);
    const Matrix hg =
        eigenwise(commutative_identity(CommutativePart::HarmonicGap, p.a, p.b, w).lhs);
    for (std::size_t j = 0; j < n; ++j) {
      const ref::Two s{p.a_eigenvalues[j], p.b_eigenvalues[j], l};
      auto close = [&](const Matrix& m, double expect) {
        return std::abs(m(j, j) - expect) <= 1e-10 * std::max(1.0, std::abs(expect));
      };
      CHECK(close(inv, ref::gap_inv(s)));
      CHECK(close(ratio, ref::gap_ratio(s)));
      CHECK(close(k1, ref::gap_i(s)));
      CHECK(close(k2, ref::gap_ii(s)));
      CHECK(close(k3, ref::gap_iii(s)));
      CHECK(close(hg, s.inv_gap_expr()));
    }
    for (CommutativePart part : {CommutativePart::HarmonicGap, CommutativePart::Ratio}) {
      CHECK(commutative_identity(part, p.a, p.b, w).pass);
      CHECK(commutative_identity(part, complement(p.a), complement(p.b), w).pass);
    }
  }
}

TEST_CASE("skip policy evaluates non-commuting pairs") {
  for (const auto& e : gen::edge_case_suite(4)) {
    if (e.name != "noncommuting_rotation") continue;
    const auto g = commutative_kyfan_gap(CommutativeGapPart::RatioGap, e.a, e.b, Weight(0.5), {},
                                         CommutationPolicy::Skip);
    CHECK(std::isfinite(g.min_eigenvalue));
  }
}
