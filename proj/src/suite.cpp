#include "opmeans/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "opmeans/errors.hpp"
#include "opmeans/gen.hpp"
#include "opmeans/identities.hpp"
#include "opmeans/scalar_oracle.hpp"

namespace opmeans {

namespace {

enum Check : std::size_t {
  kLemmaI,
  kLemmaII,
  kLemmaIII,
  kTheoremI,
  kTheoremII,
  kTheoremIII,
  kChainEq1,
  kChainEq2,
  kCommHarmGap,
  kCommRatio,
  kCommHarmGapPrimed,
  kCommRatioPrimed,
  kKyFanI,
  kKyFanII,
  kKyFanIII,
  kCommInvGap,
  kCommRatioGap,
  kEndpointZeroGap,
  kRhsPositivity,
  kCrossPath,
  kCheckCount
};

constexpr bool is_gap_check(std::size_t c) {
  return c == kKyFanI || c == kKyFanII || c == kKyFanIII || c == kCommInvGap ||
         c == kCommRatioGap || c == kRhsPositivity;
}

struct Outcome {
  std::size_t check;
  double lambda;
  bool pass;
  double value;
  std::string message;
};

struct InstanceResult {
  std::string source;
  std::size_t dim = 0;
  std::size_t index = 0;
  std::uint64_t instance_seed = 0;
  std::vector<Outcome> outcomes;
};

struct CommutingInput {
  HermitianMatrix a;
  HermitianMatrix b;
  // Shared eigenbasis when known; enables the scalar cross-path check.
  std::optional<Matrix> basis;
  std::vector<double> a_eigs;
  std::vector<double> b_eigs;
};

struct Instance {
  HermitianMatrix t;
  HermitianMatrix a, b;  // strictly positive
  HermitianMatrix p, q;  // 0 < P, Q <= I/2
  std::optional<CommutingInput> commuting;  // 0 < . <= I/2
};

// Scalar values of the five gap expressions for eigenvalue pair (x, y).
struct ScalarGaps {
  double kyfan[3];
  double inv_gap;
  double ratio_gap;
};

ScalarGaps scalar_gaps(double x, double y, double lambda) {
  using scalar::Means;
  using scalar::Sample;
  const Sample s = Sample::pair(x, y, lambda);
  const Means m = scalar::means_of(s);
  const Means mp = scalar::primed_means_of(s);
  const double g2 = std::pow(scalar::means_of(Sample::pair(x, y, 0.5)).geometric, 2);
  const double g2p = std::pow(scalar::primed_means_of(Sample::pair(x, y, 0.5)).geometric, 2);
  ScalarGaps out{};
  out.kyfan[0] = (m.arithmetic - m.harmonic) - (mp.arithmetic - mp.harmonic);
  out.kyfan[1] = g2 * (1.0 / m.harmonic - 1.0 / m.arithmetic) -
                 g2p * (1.0 / mp.harmonic - 1.0 / mp.arithmetic);
  out.kyfan[2] = (x * m.arithmetic / m.harmonic - x) - ((1.0 - x) * mp.arithmetic / mp.harmonic -
                                                         (1.0 - x));
  out.inv_gap = (1.0 / m.harmonic - 1.0 / m.arithmetic) - (1.0 / mp.harmonic - 1.0 / mp.arithmetic);
  out.ratio_gap = m.arithmetic / m.harmonic - mp.arithmetic / mp.harmonic;
  return out;
}

HermitianMatrix in_basis(const Matrix& u, const std::vector<double>& d) {
  return HermitianMatrix(u * Matrix::diagonal(d) * u.adjoint());
}

class InstanceRunner {
 public:
  InstanceRunner(const Instance& inst, const std::vector<double>& grid,
                 const ToleranceConfig& cfg, std::vector<Outcome>& out)
      : inst_(inst), grid_(grid), cfg_(cfg), out_(out) {}

  void run() {
    for (double lambda : grid_) {
      const Weight w(lambda);
      identities(w);
      inequalities(w);
    }
  }

 private:
  void record(std::size_t check, double lambda, bool pass, double value, std::string msg = {}) {
    out_.push_back({check, lambda, pass, value, std::move(msg)});
  }

  void guarded(std::size_t check, double lambda, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(check, lambda, false, std::numeric_limits<double>::quiet_NaN(), e.what());
    }
  }

  void identity(std::size_t check, double lambda, const IdentityCheck& c) {
    record(check, lambda, c.pass, c.rel_residual);
  }

  void gap(std::size_t check, double lambda, const GapCheck& g) {
    record(check, lambda, g.pass, g.margin);
    if (lambda == 0.0 || lambda == 1.0) {
      const double scale = std::max({1.0, g.majorant_norm, g.minorant_norm});
      const double rel = g.gap.frobenius_norm() / scale;
      record(kEndpointZeroGap, lambda, rel <= cfg_.psd_slack, rel);
    }
  }

  void identities(Weight w) {
    const double l = w.value();
    const LemmaPart lparts[] = {LemmaPart::I, LemmaPart::II, LemmaPart::III};
    for (std::size_t k = 0; k < 3; ++k)
      guarded(kLemmaI + k, l, [&] { identity(kLemmaI + k, l, lemma_identity(lparts[k], inst_.t, w, cfg_)); });

    const TheoremPart tparts[] = {TheoremPart::I, TheoremPart::II, TheoremPart::III};
    for (std::size_t k = 0; k < 3; ++k) {
      guarded(kTheoremI + k, l, [&] {
        const IdentityCheck c = theorem_identity(tparts[k], inst_.a, inst_.b, w, cfg_);
        identity(kTheoremI + k, l, c);
        if (k == 0) {
          const LoewnerClass cls = loewner_classify(c.rhs, cfg_);
          record(kRhsPositivity, l, cls.is_psd(),
                 cls.min_eigenvalue / std::max(1.0, std::max(std::abs(cls.min_eigenvalue),
                                                              std::abs(cls.max_eigenvalue))));
        }
      });
    }

    const ChainPart cparts[] = {ChainPart::Eq1, ChainPart::Eq2};
    for (std::size_t k = 0; k < 2; ++k) {
      guarded(kChainEq1 + k, l, [&] {
        const ChainCheck c = chain_identity(cparts[k], inst_.a, inst_.b, w, cfg_);
        record(kChainEq1 + k, l, c.pass, c.max_pairwise_rel_residual);
      });
    }

    if (!inst_.commuting) return;
    const CommutingInput& ci = *inst_.commuting;
    const CommutativePart mparts[] = {CommutativePart::HarmonicGap, CommutativePart::Ratio};
    for (std::size_t k = 0; k < 2; ++k) {
      guarded(kCommHarmGap + k, l, [&] {
        identity(kCommHarmGap + k, l, commutative_identity(mparts[k], ci.a, ci.b, w, cfg_));
      });
      guarded(kCommHarmGapPrimed + k, l, [&] {
        identity(kCommHarmGapPrimed + k, l,
                 commutative_identity(mparts[k], complement(ci.a, cfg_), complement(ci.b, cfg_),
                                      w, cfg_));
      });
    }
  }

  void inequalities(Weight w) {
    const double l = w.value();
    const KyFanPart kparts[] = {KyFanPart::I, KyFanPart::II, KyFanPart::III};
    std::optional<GapCheck> kyfan_pq[3];
    for (std::size_t k = 0; k < 3; ++k) {
      guarded(kKyFanI + k, l, [&] {
        kyfan_pq[k] = kyfan_gap(kparts[k], inst_.p, inst_.q, w, cfg_);
        gap(kKyFanI + k, l, *kyfan_pq[k]);
      });
    }

    // 1x1 instances commute trivially with basis [1].
    if (inst_.p.dim() == 1 && kyfan_pq[0] && kyfan_pq[1] && kyfan_pq[2]) {
      guarded(kCrossPath, l, [&] {
        const ScalarGaps s = scalar_gaps(inst_.p(0, 0).real(), inst_.q(0, 0).real(), l);
        double worst = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          const double got = kyfan_pq[k]->gap(0, 0).real();
          worst = std::max(worst, std::abs(got - s.kyfan[k]) / std::max(1.0, std::abs(s.kyfan[k])));
        }
        record(kCrossPath, l, worst <= 1e-10, worst);
      });
    }

    if (!inst_.commuting) return;
    const CommutingInput& ci = *inst_.commuting;
    const CommutativeGapPart gparts[] = {CommutativeGapPart::InverseGap,
                                         CommutativeGapPart::RatioGap};
    std::optional<GapCheck> comm[2];
    for (std::size_t k = 0; k < 2; ++k) {
      guarded(kCommInvGap + k, l, [&] {
        comm[k] = commutative_kyfan_gap(gparts[k], ci.a, ci.b, w, cfg_);
        gap(kCommInvGap + k, l, *comm[k]);
      });
    }

    if (!ci.basis || !comm[0] || !comm[1]) return;
    guarded(kCrossPath, l, [&] {
      const std::size_t n = ci.a_eigs.size();
      std::vector<double> expect[5];
      for (auto& e : expect) e.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const ScalarGaps s = scalar_gaps(ci.a_eigs[i], ci.b_eigs[i], l);
        for (std::size_t k = 0; k < 3; ++k) expect[k][i] = s.kyfan[k];
        expect[3][i] = s.inv_gap;
        expect[4][i] = s.ratio_gap;
      }
      const HermitianMatrix got[5] = {kyfan_gap(KyFanPart::I, ci.a, ci.b, w, cfg_).gap,
                                      kyfan_gap(KyFanPart::II, ci.a, ci.b, w, cfg_).gap,
                                      kyfan_gap(KyFanPart::III, ci.a, ci.b, w, cfg_).gap,
                                      comm[0]->gap, comm[1]->gap};
      double worst = 0.0;
      for (std::size_t k = 0; k < 5; ++k) {
        const HermitianMatrix want = in_basis(*ci.basis, expect[k]);
        worst = std::max(worst, distance(got[k].matrix(), want.matrix()) /
                                    std::max(1.0, want.frobenius_norm()));
      }
      record(kCrossPath, l, worst <= 1e-10, worst);
    });
  }

  const Instance& inst_;
  const std::vector<double>& grid_;
  const ToleranceConfig& cfg_;
  std::vector<Outcome>& out_;
};

// Eigenvalues either exactly 1/2, a small epsilon, or uniform in between.
std::vector<double> boundary_spectrum(std::size_t dim, Rng& rng) {
  std::vector<double> out(dim);
  for (double& x : out) {
    const double u = rng.uniform();
    if (u < 1.0 / 3.0) {
      x = 0.5;
    } else if (u < 2.0 / 3.0) {
      x = 1e-4;
    } else {
      x = rng.uniform(1e-4, 0.5);
    }
  }
  return out;
}

Instance random_instance(std::size_t dim, std::size_t trial, Rng rng) {
  using gen::SpectrumSpec;
  const SpectrumSpec wide = SpectrumSpec::log_uniform(1e-2, 1e2);
  Instance inst;
  inst.t = gen::random_spd(dim, wide, rng);
  inst.a = gen::random_spd(dim, wide, rng);
  inst.b = gen::random_spd(dim, wide, rng);

  switch (trial % 3) {
    case 0:
      inst.p = gen::random_spd(dim, SpectrumSpec::uniform(1e-3, 0.5), rng);
      inst.q = gen::random_spd(dim, SpectrumSpec::uniform(1e-3, 0.5), rng);
      break;
    case 1:
      inst.p = gen::random_spd(dim, SpectrumSpec::log_uniform(1e-3, 0.5), rng);
      inst.q = gen::random_spd(dim, SpectrumSpec::log_uniform(1e-3, 0.5), rng);
      break;
    default:
      inst.p = gen::random_spd_with_eigenvalues(boundary_spectrum(dim, rng), rng);
      inst.q = gen::random_spd_with_eigenvalues(boundary_spectrum(dim, rng), rng);
      break;
  }

  gen::CommutingPair cp = gen::random_commuting_pair_with_basis(
      dim, SpectrumSpec::log_uniform(1e-3, 0.5), SpectrumSpec::uniform(1e-3, 0.5), rng);
  inst.commuting = CommutingInput{std::move(cp.a), std::move(cp.b), std::move(cp.basis),
                                  std::move(cp.a_eigenvalues), std::move(cp.b_eigenvalues)};
  return inst;
}

Instance edge_instance(const gen::EdgeCase& e, const ToleranceConfig& cfg) {
  Instance inst{e.a, e.a, e.b, e.a, e.b, std::nullopt};
  const double c = commutator_norm(e.a, e.b);
  if (c <= cfg.commute_tol * e.a.frobenius_norm() * e.b.frobenius_norm()) {
    CommutingInput ci{e.a, e.b, std::nullopt, {}, {}};
    if (e.a.dim() == 1) {
      ci.basis = Matrix::identity(1);
      ci.a_eigs = {e.a(0, 0).real()};
      ci.b_eigs = {e.b(0, 0).real()};
    }
    inst.commuting = std::move(ci);
  }
  return inst;
}

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs body(i) for i in [0, jobs) on a small pool; results are indexed, so
// aggregation order never depends on scheduling.
void parallel_for(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

nlohmann::ordered_json finding_json(const Finding& f) {
  nlohmann::ordered_json j;
  j["check"] = f.check;
  j["source"] = f.source;
  j["dim"] = f.dim;
  j["index"] = f.index;
  j["lambda"] = f.lambda;
  j["run_seed"] = f.run_seed;
  j["instance_seed"] = f.instance_seed;
  if (std::isfinite(f.value)) {
    j["value"] = f.value;
  } else {
    j["value"] = nullptr;
  }
  j["message"] = f.message;
  return j;
}

double finite_or(double v, double fallback) { return std::isfinite(v) ? v : fallback; }

}  // namespace

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {
      "lemma_i",          "lemma_ii",         "lemma_iii",
      "theorem_i",        "theorem_ii",       "theorem_iii",
      "chain_eq1",        "chain_eq2",        "commutative_harm_gap",
      "commutative_ratio", "commutative_harm_gap_primed", "commutative_ratio_primed",
      "kyfan_gap_i",      "kyfan_gap_ii",     "kyfan_gap_iii",
      "commutative_inv_gap", "commutative_ratio_gap", "endpoint_zero_gap",
      "rhs_positivity",   "cross_path"};
  return names;
}

std::uint64_t verify_instance_seed(std::uint64_t run_seed, std::size_t dim, std::size_t trial) {
  return Rng(run_seed).child(dim).child(trial).seed();
}

std::size_t RunReport::total_pass() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass;
  return n;
}

std::size_t RunReport::total_fail() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.fail;
  return n;
}

RunReport run_verify(const VerifyOptions& opts) {
  opts.cfg.validate();
  for (double l : opts.lambda_grid) Weight{l};
  for (std::size_t d : opts.dims)
    if (d == 0) throw InvalidArgument("dimensions must be >= 1");
  const auto started = std::chrono::steady_clock::now();

  struct Job {
    std::size_t dim;
    std::size_t index;
    bool edge;
  };
  std::vector<Job> jobs;
  std::vector<std::vector<gen::EdgeCase>> edges(opts.dims.size());
  for (std::size_t di = 0; di < opts.dims.size(); ++di) {
    const std::size_t dim = opts.dims[di];
    if (opts.edge_cases) {
      edges[di] = gen::edge_case_suite(dim);
      for (std::size_t e = 0; e < edges[di].size(); ++e) jobs.push_back({di, e, true});
    }
    for (std::size_t t = 0; t < opts.trials; ++t) jobs.push_back({di, t, false});
  }

  std::vector<InstanceResult> results(jobs.size());
  parallel_for(jobs.size(), resolve_threads(opts.threads, jobs.size()), [&](std::size_t j) {
    const Job& job = jobs[j];
    const std::size_t dim = opts.dims[job.dim];
    InstanceResult& r = results[j];
    r.dim = dim;
    r.index = job.index;
    Instance inst;
    if (job.edge) {
      const gen::EdgeCase& e = edges[job.dim][job.index];
      r.source = "edge:" + e.name;
      inst = edge_instance(e, opts.cfg);
    } else {
      r.source = "random";
      r.instance_seed = verify_instance_seed(opts.seed, dim, job.index);
      inst = random_instance(dim, job.index, Rng(r.instance_seed));
    }
    InstanceRunner(inst, opts.lambda_grid, opts.cfg, r.outcomes).run();
  });

  RunReport report;
  report.suite = "verify";
  report.seed = opts.seed;
  report.dims = opts.dims;
  report.lambda_grid = opts.lambda_grid;
  report.trials = opts.trials;
  report.tolerances = opts.cfg;
  const auto& names = verify_check_names();
  report.checks.resize(kCheckCount);
  for (std::size_t c = 0; c < kCheckCount; ++c) {
    report.checks[c].name = names[c];
    report.checks[c].is_gap = is_gap_check(c);
    report.checks[c].worst = is_gap_check(c) ? std::numeric_limits<double>::infinity() : 0.0;
  }
  report.worst_gap_margin = std::numeric_limits<double>::infinity();

  for (const InstanceResult& r : results) {
    for (const Outcome& o : r.outcomes) {
      CheckTally& t = report.checks[o.check];
      (o.pass ? t.pass : t.fail) += 1;
      if (std::isfinite(o.value)) {
        if (t.is_gap) {
          t.worst = std::min(t.worst, o.value);
          report.worst_gap_margin = std::min(report.worst_gap_margin, o.value);
        } else {
          t.worst = std::max(t.worst, o.value);
          if (o.check != kEndpointZeroGap && o.check != kCrossPath) {
            report.worst_residual = std::max(report.worst_residual, o.value);
          }
        }
      }
      if (!o.pass) {
        report.findings.push_back({names[o.check], r.source, r.dim, r.index, o.lambda, opts.seed,
                                   r.instance_seed, o.value, o.message});
      }
    }
  }
  for (CheckTally& t : report.checks)
    if (!std::isfinite(t.worst)) t.worst = 0.0;
  if (!std::isfinite(report.worst_gap_margin)) report.worst_gap_margin = 0.0;

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string to_string(FuzzTarget t) {
  return t == FuzzTarget::InverseGapNoncommuting ? "inv_gap_noncomm" : "ratio_gap_noncomm";
}

std::optional<FuzzTarget> parse_fuzz_target(const std::string& s) {
  if (s == "inv_gap_noncomm") return FuzzTarget::InverseGapNoncommuting;
  if (s == "ratio_gap_noncomm") return FuzzTarget::RatioGapNoncommuting;
  return std::nullopt;
}

RunReport run_fuzz(const FuzzOptions& opts) {
  opts.cfg.validate();
  if (opts.budget < 1) throw InvalidArgument("budget must be >= 1");
  if (opts.dims.empty()) throw InvalidArgument("at least one dimension is required");
  for (std::size_t d : opts.dims)
    if (d == 0) throw InvalidArgument("dimensions must be >= 1");
  const auto started = std::chrono::steady_clock::now();

  const CommutativeGapPart part = opts.target == FuzzTarget::InverseGapNoncommuting
                                      ? CommutativeGapPart::InverseGap
                                      : CommutativeGapPart::RatioGap;
  const std::size_t controls = opts.budget / 10;
  const Rng root(opts.seed);
  // Controls draw from a separate child of the root so sample i is the same
  // whatever the budget.
  const Rng control_root = root.child(~std::uint64_t{0});

  struct Sample {
    std::size_t dim = 0;
    double lambda = 0.0;
    std::uint64_t instance_seed = 0;
    double margin = std::numeric_limits<double>::quiet_NaN();
    bool pass = false;
    std::string message;
  };
  std::vector<Sample> samples(opts.budget + controls);

  parallel_for(samples.size(), resolve_threads(opts.threads, samples.size()), [&](std::size_t i) {
    const bool control = i >= opts.budget;
    Rng rng = control ? control_root.child(i - opts.budget) : root.child(i);
    Sample& s = samples[i];
    s.instance_seed = rng.seed();
    s.dim = opts.dims[rng.next_u64() % opts.dims.size()];
    s.lambda = rng.uniform();
    const auto spec = gen::SpectrumSpec::log_uniform(1e-3, 0.5);
    try {
      GapCheck g;
      if (control) {
        const gen::HermitianPair p = gen::random_commuting_pair(s.dim, spec, spec, rng);
        g = commutative_kyfan_gap(part, p.a, p.b, Weight(s.lambda), opts.cfg);
      } else {
        const HermitianMatrix a = gen::random_spd(s.dim, spec, rng);
        const HermitianMatrix b = gen::random_spd(s.dim, spec, rng);
        g = commutative_kyfan_gap(part, a, b, Weight(s.lambda), opts.cfg,
                                  CommutationPolicy::Skip);
      }
      s.margin = g.margin;
      s.pass = g.pass;
    } catch (const std::exception& e) {
      s.message = e.what();
    }
  });

  RunReport report;
  report.suite = "fuzz";
  report.target = to_string(opts.target);
  report.scope_note =
      "exploratory: the inequality is established only for commuting pairs; violations on "
      "non-commuting inputs are findings, not failures";
  report.seed = opts.seed;
  report.dims = opts.dims;
  report.trials = opts.budget;
  report.tolerances = opts.cfg;
  report.samples = opts.budget;
  report.controls = controls;
  report.control_min_margin = std::numeric_limits<double>::infinity();
  report.worst_gap_margin = std::numeric_limits<double>::infinity();

  CheckTally noncomm{to_string(opts.target), 0, 0, std::numeric_limits<double>::infinity(), true};
  CheckTally control{"commuting_control", 0, 0, std::numeric_limits<double>::infinity(), true};

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    const bool is_control = i >= opts.budget;
    const std::size_t index = is_control ? i - opts.budget : i;
    CheckTally& tally = is_control ? control : noncomm;
    (s.pass ? tally.pass : tally.fail) += 1;
    Finding f{tally.name, is_control ? "control" : "random", s.dim, index, s.lambda, opts.seed,
              s.instance_seed, s.margin, s.message};
    if (std::isfinite(s.margin)) {
      tally.worst = std::min(tally.worst, s.margin);
      if (is_control) {
        report.control_min_margin = std::min(report.control_min_margin, s.margin);
      } else if (s.margin < report.worst_gap_margin) {
        report.worst_gap_margin = s.margin;
        report.min_margin_sample = f;
      }
    }
    if (!s.pass) {
      if (!is_control) ++report.violations;
      report.findings.push_back(std::move(f));
    }
  }
  for (CheckTally* t : {&noncomm, &control})
    if (!std::isfinite(t->worst)) t->worst = 0.0;
  if (!std::isfinite(report.control_min_margin)) report.control_min_margin = 0.0;
  if (!std::isfinite(report.worst_gap_margin)) report.worst_gap_margin = 0.0;
  report.checks = {noncomm, control};
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string RunReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["suite"] = suite;
  if (!target.empty()) {
    j["target"] = target;
    j["scope"] = scope_note;
  }
  j["seed"] = seed;
  j["rng_stream_version"] = Rng::kStreamVersion;
  j["dims"] = dims;
  if (suite == "verify") {
    j["lambda_grid"] = lambda_grid;
    j["trials"] = trials;
  }
  j["tolerances"] = {{"rel_residual_tol", tolerances.rel_residual_tol},
                     {"psd_slack", tolerances.psd_slack},
                     {"strict_pos_floor", tolerances.strict_pos_floor},
                     {"eigen_sweep_limit", tolerances.eigen_sweep_limit},
                     {"commute_tol", tolerances.commute_tol}};
  nlohmann::ordered_json checks_json = nlohmann::ordered_json::array();
  for (const CheckTally& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"fail", c.fail},
                           {c.is_gap ? "min_margin" : "max_value", c.worst}});
  }
  j["checks"] = checks_json;
  j["total"] = {{"pass", total_pass()}, {"fail", total_fail()}};
  if (suite == "fuzz") {
    j["samples"] = samples;
    j["violations"] = violations;
    j["min_margin"] = worst_gap_margin;
    j["min_margin_sample"] =
        min_margin_sample ? finding_json(*min_margin_sample) : nlohmann::ordered_json(nullptr);
    j["controls"] = controls;
    j["control_min_margin"] = control_min_margin;
  } else {
    j["worst_residual"] = worst_residual;
    j["worst_gap_margin"] = worst_gap_margin;
  }
  nlohmann::ordered_json findings_json = nlohmann::ordered_json::array();
  for (const Finding& f : findings) findings_json.push_back(finding_json(f));
  j["findings"] = findings_json;
  return j.dump(indent);
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "suite: " << suite;
  if (!target.empty()) os << " (" << target << ")";
  os << "\nseed: " << seed << "\ndims:";
  for (std::size_t d : dims) os << ' ' << d;
  os << '\n';
  if (suite == "fuzz") {
    os << "scope: " << scope_note << '\n';
    os << "samples: " << samples << "  violations: " << violations
       << "  min margin: " << worst_gap_margin << '\n';
    if (min_margin_sample) {
      os << "  at sample " << min_margin_sample->index << " (dim " << min_margin_sample->dim
         << ", lambda " << min_margin_sample->lambda << ", instance seed "
         << min_margin_sample->instance_seed << ")\n";
    }
    os << "controls: " << controls << "  control min margin: " << control_min_margin << '\n';
  } else {
    os << "trials per dim: " << trials << "  lambda grid size: " << lambda_grid.size() << '\n';
  }
  for (const CheckTally& c : checks) {
    os << "  " << (c.fail == 0 ? "ok  " : "FAIL") << ' ' << c.name << ": " << c.pass << " pass, "
       << c.fail << " fail, " << (c.is_gap ? "min margin " : "max ") << c.worst << '\n';
  }
  if (suite != "fuzz") {
    os << "worst residual: " << worst_residual << "  worst gap margin: " << worst_gap_margin
       << '\n';
  }
  const std::size_t shown = std::min<std::size_t>(findings.size(), 20);
  if (!findings.empty()) os << "findings (" << findings.size() << "):\n";
  for (std::size_t i = 0; i < shown; ++i) {
    const Finding& f = findings[i];
    os << "  " << f.check << " " << f.source << " dim=" << f.dim << " index=" << f.index
       << " lambda=" << f.lambda << " instance_seed=" << f.instance_seed
       << " value=" << finite_or(f.value, 0.0);
    if (!f.message.empty()) os << " (" << f.message << ")";
    os << '\n';
  }
  if (findings.size() > shown) os << "  ... " << findings.size() - shown << " more\n";
  os << "wall time: " << wall_seconds << " s\n";
  return os.str();
}

}  // namespace opmeans
