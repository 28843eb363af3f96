#include <string>

#include "doctest.h"
#include "json.hpp"
#include "opmeans/errors.hpp"
#include "opmeans/suite.hpp"

using namespace opmeans;
using nlohmann::json;

namespace {

VerifyOptions small_verify(std::uint64_t seed) {
  VerifyOptions o;
  o.seed = seed;
  o.dims = {1, 2, 3};
  o.trials = 3;
  o.lambda_grid = {0.0, 0.5, 1.0};
  o.cfg.rel_residual_tol = 1e-9;
  return o;
}

}  // namespace

TEST_CASE("verify report is deterministic across thread counts") {
  VerifyOptions a = small_verify(42);
  a.threads = 1;
  VerifyOptions b = small_verify(42);
  b.threads = 4;
  const RunReport ra = run_verify(a);
  const RunReport rb = run_verify(b);
  CHECK(ra.to_json() == rb.to_json());
  CHECK(ra.to_json() == run_verify(a).to_json());
  CHECK(ra.to_json() != run_verify(small_verify(43)).to_json());

  const json j = json::parse(ra.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "verify");
  CHECK(j["seed"] == 42);
  CHECK(j["rng_stream_version"] == 1);
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(j["checks"].size() == verify_check_names().size());
}

TEST_CASE("verify with zero trials runs the edge cases only and passes") {
  VerifyOptions o;
  o.seed = 1;
  o.trials = 0;
  o.cfg.rel_residual_tol = 1e-9;
  const RunReport r = run_verify(o);
  CHECK(r.ok());
  CHECK(r.findings.empty());
  CHECK(r.total_pass() > 0);
  for (const auto& c : r.checks)
    if (c.name == "lemma_i") CHECK(c.pass > 0);
}

TEST_CASE("verify without edge cases or trials checks nothing") {
  VerifyOptions o = small_verify(1);
  o.trials = 0;
  o.edge_cases = false;
  const RunReport r = run_verify(o);
  CHECK(r.total_pass() == 0);
  CHECK(r.ok());
}

TEST_CASE("failed checks produce reproducible findings") {
  VerifyOptions o = small_verify(7);
  o.edge_cases = false;
  o.cfg.rel_residual_tol = 1e-300;  // nothing can meet this
  const RunReport r = run_verify(o);
  REQUIRE_FALSE(r.ok());
  REQUIRE_FALSE(r.findings.empty());
  for (const auto& f : r.findings) {
    CHECK(f.run_seed == 7);
    CHECK(f.source == "random");
    CHECK(f.instance_seed == verify_instance_seed(7, f.dim, f.index));
  }
  // Canonical ordering: by dim, then trial index.
  for (std::size_t i = 1; i < r.findings.size(); ++i) {
    const auto& p = r.findings[i - 1];
    const auto& q = r.findings[i];
    CHECK((p.dim < q.dim || (p.dim == q.dim && p.index <= q.index)));
  }
}

TEST_CASE("verify rejects bad options") {
  VerifyOptions o = small_verify(1);
  o.dims = {0};
  CHECK_THROWS_AS(run_verify(o), InvalidArgument);
  o = small_verify(1);
  o.lambda_grid = {1.5};
  CHECK_THROWS_AS(run_verify(o), InvalidArgument);
}

TEST_CASE("fuzz with budget one reports exactly one sample") {
  FuzzOptions o;
  o.seed = 1;
  o.budget = 1;
  const RunReport r = run_fuzz(o);
  CHECK(r.samples == 1);
  CHECK(r.controls == 0);
  REQUIRE(r.min_margin_sample.has_value());
  CHECK(r.min_margin_sample->index == 0);
  const json j = json::parse(r.to_json());
  CHECK(j["suite"] == "fuzz");
  CHECK(j["samples"] == 1);
  CHECK(j["scope"].get<std::string>().find("commuting") != std::string::npos);
  CHECK(j["min_margin"].get<double>() == r.worst_gap_margin);
}

TEST_CASE("fuzz controls stay non-negative and runs are deterministic") {
  for (FuzzTarget t : {FuzzTarget::InverseGapNoncommuting, FuzzTarget::RatioGapNoncommuting}) {
    FuzzOptions o;
    o.target = t;
    o.seed = 3;
    o.budget = 200;
    o.threads = 2;
    const RunReport r = run_fuzz(o);
    CHECK(r.controls == 20);
    CHECK(r.control_min_margin >= -1e-10);
    CHECK(r.violations == r.findings.size());
    FuzzOptions single = o;
    single.threads = 1;
    CHECK(run_fuzz(single).to_json() == r.to_json());
    // Sample i does not depend on the budget.
    FuzzOptions bigger = o;
    bigger.budget = 300;
    const RunReport rb = run_fuzz(bigger);
    CHECK(rb.worst_gap_margin <= r.worst_gap_margin);
  }
}

TEST_CASE("fuzz target names") {
  CHECK(parse_fuzz_target("inv_gap_noncomm") == FuzzTarget::InverseGapNoncommuting);
  CHECK(parse_fuzz_target("ratio_gap_noncomm") == FuzzTarget::RatioGapNoncommuting);
  CHECK_FALSE(parse_fuzz_target("other").has_value());
  FuzzOptions o;
  o.budget = 0;
  CHECK_THROWS_AS(run_fuzz(o), InvalidArgument);
}
