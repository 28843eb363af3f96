#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opmeans/tolerance.hpp"

namespace opmeans {

// Reproduction data for one failed (or, when fuzzing, violating) check.
struct Finding {
  std::string check;
  std::string source;  // "random" or "edge:<name>"
  std::size_t dim = 0;
  std::size_t index = 0;  // trial / sample index, or edge-case index
  double lambda = 0.0;
  std::uint64_t run_seed = 0;
  std::uint64_t instance_seed = 0;  // Rng(run_seed).child(dim).child(index).seed() for trials
  double value = 0.0;               // residual, margin or deviation, per check
  std::string message;
};

struct CheckTally {
  std::string name;
  std::size_t pass = 0;
  std::size_t fail = 0;
  // Largest residual for identity-type checks, smallest margin for gap-type checks.
  double worst = 0.0;
  bool is_gap = false;
};

struct RunReport {
  static constexpr int kSchema = 1;

  std::string suite;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  std::vector<double> lambda_grid;
  std::size_t trials = 0;
  ToleranceConfig tolerances;
  std::vector<CheckTally> checks;  // canonical order
  double worst_residual = 0.0;
  double worst_gap_margin = 0.0;
  std::vector<Finding> findings;
  double wall_seconds = 0.0;  // not part of the JSON document

  // Fuzz-only fields.
  std::string target;
  std::string scope_note;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<Finding> min_margin_sample;
  std::size_t controls = 0;
  double control_min_margin = 0.0;

  std::size_t total_pass() const;
  std::size_t total_fail() const;
  bool ok() const { return total_fail() == 0; }

  // Deterministic: identical inputs give byte-identical output.
  std::string to_json(int indent = 2) const;
  std::string to_text() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims{1, 2, 3, 4, 8};
  std::size_t trials = 100;
  std::vector<double> lambda_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  ToleranceConfig cfg{};
  bool edge_cases = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Names of every check run_verify tallies, in report order.
const std::vector<std::string>& verify_check_names();

RunReport run_verify(const VerifyOptions& opts);

enum class FuzzTarget { InverseGapNoncommuting, RatioGapNoncommuting };

std::string to_string(FuzzTarget t);
std::optional<FuzzTarget> parse_fuzz_target(const std::string& s);

struct FuzzOptions {
  FuzzTarget target = FuzzTarget::InverseGapNoncommuting;
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::vector<std::size_t> dims{2, 3, 4};
  ToleranceConfig cfg{};
  unsigned threads = 0;
};

// Samples non-commuting pairs in (0, I/2] and records the most negative gap
// margin. Every tenth budget unit adds a commuting control sample.
RunReport run_fuzz(const FuzzOptions& opts);

// The n-th instance stream of a verify run.
std::uint64_t verify_instance_seed(std::uint64_t run_seed, std::size_t dim, std::size_t trial);

}  // namespace opmeans
