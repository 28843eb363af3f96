// opmeans: weighted operator means and Ky Fan type operator inequality checks.
//
// Exit codes: 0 success, 1 failed check (verify) or inequality violated
// (oracle), 2 usage/parse error, 3 domain error (means).

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "opmeans/errors.hpp"
#include "opmeans/matrix_file.hpp"
#include "opmeans/means.hpp"
#include "opmeans/scalar_oracle.hpp"
#include "opmeans/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OPMEANS_SEED")) {
    std::uint64_t v = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
    std::cerr << "opmeans: ignoring malformed OPMEANS_SEED='" << s << "'\n";
  }
  return 0;
}

opmeans::HermitianMatrix load_single(const std::string& path) {
  const auto mats = opmeans::parse_matrix_file(opmeans::read_text(path));
  if (mats.empty()) throw opmeans::ParseError("'" + path + "' contains no matrix", 0);
  if (mats.size() > 1) {
    std::cerr << "opmeans: '" << path << "' holds " << mats.size()
              << " matrices, using the first\n";
  }
  return mats.front().matrix;
}

struct MeansArgs {
  std::string kind;
  double lambda = 0.5;
  std::string file_a;
  std::string file_b;
  std::string label;
};

int cmd_means(const MeansArgs& args) {
  const auto kind = opmeans::parse_mean_kind(args.kind);
  if (!kind) {
    std::cerr << "opmeans means: unknown kind '" << args.kind
              << "' (arithmetic, geometric, harmonic)\n";
    return kExitUsage;
  }
  if (args.file_a == "-" && args.file_b == "-") {
    std::cerr << "opmeans means: only one input may be read from stdin\n";
    return kExitUsage;
  }
  opmeans::HermitianMatrix a, b;
  try {
    a = load_single(args.file_a);
    b = load_single(args.file_b);
  } catch (const opmeans::Error& e) {
    std::cerr << "opmeans means: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const opmeans::HermitianMatrix m =
        opmeans::weighted_mean(*kind, a, b, opmeans::Weight(args.lambda));
    std::cout << opmeans::format_matrix(m, args.label);
  } catch (const opmeans::Error& e) {
    std::cerr << "opmeans means: domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims{1, 2, 3, 4, 8};
  std::size_t trials = 100;
  std::vector<double> lambda_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  double tol = 1e-9;
  double psd_slack = 1e-10;
  unsigned threads = 0;
  bool json = false;
  bool no_edge = false;
};

int cmd_verify(const VerifyArgs& args) {
  opmeans::VerifyOptions opts;
  opts.seed = args.seed;
  opts.dims = args.dims;
  opts.trials = args.trials;
  opts.lambda_grid = args.lambda_grid;
  opts.cfg.rel_residual_tol = args.tol;
  opts.cfg.psd_slack = args.psd_slack;
  opts.threads = args.threads;
  opts.edge_cases = !args.no_edge;
  opmeans::RunReport report;
  try {
    report = opmeans::run_verify(opts);
  } catch (const opmeans::Error& e) {
    std::cerr << "opmeans verify: " << e.what() << '\n';
    return kExitUsage;
  }
  if (args.json) {
    std::cout << report.to_json() << '\n';
    std::cerr << "opmeans verify: " << report.total_pass() << " pass, " << report.total_fail()
              << " fail in " << report.wall_seconds << " s\n";
  } else {
    std::cout << report.to_text();
  }
  return report.ok() ? kExitOk : kExitFailed;
}

struct FuzzArgs {
  std::string target = "inv_gap_noncomm";
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::vector<std::size_t> dims{2, 3, 4};
  unsigned threads = 0;
  bool json = false;
};

int cmd_fuzz(const FuzzArgs& args) {
  const auto target = opmeans::parse_fuzz_target(args.target);
  if (!target) {
    std::cerr << "opmeans fuzz: unknown target '" << args.target
              << "' (inv_gap_noncomm, ratio_gap_noncomm)\n";
    return kExitUsage;
  }
  opmeans::FuzzOptions opts;
  opts.target = *target;
  opts.seed = args.seed;
  opts.budget = args.budget;
  opts.dims = args.dims;
  opts.threads = args.threads;
  opmeans::RunReport report;
  try {
    report = opmeans::run_fuzz(opts);
  } catch (const opmeans::Error& e) {
    std::cerr << "opmeans fuzz: " << e.what() << '\n';
    return kExitUsage;
  }
  if (args.json) {
    std::cout << report.to_json() << '\n';
  } else {
    std::cout << report.to_text();
  }
  return kExitOk;
}

struct OracleArgs {
  std::string ineq;
  std::vector<double> xs;
  std::vector<double> weights;
  bool json = false;
};

int cmd_oracle(const OracleArgs& args) {
  using namespace opmeans::scalar;
  std::vector<Inequality> which;
  if (args.ineq.empty() || args.ineq == "all") {
    which.assign(std::begin(kAllInequalities), std::end(kAllInequalities));
  } else if (const auto one = parse_inequality(args.ineq)) {
    which.push_back(*one);
  } else {
    std::cerr << "opmeans oracle: unknown inequality '" << args.ineq
              << "' (ratio_ag, diff_ag, diff_ah, diff_recip, ratio_ah, all)\n";
    return kExitUsage;
  }
  Sample s = args.weights.empty() ? Sample::uniform(args.xs) : Sample{args.xs, args.weights};

  std::vector<std::pair<Inequality, InequalityCheck>> results;
  try {
    s.validate_half_bounded();
    for (Inequality i : which) results.emplace_back(i, kyfan_scalar_check(i, s));
  } catch (const opmeans::Error& e) {
    std::cerr << "opmeans oracle: " << e.what() << '\n';
    return kExitUsage;
  }

  bool all_hold = true;
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [i, c] : results) {
    all_hold = all_hold && c.holds;
    if (args.json) {
      out.push_back({{"ineq", std::string(to_string(i))},
                     {"lhs", c.lhs},
                     {"rhs", c.rhs},
                     {"holds", c.holds},
                     {"equality", c.equality}});
    } else {
      std::cout << to_string(i) << ": lhs " << shortest(c.lhs) << " rhs " << shortest(c.rhs)
                << (c.holds ? " holds" : " VIOLATED") << (c.equality ? " equality" : "")
                << '\n';
    }
  }
  if (args.json) std::cout << out.dump(2) << '\n';
  return all_hold ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted operator means and Ky Fan type operator inequality verification"};
  app.require_subcommand(1);
  const std::uint64_t env_seed = default_seed();

  MeansArgs means_args;
  auto* means = app.add_subcommand("means", "Compute a weighted mean of two Hermitian matrices");
  means->add_option("--kind", means_args.kind, "arithmetic | geometric | harmonic")->required();
  means->add_option("--lambda", means_args.lambda, "Weight in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  means->add_option("file_a", means_args.file_a, "Matrix file for A ('-' for stdin)")->required();
  means->add_option("file_b", means_args.file_b, "Matrix file for B ('-' for stdin)")->required();
  means->add_option("--label", means_args.label, "Label written before the result");

  VerifyArgs verify_args;
  verify_args.seed = env_seed;
  auto* verify = app.add_subcommand("verify", "Run the identity and inequality suite");
  verify->add_option("--seed", verify_args.seed, "Run seed (default $OPMEANS_SEED or 0)");
  verify->add_option("--dims", verify_args.dims, "Comma-separated dimensions")->delimiter(',');
  verify->add_option("--trials", verify_args.trials, "Random instances per dimension");
  verify->add_option("--lambda-grid", verify_args.lambda_grid, "Comma-separated weights")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--tol", verify_args.tol, "Relative residual tolerance for identities")
      ->check(CLI::PositiveNumber);
  verify->add_option("--psd-slack", verify_args.psd_slack, "PSD slack for gap matrices")
      ->check(CLI::PositiveNumber);
  verify->add_option("--threads", verify_args.threads, "Worker threads (0: all cores)");
  verify->add_flag("--no-edge-cases", verify_args.no_edge, "Skip the fixed edge-case pairs");
  verify->add_flag("--json", verify_args.json, "Emit the JSON report on stdout");

  FuzzArgs fuzz_args;
  fuzz_args.seed = env_seed;
  auto* fuzz = app.add_subcommand("fuzz", "Search non-commuting pairs for gap violations");
  fuzz->add_option("--target", fuzz_args.target, "inv_gap_noncomm | ratio_gap_noncomm")
      ->capture_default_str();
  fuzz->add_option("--seed", fuzz_args.seed, "Run seed (default $OPMEANS_SEED or 0)");
  fuzz->add_option("--budget", fuzz_args.budget, "Number of non-commuting samples")
      ->check(CLI::PositiveNumber);
  fuzz->add_option("--dims", fuzz_args.dims, "Comma-separated dimensions")->delimiter(',');
  fuzz->add_option("--threads", fuzz_args.threads, "Worker threads (0: all cores)");
  fuzz->add_flag("--json", fuzz_args.json, "Emit the JSON report on stdout");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Check the scalar Ky Fan type inequalities");
  oracle->add_option("--ineq", oracle_args.ineq,
                     "ratio_ag | diff_ag | diff_ah | diff_recip | ratio_ah | all");
  oracle->add_option("--xs", oracle_args.xs, "Comma-separated values in (0, 1/2]")
      ->delimiter(',')
      ->required();
  oracle->add_option("--weights", oracle_args.weights, "Comma-separated weights (default equal)")
      ->delimiter(',');
  oracle->add_flag("--json", oracle_args.json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (means->parsed()) return cmd_means(means_args);
  if (verify->parsed()) return cmd_verify(verify_args);
  if (fuzz->parsed()) return cmd_fuzz(fuzz_args);
  if (oracle->parsed()) return cmd_oracle(oracle_args);
  return kExitUsage;
}
