#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "opmeans/errors.hpp"
#include "opmeans/identities.hpp"
#include "opmeans/matrix_file.hpp"
#include "opmeans/scalar_oracle.hpp"
#include "opmeans/suite.hpp"

namespace py = pybind11;
using namespace opmeans;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

HermitianMatrix to_hermitian(const ComplexArray& arr) {
  if (arr.ndim() != 2) throw DimensionMismatch("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(arr.shape(0));
  const auto cols = static_cast<std::size_t>(arr.shape(1));
  std::vector<Complex> entries(arr.data(), arr.data() + rows * cols);
  return HermitianMatrix(Matrix(rows, cols, std::move(entries)));
}

ComplexArray to_array(const Matrix& m) {
  ComplexArray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

ComplexArray to_array(const HermitianMatrix& m) { return to_array(m.matrix()); }

template <typename E>
E parse_part(const std::string& s, std::initializer_list<std::pair<const char*, E>> table) {
  for (const auto& [name, value] : table)
    if (s == name) return value;
  throw InvalidArgument("unknown part '" + s + "'");
}

const std::initializer_list<std::pair<const char*, LemmaPart>> kLemma = {
    {"i", LemmaPart::I}, {"ii", LemmaPart::II}, {"iii", LemmaPart::III}};
const std::initializer_list<std::pair<const char*, TheoremPart>> kTheorem = {
    {"i", TheoremPart::I}, {"ii", TheoremPart::II}, {"iii", TheoremPart::III}};
const std::initializer_list<std::pair<const char*, KyFanPart>> kKyFan = {
    {"i", KyFanPart::I}, {"ii", KyFanPart::II}, {"iii", KyFanPart::III}};
const std::initializer_list<std::pair<const char*, ChainPart>> kChain = {
    {"eq1", ChainPart::Eq1}, {"eq2", ChainPart::Eq2}};
const std::initializer_list<std::pair<const char*, CommutativePart>> kComm = {
    {"harm_gap", CommutativePart::HarmonicGap}, {"ratio", CommutativePart::Ratio}};
const std::initializer_list<std::pair<const char*, CommutativeGapPart>> kCommGap = {
    {"inv_gap", CommutativeGapPart::InverseGap}, {"ratio_gap", CommutativeGapPart::RatioGap}};

py::dict identity_dict(const IdentityCheck& c) {
  py::dict d;
  d["lhs"] = to_array(c.lhs);
  d["rhs"] = to_array(c.rhs);
  d["residual"] = c.residual;
  d["rel_residual"] = c.rel_residual;
  d["pass"] = c.pass;
  return d;
}

py::dict gap_dict(const GapCheck& g) {
  py::dict d;
  d["gap"] = to_array(g.gap);
  d["min_eigenvalue"] = g.min_eigenvalue;
  d["margin"] = g.margin;
  d["pass"] = g.pass;
  return d;
}

scalar::Sample make_sample(std::vector<double> xs, std::optional<std::vector<double>> weights) {
  return weights ? scalar::Sample{std::move(xs), std::move(*weights)}
                 : scalar::Sample::uniform(std::move(xs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted operator means and Ky Fan type operator inequality checks";

  static py::exception<Error> base(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<NotStrictlyPositive>(m, "NotStrictlyPositive", base.ptr());
  py::register_exception<DomainViolation>(m, "DomainViolation", base.ptr());
  py::register_exception<NotCommuting>(m, "NotCommuting", base.ptr());
  py::register_exception<PrimedUnavailable>(m, "PrimedUnavailable", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NonFinite>(m, "NonFinite", base.ptr());

  py::class_<ToleranceConfig>(m, "ToleranceConfig")
      .def(py::init<>())
      .def_readwrite("rel_residual_tol", &ToleranceConfig::rel_residual_tol)
      .def_readwrite("psd_slack", &ToleranceConfig::psd_slack)
      .def_readwrite("strict_pos_floor", &ToleranceConfig::strict_pos_floor)
      .def_readwrite("eigen_sweep_limit", &ToleranceConfig::eigen_sweep_limit)
      .def_readwrite("commute_tol", &ToleranceConfig::commute_tol);

  const ToleranceConfig dflt{};

  m.def(
      "eigen_hermitian",
      [](const ComplexArray& a, const ToleranceConfig& cfg) {
        const EigenDecomposition e = eigen_hermitian(to_hermitian(a), cfg);
        return py::make_tuple(e.eigenvalues, to_array(e.eigenvectors));
      },
      py::arg("a"), py::arg("cfg") = dflt, "Ascending eigenvalues and eigenvector columns.");

  m.def(
      "weighted_mean",
      [](const std::string& kind, const ComplexArray& a, const ComplexArray& b, double lam,
         const ToleranceConfig& cfg) {
        const auto k = parse_mean_kind(kind);
        if (!k) throw InvalidArgument("unknown mean kind '" + kind + "'");
        return to_array(weighted_mean(*k, to_hermitian(a), to_hermitian(b), Weight(lam), cfg));
      },
      py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("cfg") = dflt);

  m.def(
      "complement",
      [](const ComplexArray& a, const ToleranceConfig& cfg) {
        return to_array(complement(to_hermitian(a), cfg));
      },
      py::arg("a"), py::arg("cfg") = dflt);

  m.def(
      "loewner_classify",
      [](const ComplexArray& a, const ToleranceConfig& cfg) {
        const LoewnerClass c = loewner_classify(to_hermitian(a), cfg);
        py::dict d;
        d["kind"] = std::string(to_string(c.kind));
        d["min_eigenvalue"] = c.min_eigenvalue;
        d["max_eigenvalue"] = c.max_eigenvalue;
        return d;
      },
      py::arg("a"), py::arg("cfg") = dflt);

  m.def(
      "loewner_leq",
      [](const ComplexArray& a, const ComplexArray& b, const ToleranceConfig& cfg) {
        const LoewnerComparison c = loewner_leq(to_hermitian(a), to_hermitian(b), cfg);
        return py::make_tuple(c.leq, c.min_eigenvalue);
      },
      py::arg("a"), py::arg("b"), py::arg("cfg") = dflt);

  m.def(
      "lemma_identity",
      [](const std::string& part, const ComplexArray& t, double lam, const ToleranceConfig& cfg) {
        return identity_dict(lemma_identity(parse_part(part, kLemma), to_hermitian(t),
                                            Weight(lam), cfg));
      },
      py::arg("part"), py::arg("t"), py::arg("lam"), py::arg("cfg") = dflt);

  m.def(
      "theorem_identity",
      [](const std::string& part, const ComplexArray& a, const ComplexArray& b, double lam,
         const ToleranceConfig& cfg) {
        return identity_dict(theorem_identity(parse_part(part, kTheorem), to_hermitian(a),
                                              to_hermitian(b), Weight(lam), cfg));
      },
      py::arg("part"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("cfg") = dflt);

  m.def(
      "chain_identity",
      [](const std::string& part, const ComplexArray& a, const ComplexArray& b, double lam,
         const ToleranceConfig& cfg) {
        const ChainCheck c = chain_identity(parse_part(part, kChain), to_hermitian(a),
                                            to_hermitian(b), Weight(lam), cfg);
        py::list members;
        for (const Matrix& mm : c.members) members.append(to_array(mm));
        py::dict d;
        d["members"] = members;
        d["max_pairwise_rel_residual"] = c.max_pairwise_rel_residual;
        d["pass"] = c.pass;
        return d;
      },
      py::arg("part"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("cfg") = dflt);

  m.def(
      "commutative_identity",
      [](const std::string& part, const ComplexArray& a, const ComplexArray& b, double lam,
         const ToleranceConfig& cfg) {
        return identity_dict(commutative_identity(parse_part(part, kComm), to_hermitian(a),
                                                  to_hermitian(b), Weight(lam), cfg));
      },
      py::arg("part"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("cfg") = dflt);

  m.def(
      "kyfan_gap",
      [](const std::string& part, const ComplexArray& a, const ComplexArray& b, double lam,
         const ToleranceConfig& cfg) {
        return gap_dict(kyfan_gap(parse_part(part, kKyFan), to_hermitian(a), to_hermitian(b),
                                  Weight(lam), cfg));
      },
      py::arg("part"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("cfg") = dflt);

  m.def(
      "commutative_kyfan_gap",
      [](const std::string& part, const ComplexArray& a, const ComplexArray& b, double lam,
         const ToleranceConfig& cfg, bool require_commuting) {
        return gap_dict(commutative_kyfan_gap(
            parse_part(part, kCommGap), to_hermitian(a), to_hermitian(b), Weight(lam), cfg,
            require_commuting ? CommutationPolicy::Require : CommutationPolicy::Skip));
      },
      py::arg("part"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("cfg") = dflt,
      py::arg("require_commuting") = true);

  m.def(
      "scalar_means",
      [](std::vector<double> xs, std::optional<std::vector<double>> weights) {
        const scalar::MeansBundle b = scalar::scalar_means(make_sample(std::move(xs), std::move(weights)));
        py::dict d;
        d["A"] = b.plain.arithmetic;
        d["G"] = b.plain.geometric;
        d["H"] = b.plain.harmonic;
        if (b.primed) {
          d["A_p"] = b.primed->arithmetic;
          d["G_p"] = b.primed->geometric;
          d["H_p"] = b.primed->harmonic;
        }
        return d;
      },
      py::arg("xs"), py::arg("weights") = py::none());

  m.def(
      "kyfan_scalar_check",
      [](const std::string& ineq, std::vector<double> xs,
         std::optional<std::vector<double>> weights) {
        const auto which = scalar::parse_inequality(ineq);
        if (!which) throw InvalidArgument("unknown inequality '" + ineq + "'");
        const scalar::InequalityCheck c =
            scalar::kyfan_scalar_check(*which, make_sample(std::move(xs), std::move(weights)));
        py::dict d;
        d["lhs"] = c.lhs;
        d["rhs"] = c.rhs;
        d["holds"] = c.holds;
        d["equality"] = c.equality;
        return d;
      },
      py::arg("ineq"), py::arg("xs"), py::arg("weights") = py::none());

  m.def(
      "format_matrix",
      [](const ComplexArray& a, const std::string& label) {
        return format_matrix(to_hermitian(a), label);
      },
      py::arg("a"), py::arg("label") = "");

  m.def(
      "parse_matrix_file",
      [](const std::string& text) {
        py::list out;
        for (const LabeledMatrix& lm : parse_matrix_file(text))
          out.append(py::make_tuple(lm.label, to_array(lm.matrix)));
        return out;
      },
      py::arg("text"), "List of (label, matrix) pairs.");

  m.def(
      "run_verify",
      [](std::uint64_t seed, std::vector<std::size_t> dims, std::size_t trials,
         std::vector<double> lambda_grid, double tol, double psd_slack, bool edge_cases,
         unsigned threads) {
        VerifyOptions opts;
        opts.seed = seed;
        opts.dims = std::move(dims);
        opts.trials = trials;
        opts.lambda_grid = std::move(lambda_grid);
        opts.cfg.rel_residual_tol = tol;
        opts.cfg.psd_slack = psd_slack;
        opts.edge_cases = edge_cases;
        opts.threads = threads;
        py::gil_scoped_release release;
        return run_verify(opts).to_json();
      },
      py::arg("seed") = 0, py::arg("dims") = std::vector<std::size_t>{1, 2, 3, 4, 8},
      py::arg("trials") = 10,
      py::arg("lambda_grid") =
          std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0},
      py::arg("tol") = 1e-9, py::arg("psd_slack") = 1e-10, py::arg("edge_cases") = true,
      py::arg("threads") = 0, "Runs the verification suite; returns the JSON report.");

  m.def(
      "run_fuzz",
      [](const std::string& target, std::uint64_t seed, std::size_t budget,
         std::vector<std::size_t> dims, unsigned threads) {
        const auto t = parse_fuzz_target(target);
        if (!t) throw InvalidArgument("unknown fuzz target '" + target + "'");
        FuzzOptions opts;
        opts.target = *t;
        opts.seed = seed;
        opts.budget = budget;
        opts.dims = std::move(dims);
        opts.threads = threads;
        py::gil_scoped_release release;
        return run_fuzz(opts).to_json();
      },
      py::arg("target"), py::arg("seed") = 0, py::arg("budget") = 100,
      py::arg("dims") = std::vector<std::size_t>{2, 3, 4}, py::arg("threads") = 0,
      "Explores non-commuting pairs; returns the JSON report.");
}
