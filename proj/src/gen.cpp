#include "opmeans/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "opmeans/errors.hpp"

namespace opmeans::gen {

void SpectrumSpec::validate() const {
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi)) {
    throw InvalidArgument("spectrum requires 0 < lo <= hi");
  }
  if (distribution == Distribution::Clustered && clusters < 1) {
    throw InvalidArgument("clustered spectrum requires at least one cluster");
  }
}

std::vector<double> sample_spectrum(std::size_t dim, const SpectrumSpec& spec, Rng& rng) {
  spec.validate();
  std::vector<double> out(dim);
  switch (spec.distribution) {
    case Distribution::Uniform:
      for (double& x : out) x = rng.uniform(spec.lo, spec.hi);
      break;
    case Distribution::LogUniform: {
      const double llo = std::log(spec.lo), lhi = std::log(spec.hi);
      for (double& x : out) x = std::clamp(std::exp(rng.uniform(llo, lhi)), spec.lo, spec.hi);
      break;
    }
    case Distribution::Clustered: {
      std::vector<double> centers(static_cast<std::size_t>(spec.clusters));
      for (double& c : centers) c = rng.uniform(spec.lo, spec.hi);
      for (std::size_t i = 0; i < dim; ++i) out[i] = centers[i % centers.size()];
      break;
    }
  }
  return out;
}

Matrix random_unitary(std::size_t dim, Rng& rng) {
  Matrix q(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      q(i, j) = Complex(re, im);
    }
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < dim; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) q(i, j) /= norm;
  }
  return q;
}

HermitianMatrix random_spd_with_eigenvalues(std::vector<double> eigenvalues, Rng& rng) {
  const std::size_t n = eigenvalues.size();
  if (n == 0) throw InvalidArgument("random_spd: dim must be >= 1");
  const Matrix u = random_unitary(n, rng);
  if (std::all_of(eigenvalues.begin(), eigenvalues.end(),
                  [&](double x) { return x == eigenvalues.front(); })) {
    return HermitianMatrix::scalar(n, eigenvalues.front());
  }
  return HermitianMatrix(u * Matrix::diagonal(eigenvalues) * u.adjoint());
}

HermitianMatrix random_spd(std::size_t dim, const SpectrumSpec& spec, Rng& rng) {
  return random_spd_with_eigenvalues(sample_spectrum(dim, spec, rng), rng);
}

HermitianMatrix random_hermitian(std::size_t dim, double scale, Rng& rng) {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = scale * Complex(re, im);
    }
  return HermitianMatrix(m);
}

CommutingPair random_commuting_pair_with_basis(std::size_t dim, const SpectrumSpec& spec_a,
                                               const SpectrumSpec& spec_b, Rng& rng) {
  CommutingPair out;
  out.a_eigenvalues = sample_spectrum(dim, spec_a, rng);
  out.b_eigenvalues = sample_spectrum(dim, spec_b, rng);
  out.basis = random_unitary(dim, rng);
  const Matrix u_adj = out.basis.adjoint();
  out.a = HermitianMatrix(out.basis * Matrix::diagonal(out.a_eigenvalues) * u_adj);
  out.b = HermitianMatrix(out.basis * Matrix::diagonal(out.b_eigenvalues) * u_adj);
  return out;
}

HermitianPair random_commuting_pair(std::size_t dim, const SpectrumSpec& spec_a,
                                    const SpectrumSpec& spec_b, Rng& rng) {
  CommutingPair p = random_commuting_pair_with_basis(dim, spec_a, spec_b, rng);
  return {std::move(p.a), std::move(p.b)};
}

namespace {

constexpr std::uint64_t kEdgeSeed = 0x0ED6E5EEDULL;

// Rotation by pi/4 in coordinate planes (0,1), (2,3), ...
Matrix plane_rotations(std::size_t dim) {
  Matrix r = Matrix::identity(dim);
  const double c = std::numbers::sqrt2 / 2.0;
  for (std::size_t p = 0; p + 1 < dim; p += 2) {
    r(p, p) = c;
    r(p, p + 1) = -c;
    r(p + 1, p) = c;
    r(p + 1, p + 1) = c;
  }
  return r;
}

}  // namespace

std::vector<EdgeCase> edge_case_suite(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("edge_case_suite: dim must be >= 1");
  Rng rng = Rng(kEdgeSeed).child(dim);
  std::vector<EdgeCase> out;

  out.push_back({"half_identity", HermitianMatrix::scalar(dim, 0.5),
                 HermitianMatrix::scalar(dim, 0.5)});
  out.push_back({"scalar_pair", HermitianMatrix::scalar(dim, 0.2),
                 HermitianMatrix::scalar(dim, 0.4)});

  {
    const HermitianMatrix a = random_spd(dim, SpectrumSpec::uniform(0.05, 0.5), rng);
    out.push_back({"equal", a, a});
  }
  {
    const HermitianMatrix b = random_spd(dim, SpectrumSpec::uniform(0.05, 0.45), rng);
    const HermitianMatrix p = random_spd(dim, SpectrumSpec::uniform(0.1, 1.0), rng);
    out.push_back({"perturbed", HermitianMatrix(b.matrix() + 1e-8 * p.matrix()), b});
  }
  {
    std::vector<double> ea = sample_spectrum(dim, SpectrumSpec::uniform(0.05, 0.5), rng);
    std::vector<double> eb = sample_spectrum(dim, SpectrumSpec::uniform(0.05, 0.5), rng);
    ea.back() = 0.5;
    eb.front() = 0.5;
    out.push_back({"half_boundary", random_spd_with_eigenvalues(ea, rng),
                   random_spd_with_eigenvalues(eb, rng)});
  }
  {
    std::vector<double> ea = sample_spectrum(dim, SpectrumSpec::log_uniform(1e-6, 0.5), rng);
    std::vector<double> eb = sample_spectrum(dim, SpectrumSpec::uniform(0.05, 0.5), rng);
    ea.front() = 1e-6;
    out.push_back({"tiny_min", random_spd_with_eigenvalues(ea, rng),
                   random_spd_with_eigenvalues(eb, rng)});
  }
  {
    // Shared eigenbasis, small eigenvalues aligned. The floor is 1e-5 rather
    // than 1e-6: the commutative identities pass through (A#B)^-2 and their
    // residual tracks the condition number (see README, accuracy limits).
    std::vector<double> ea = sample_spectrum(dim, SpectrumSpec::log_uniform(1e-5, 0.5), rng);
    std::vector<double> eb = sample_spectrum(dim, SpectrumSpec::log_uniform(1e-5, 0.5), rng);
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    ea.front() = 1e-5;
    eb.front() = 2e-5;
    const Matrix u = random_unitary(dim, rng);
    const Matrix ua = u.adjoint();
    out.push_back({"commuting_tiny", HermitianMatrix(u * Matrix::diagonal(ea) * ua),
                   HermitianMatrix(u * Matrix::diagonal(eb) * ua)});
  }
  if (dim >= 2) {
    std::vector<double> d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = (i % 2 == 0) ? 0.5 : 0.05;
    const Matrix r = plane_rotations(dim);
    const HermitianMatrix a = HermitianMatrix::diagonal(d);
    out.push_back({"noncommuting_rotation", a,
                   HermitianMatrix(r * Matrix::diagonal(d) * r.adjoint())});
  }
  return out;
}

}  // namespace opmeans::gen
