#pragma once

#include <string>
#include <vector>

#include "opmeans/matrix.hpp"
#include "opmeans/rng.hpp"

namespace opmeans::gen {

enum class Distribution { Uniform, LogUniform, Clustered };

// Eigenvalue law on [lo, hi], 0 < lo <= hi.
struct SpectrumSpec {
  double lo = 0.0;
  double hi = 0.0;
  Distribution distribution = Distribution::Uniform;
  int clusters = 1;  // Clustered only: number of distinct sampled values

  static SpectrumSpec uniform(double lo, double hi) { return {lo, hi, Distribution::Uniform, 1}; }
  static SpectrumSpec log_uniform(double lo, double hi) {
    return {lo, hi, Distribution::LogUniform, 1};
  }
  static SpectrumSpec clustered(double lo, double hi, int k) {
    return {lo, hi, Distribution::Clustered, k};
  }

  void validate() const;
};

std::vector<double> sample_spectrum(std::size_t dim, const SpectrumSpec& spec, Rng& rng);

// Gaussian matrix orthonormalized by Gram-Schmidt (two passes), which leaves
// the implicit R factor with a real positive diagonal.
Matrix random_unitary(std::size_t dim, Rng& rng);

// U diag(eigenvalues) U* for a fresh random U. A single repeated eigenvalue
// yields exactly c I.
HermitianMatrix random_spd_with_eigenvalues(std::vector<double> eigenvalues, Rng& rng);
HermitianMatrix random_spd(std::size_t dim, const SpectrumSpec& spec, Rng& rng);

// Entries with independent standard normal real/imaginary parts, times scale.
HermitianMatrix random_hermitian(std::size_t dim, double scale, Rng& rng);

struct CommutingPair {
  HermitianMatrix a;
  HermitianMatrix b;
  Matrix basis;
  std::vector<double> a_eigenvalues;
  std::vector<double> b_eigenvalues;
};

CommutingPair random_commuting_pair_with_basis(std::size_t dim, const SpectrumSpec& spec_a,
                                               const SpectrumSpec& spec_b, Rng& rng);

struct HermitianPair {
  HermitianMatrix a;
  HermitianMatrix b;
};

HermitianPair random_commuting_pair(std::size_t dim, const SpectrumSpec& spec_a,
                                    const SpectrumSpec& spec_b, Rng& rng);

struct EdgeCase {
  std::string name;
  HermitianMatrix a;
  HermitianMatrix b;
};

// Fixed adversarial pairs with spectra in (0, 1/2]. Deterministic in dim.
std::vector<EdgeCase> edge_case_suite(std::size_t dim);

}  // namespace opmeans::gen
