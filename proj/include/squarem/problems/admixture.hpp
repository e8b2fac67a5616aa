#pragma once

// Admixture model for unphased biallelic genotypes: individual i carries
// ancestry proportions q_i over K populations and marker j has allele-1
// frequency f_jk in population k.

#include "squarem/engine.hpp"

#include <Eigen/Dense>

namespace squarem {

/// Allele-1 counts in {0, 1, 2}; individuals in rows, markers in columns.
using GenotypeMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

struct AdmixtureParams {
  Eigen::MatrixXd freq;  // p x K
  Eigen::MatrixXd qmat;  // n x K

  /// freq column-major then qmat column-major.
  ParameterVector to_vector() const;
  static AdmixtureParams from_vector(const ParameterVector& v, int n, int p, int k);
  /// 0 < f < 1 and q >= 0.
  bool feasible() const;
};

inline constexpr double kAdmixtureSmoothing = 1e-6;

/// One EM step. The per-cell posterior over (allele, ancestry) configurations
/// factorizes over the two gene copies, so the E-step costs O(K) per cell.
/// Both kernels accumulate in the same fixed order and agree bit for bit.
AdmixtureParams admixture_em_step(const AdmixtureParams& params, const GenotypeMatrix& x);
AdmixtureParams admixture_em_step_serial(const AdmixtureParams& params,
                                         const GenotypeMatrix& x);
AdmixtureParams admixture_em_step_parallel(const AdmixtureParams& params,
                                           const GenotypeMatrix& x, int threads);

/// -sum_ij [x log (Q F')_ij + (2 - x) log (1 - (Q F')_ij)].
double admixture_neg_loglik(const AdmixtureParams& params, const GenotypeMatrix& x);

void validate_genotypes(const GenotypeMatrix& x);

FixedPointProblem make_admixture_problem(GenotypeMatrix x, int k);

}  // namespace squarem
