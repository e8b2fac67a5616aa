#pragma once

// Maximum-likelihood factor analysis with uncorrelated unit-variance factors,
// fitted by EM or by ECME (EM for the loadings, one Newton step on the
// observed-data likelihood for the uniquenesses).

#include "squarem/engine.hpp"

#include <Eigen/Dense>

namespace squarem {

/// Entry (k, j) is true when loading of variable j on factor k is free.
using LoadingMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct FactorModelParams {
  Eigen::MatrixXd beta;  // q x p loadings
  Eigen::VectorXd tau2;  // p uniquenesses
  LoadingMask free;      // q x p; false marks an a-priori zero loading

  int factors() const { return static_cast<int>(beta.rows()); }
  int variables() const { return static_cast<int>(beta.cols()); }
  bool all_free() const { return free.all(); }

  /// beta column-major (q*p entries) followed by tau2.
  ParameterVector to_vector() const;
  static FactorModelParams from_vector(const ParameterVector& v, const LoadingMask& free);
};

struct SampleCovariance {
  Eigen::MatrixXd cyy;
  double n = 0.0;
};

/// Variables 0-3 load on factors {0,1,2}; variables 4-8 on {0,1,3}.
LoadingMask bundled_factor_mask();

/// EM update. Uses the closed-form unrestricted update when every loading is
/// free and the per-variable restricted update otherwise. Throws MapFailure on
/// a singular system or a nonpositive uniqueness.
FactorModelParams factor_em_step(const FactorModelParams& params,
                                 const SampleCovariance& cov);

/// Per-variable restricted update applied regardless of the mask.
FactorModelParams factor_em_step_restricted(const FactorModelParams& params,
                                            const SampleCovariance& cov);

/// Loadings as in factor_em_step; uniquenesses by a safeguarded Newton step in
/// log(tau2) on the observed-data log-likelihood.
FactorModelParams factor_ecme_step(const FactorModelParams& params,
                                   const SampleCovariance& cov);

/// (n/2) (log|Sigma| + tr(Sigma^-1 C)) with Sigma = diag(tau2) + beta' beta.
/// Throws std::domain_error when Sigma is not positive definite.
double factor_neg_loglik(const FactorModelParams& params, const SampleCovariance& cov);

FixedPointProblem make_factor_problem(SampleCovariance cov, LoadingMask free,
                                      bool ecme = false);

}  // namespace squarem
