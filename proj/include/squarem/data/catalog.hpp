#pragma once

// Bundled datasets, stored exactly as published.

#include "squarem/problems/factor_analysis.hpp"
#include "squarem/problems/interval_censoring.hpp"
#include "squarem/problems/logistic_mm.hpp"
#include "squarem/problems/poisson_mixture.hpp"

#include <string>
#include <vector>

namespace squarem::catalog {

/// Days on which 0..9 deaths of women aged 80+ were recorded (1910-1912
/// London Times). The printed counts total 1096 days.
PoissonCountData times_deaths();

/// 9x9 correlation matrix of the Joreskog ability-test data, n = 145.
SampleCovariance joreskog_cov();

/// Starting loadings (4 x 9) and uniquenesses (1e-8) for the Joreskog data.
Eigen::MatrixXd beta_start();
Eigen::VectorXd tau2_start();
FactorModelParams factor_start();

/// Time to cosmetic deterioration for 46 breast-cancer patients treated with
/// radiotherapy alone, as (L, R] intervals.
IntervalData breast_cancer_intervals();

/// First five rows of the leukaemia remission data: an intercept column, six
/// covariates and the binary response.
LogisticData lee_preview();

/// Names accepted by lookup helpers and the command line.
std::vector<std::string> dataset_names();

}  // namespace squarem::catalog
