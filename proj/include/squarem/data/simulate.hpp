#pragma once

// Seeded simulators. Each is a pure function of its arguments and the state of
// the Rng passed in.

#include "squarem/data/rng.hpp"
#include "squarem/problems/admixture.hpp"
#include "squarem/problems/factor_analysis.hpp"
#include "squarem/problems/interval_censoring.hpp"
#include "squarem/problems/logistic_mm.hpp"

namespace squarem {

/// Event time ~ Weibull(shape 1, scale 5); Poisson(mu_nexam) inspections at
/// U(0, 10) times rounded to one decimal, plus 0 and +infinity. The interval
/// runs from the last inspection before the event to the first at or after it.
IntervalData simulate_intervals(int n, double mu_nexam, Rng& rng);

struct SimulatedGenotypes {
  GenotypeMatrix x;
  Eigen::MatrixXd freq;  // p x K, U(0.05, 0.95)
  Eigen::MatrixXd qmat;  // n x K, rows Dirichlet(1, ..., 1)
};

/// x_ij ~ Binomial(2, sum_k q_ik f_jk).
SimulatedGenotypes simulate_genotypes(int n, int p, int k, Rng& rng);
/// Genotypes from given frequencies and proportions.
GenotypeMatrix simulate_genotypes_from(const Eigen::MatrixXd& freq, const Eigen::MatrixXd& qmat,
                                       Rng& rng);

struct SimulatedFactorData {
  SampleCovariance cov;
  Eigen::MatrixXd beta;  // q x p, U(-1, 1)
  Eigen::VectorXd tau2;  // p, U(0.2, 0.8)
};

/// Sample covariance (centred, divisor n - 1) of n draws of
/// Y = beta' Z + e with Z ~ N(0, I_q) and e ~ N(0, diag(tau2)).
SimulatedFactorData simulate_factor_data(int n, int p, int q, Rng& rng);
SampleCovariance simulate_factor_covariance(int n, const Eigen::MatrixXd& beta,
                                            const Eigen::VectorXd& tau2, Rng& rng);

struct SimulatedLogistic {
  LogisticData data;
  Eigen::VectorXd beta;
};

/// Intercept plus d - 1 standard normal covariates, beta ~ U(-1, 1),
/// Bernoulli responses.
SimulatedLogistic simulate_logistic(int n, int d, Rng& rng);

/// Random Poisson-mixture start: p ~ U(0.05, 0.95), mu1, mu2 ~ U(0, 20).
ParameterVector random_poisson_start(Rng& rng);

}  // namespace squarem
