#include "squarem/data/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace squarem {

IntervalData simulate_intervals(int n, double mu_nexam, Rng& rng) {
  if (n < 1) throw std::invalid_argument("need at least one interval");
  IntervalData data;
  data.intervals.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = sample_weibull(1.0, 5.0, rng);
    const int nexam = sample_poisson(mu_nexam, rng);
    double left = 0.0;
    double right = std::numeric_limits<double>::infinity();
    for (int e = 0; e < nexam; ++e) {
      const double exam = std::round(sample_uniform(0.0, 10.0, rng) * 10.0) / 10.0;
      if (exam < t)
        left = std::max(left, exam);
      else
        right = std::min(right, exam);
    }
    data.intervals.push_back({left, right});
  }
  return data;
}

GenotypeMatrix simulate_genotypes_from(const Eigen::MatrixXd& freq, const Eigen::MatrixXd& qmat,
                                       Rng& rng) {
  const Eigen::MatrixXd prob = qmat * freq.transpose();
  GenotypeMatrix x(prob.rows(), prob.cols());
  for (Eigen::Index i = 0; i < prob.rows(); ++i)
    for (Eigen::Index j = 0; j < prob.cols(); ++j) x(i, j) = sample_binomial2(prob(i, j), rng);
  return x;
}

SimulatedGenotypes simulate_genotypes(int n, int p, int k, Rng& rng) {
  if (n < 1 || p < 1 || k < 1) throw std::invalid_argument("n, p and K must be positive");
  SimulatedGenotypes sim;
  sim.freq.resize(p, k);
  for (int j = 0; j < p; ++j)
    for (int a = 0; a < k; ++a) sim.freq(j, a) = sample_uniform(0.05, 0.95, rng);
  sim.qmat.resize(n, k);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int a = 0; a < k; ++a) {
      sim.qmat(i, a) = -std::log1p(-rng.uniform01());
      total += sim.qmat(i, a);
    }
    sim.qmat.row(i) /= total;
  }
  sim.x = simulate_genotypes_from(sim.freq, sim.qmat, rng);
  return sim;
}

SampleCovariance simulate_factor_covariance(int n, const Eigen::MatrixXd& beta,
                                            const Eigen::VectorXd& tau2, Rng& rng) {
  if (n < 2) throw std::invalid_argument("need at least two observations");
  const Eigen::Index q = beta.rows(), p = beta.cols();
  Eigen::MatrixXd y(n, p);
  Eigen::VectorXd z(q);
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < q; ++k) z[k] = sample_normal(rng);
    for (Eigen::Index j = 0; j < p; ++j)
      y(i, j) = beta.col(j).dot(z) + std::sqrt(tau2[j]) * sample_normal(rng);
  }
  const Eigen::RowVectorXd mean = y.colwise().mean();
  const Eigen::MatrixXd centred = y.rowwise() - mean;
  SampleCovariance cov;
  cov.cyy = (centred.transpose() * centred) / static_cast<double>(n - 1);
  cov.n = n;
  return cov;
}

SimulatedFactorData simulate_factor_data(int n, int p, int q, Rng& rng) {
  if (p < 1 || q < 0) throw std::invalid_argument("bad factor dimensions");
  SimulatedFactorData sim;
  sim.beta.resize(q, p);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < q; ++k) sim.beta(k, j) = sample_uniform(-1.0, 1.0, rng);
  sim.tau2.resize(p);
  for (int j = 0; j < p; ++j) sim.tau2[j] = sample_uniform(0.2, 0.8, rng);
  sim.cov = simulate_factor_covariance(n, sim.beta, sim.tau2, rng);
  return sim;
}

SimulatedLogistic simulate_logistic(int n, int d, Rng& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("bad logistic dimensions");
  SimulatedLogistic sim;
  sim.beta.resize(d);
  for (int k = 0; k < d; ++k) sim.beta[k] = sample_uniform(-1.0, 1.0, rng);
  sim.data.design.resize(n, d);
  sim.data.successes.resize(n);
  for (int i = 0; i < n; ++i) {
    sim.data.design(i, 0) = 1.0;
    for (int k = 1; k < d; ++k) sim.data.design(i, k) = sample_normal(rng);
    const double z = sim.data.design.row(i).dot(sim.beta);
    sim.data.successes[i] = rng.uniform01() < 1.0 / (1.0 + std::exp(-z)) ? 1.0 : 0.0;
  }
  return sim;
}

ParameterVector random_poisson_start(Rng& rng) {
  ParameterVector v(3);
  v[0] = sample_uniform(0.05, 0.95, rng);
  v[1] = sample_uniform(0.0, 20.0, rng);
  v[2] = sample_uniform(0.0, 20.0, rng);
  return v;
}

}  // namespace squarem
