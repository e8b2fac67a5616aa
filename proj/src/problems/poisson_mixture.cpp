#include "squarem/problems/poisson_mixture.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace squarem {

ParameterVector PoissonMixtureParams::to_vector() const {
  ParameterVector v(3);
  v << p, mu1, mu2;
  return v;
}

PoissonMixtureParams PoissonMixtureParams::from_vector(const ParameterVector& v) {
  if (v.size() != 3) throw std::invalid_argument("Poisson mixture expects 3 parameters");
  return {v[0], v[1], v[2]};
}

bool PoissonMixtureParams::feasible() const {
  return p >= 0.0 && p <= 1.0 && mu1 > 0.0 && mu2 > 0.0 && std::isfinite(mu1) &&
         std::isfinite(mu2);
}

double PoissonCountData::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

PoissonMixtureParams poisson_em_step(const PoissonMixtureParams& params,
                                     const PoissonCountData& data) {
  // The i! factors cancel in the responsibilities.
  double sum_z = 0.0, sum_iz = 0.0, sum_1z = 0.0, sum_i1z = 0.0;
  for (std::size_t i = 0; i < data.counts.size(); ++i) {
    const double k = static_cast<double>(i);
    const double a = params.p * std::exp(-params.mu1) * std::pow(params.mu1, k);
    const double b = (1.0 - params.p) * std::exp(-params.mu2) * std::pow(params.mu2, k);
    const double z = a / (a + b);
    const double n = data.counts[i];
    sum_z += n * z;
    sum_iz += n * k * z;
    sum_1z += n * (1.0 - z);
    sum_i1z += n * k * (1.0 - z);
  }
  return {sum_z / data.total(), sum_iz / sum_z, sum_i1z / sum_1z};
}

double poisson_neg_loglik(const PoissonMixtureParams& params,
                          const PoissonCountData& data) {
  if (!params.feasible())
    throw std::domain_error("Poisson mixture parameters outside their domain");
  double ll = 0.0;
  for (std::size_t i = 0; i < data.counts.size(); ++i) {
    const double k = static_cast<double>(i);
    const double lf = std::lgamma(k + 1.0);
    const double f1 = std::exp(-params.mu1 + k * std::log(params.mu1) - lf);
    const double f2 = std::exp(-params.mu2 + k * std::log(params.mu2) - lf);
    ll += data.counts[i] * std::log(params.p * f1 + (1.0 - params.p) * f2);
  }
  return -ll;
}

FixedPointProblem make_poisson_problem(PoissonCountData data) {
  if (data.counts.empty() || !(data.total() > 0.0))
    throw std::invalid_argument("Poisson mixture needs a nonempty count table");
  FixedPointProblem problem;
  problem.map = [data](const ParameterVector& v) {
    return poisson_em_step(PoissonMixtureParams::from_vector(v), data).to_vector();
  };
  problem.objective = [data](const ParameterVector& v) {
    return poisson_neg_loglik(PoissonMixtureParams::from_vector(v), data);
  };
  problem.feasible = [](const ParameterVector& v) {
    return PoissonMixtureParams::from_vector(v).feasible();
  };
  return problem;
}

}  // namespace squarem
