#pragma once

// Two-component Poisson mixture fitted to grouped count data.

#include "squarem/engine.hpp"

#include <vector>

namespace squarem {

struct PoissonMixtureParams {
  double p = 0.5;    // mixing probability of component 1
  double mu1 = 1.0;  // component means
  double mu2 = 1.0;

  ParameterVector to_vector() const;
  static PoissonMixtureParams from_vector(const ParameterVector& v);
  bool feasible() const;
};

/// counts[i] is the number of occasions on which exactly i events occurred.
struct PoissonCountData {
  std::vector<double> counts;

  double total() const;
};

PoissonMixtureParams poisson_em_step(const PoissonMixtureParams& params,
                                     const PoissonCountData& data);

/// Throws std::domain_error outside 0 <= p <= 1, mu > 0.
double poisson_neg_loglik(const PoissonMixtureParams& params,
                          const PoissonCountData& data);

/// Parameter layout (p, mu1, mu2).
FixedPointProblem make_poisson_problem(PoissonCountData data);

}  // namespace squarem
