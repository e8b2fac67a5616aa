#pragma once

// Logistic regression by quadratic majorization (QM). Both maps minimize the
// binomial negative log-likelihood f(beta) through beta - B^-1 grad f(beta)
// for a curvature bound B that dominates the Hessian.

#include "squarem/engine.hpp"

#include <Eigen/Dense>

#include <memory>

namespace squarem {

struct LogisticData {
  Eigen::MatrixXd design;     // n x d
  Eigen::VectorXd successes;  // y_i
  Eigen::VectorXd trials;     // N_i; empty means all ones

  Eigen::Index size() const { return design.rows(); }
  Eigen::VectorXd trials_or_ones() const;
  void validate() const;
};

double logistic_neg_loglik(const Eigen::VectorXd& beta, const LogisticData& data);

/// X' u with u_i = N_i p_i - y_i.
Eigen::VectorXd logistic_gradient(const Eigen::VectorXd& beta, const LogisticData& data);

/// Per-observation weight of the non-uniform bound, N tanh(z/2) / (2z), with
/// the limit N/4 near z = 0.
double nonuniform_weight(double z, double trials);

/// Data plus the factorization of X'NX, computed once and shared by copies.
class LogisticModel {
 public:
  explicit LogisticModel(LogisticData data);

  const LogisticData& data() const { return *data_; }
  /// Solves (X'NX) z = rhs. Throws MapFailure if X'NX is singular.
  Eigen::VectorXd solve_uniform(const Eigen::VectorXd& rhs) const;

 private:
  std::shared_ptr<const LogisticData> data_;
  std::shared_ptr<const Eigen::LDLT<Eigen::MatrixXd>> xnx_;
  bool singular_ = false;
};

/// beta - 4 (X'NX)^-1 X'u(beta).
Eigen::VectorXd qm_uniform_step(const Eigen::VectorXd& beta, const LogisticModel& model);

/// beta - (X'W(beta)X)^-1 X'u(beta).
Eigen::VectorXd qm_nonuniform_step(const Eigen::VectorXd& beta, const LogisticData& data);

FixedPointProblem make_logistic_problem(LogisticData data, bool uniform_bound);

}  // namespace squarem
