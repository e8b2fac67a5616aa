#include "squarem/problems/logistic_mm.hpp"

#include <cmath>
#include <stdexcept>

namespace squarem {

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_beta(const Eigen::VectorXd& beta, const LogisticData& data) {
  if (beta.size() != data.design.cols())
    throw std::invalid_argument("coefficient vector length differs from design columns");
}

}  // namespace

Eigen::VectorXd LogisticData::trials_or_ones() const {
  return trials.size() == 0 ? Eigen::VectorXd::Ones(design.rows()) : trials;
}

void LogisticData::validate() const {
  if (design.rows() < 1 || design.cols() < 1) throw std::invalid_argument("empty design");
  if (successes.size() != design.rows())
    throw std::invalid_argument("response length differs from design rows");
  if (trials.size() != 0 && trials.size() != design.rows())
    throw std::invalid_argument("trials length differs from design rows");
  const Eigen::VectorXd n = trials_or_ones();
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    if (!(n[i] >= 1.0) || !(successes[i] >= 0.0) || successes[i] > n[i])
      throw std::invalid_argument("responses must satisfy 0 <= y <= N with N >= 1");
  }
  if (!design.allFinite()) throw std::invalid_argument("design has non-finite entries");
}

double logistic_neg_loglik(const Eigen::VectorXd& beta, const LogisticData& data) {
  check_beta(beta, data);
  const Eigen::VectorXd z = data.design * beta;
  const Eigen::VectorXd n = data.trials_or_ones();
  double f = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) f += n[i] * softplus(z[i]) - data.successes[i] * z[i];
  return f;
}

Eigen::VectorXd logistic_gradient(const Eigen::VectorXd& beta, const LogisticData& data) {
  check_beta(beta, data);
  const Eigen::VectorXd z = data.design * beta;
  const Eigen::VectorXd n = data.trials_or_ones();
  Eigen::VectorXd u(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) u[i] = n[i] * sigmoid(z[i]) - data.successes[i];
  return data.design.transpose() * u;
}

double nonuniform_weight(double z, double trials) {
  if (std::abs(z) < 1e-6) return trials / 4.0;
  return trials * std::tanh(0.5 * z) / (2.0 * z);
}

LogisticModel::LogisticModel(LogisticData data)
    : data_(std::make_shared<const LogisticData>(std::move(data))) {
  data_->validate();
  const Eigen::VectorXd n = data_->trials_or_ones();
  const Eigen::MatrixXd xnx = data_->design.transpose() * n.asDiagonal() * data_->design;
  auto ldlt = std::make_shared<Eigen::LDLT<Eigen::MatrixXd>>(xnx);
  singular_ = ldlt->info() != Eigen::Success || !ldlt->isPositive() ||
              (ldlt->vectorD().array() <= 1e-12 * xnx.diagonal().maxCoeff()).any();
  xnx_ = ldlt;
}

Eigen::VectorXd LogisticModel::solve_uniform(const Eigen::VectorXd& rhs) const {
  if (singular_) throw MapFailure("X'NX is singular");
  return xnx_->solve(rhs);
}

Eigen::VectorXd qm_uniform_step(const Eigen::VectorXd& beta, const LogisticModel& model) {
  return beta - 4.0 * model.solve_uniform(logistic_gradient(beta, model.data()));
}

Eigen::VectorXd qm_nonuniform_step(const Eigen::VectorXd& beta, const LogisticData& data) {
  check_beta(beta, data);
  const Eigen::VectorXd z = data.design * beta;
  const Eigen::VectorXd n = data.trials_or_ones();
  Eigen::VectorXd w(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) w[i] = nonuniform_weight(z[i], n[i]);
  const Eigen::MatrixXd xwx = data.design.transpose() * w.asDiagonal() * data.design;
  Eigen::LLT<Eigen::MatrixXd> llt(xwx);
  if (llt.info() != Eigen::Success) throw MapFailure("X'W(beta)X is singular");
  return beta - llt.solve(logistic_gradient(beta, data));
}

FixedPointProblem make_logistic_problem(LogisticData data, bool uniform_bound) {
  LogisticModel model(std::move(data));
  FixedPointProblem problem;
  if (uniform_bound) {
    problem.map = [model](const ParameterVector& b) { return qm_uniform_step(b, model); };
  } else {
    problem.map = [model](const ParameterVector& b) {
      return qm_nonuniform_step(b, model.data());
    };
  }
  problem.objective = [model](const ParameterVector& b) {
    return logistic_neg_loglik(b, model.data());
  };
  return problem;
}

}  // namespace squarem
