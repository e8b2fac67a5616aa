#include "squarem/problems/factor_analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace squarem {

namespace {

struct EStep {
  Eigen::MatrixXd czz;  // q x q, E[zz'] averaged over observations
  Eigen::MatrixXd cm;   // q x p, E[z] y' averaged over observations
};

Eigen::MatrixXd sigma(const Eigen::MatrixXd& beta, const Eigen::VectorXd& tau2) {
  Eigen::MatrixXd s = beta.transpose() * beta;
  s.diagonal() += tau2;
  return s;
}

Eigen::MatrixXd sigma_inverse(const Eigen::MatrixXd& beta, const Eigen::VectorXd& tau2) {
  const Eigen::Index p = tau2.size();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma(beta, tau2));
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw MapFailure("factor model covariance is not positive definite");
  return ldlt.solve(Eigen::MatrixXd::Identity(p, p));
}

EStep expectation(const FactorModelParams& params, const SampleCovariance& cov) {
  const Eigen::MatrixXd inv = sigma_inverse(params.beta, params.tau2);
  const Eigen::MatrixXd delta = inv * params.beta.transpose();  // p x q
  Eigen::MatrixXd big_delta = -params.beta * delta;              // q x q
  big_delta.diagonal().array() += 1.0;
  EStep e;
  e.cm = delta.transpose() * cov.cyy;
  e.czz = e.cm * delta + big_delta;
  return e;
}

void check_shapes(const FactorModelParams& params, const SampleCovariance& cov) {
  const Eigen::Index p = params.beta.cols();
  if (params.tau2.size() != p || cov.cyy.rows() != p || cov.cyy.cols() != p ||
      params.free.rows() != params.beta.rows() || params.free.cols() != p)
    throw std::invalid_argument("factor model dimensions do not match");
}

void check_uniquenesses(const Eigen::VectorXd& tau2) {
  for (Eigen::Index j = 0; j < tau2.size(); ++j)
    if (!(tau2[j] > 0.0) || !std::isfinite(tau2[j]))
      throw MapFailure("factor update produced a nonpositive uniqueness");
}

FactorModelParams restricted_update(const FactorModelParams& params,
                                    const SampleCovariance& cov, const EStep& e) {
  const int q = params.factors();
  const int p = params.variables();
  FactorModelParams next;
  next.free = params.free;
  next.beta = Eigen::MatrixXd::Zero(q, p);
  next.tau2.resize(p);
  for (int j = 0; j < p; ++j) {
    std::vector<int> s;
    for (int k = 0; k < q; ++k)
      if (params.free(k, j)) s.push_back(k);
    const int m = static_cast<int>(s.size());
    if (m == 0) {
      next.tau2[j] = cov.cyy(j, j);
      continue;
    }
    Eigen::MatrixXd czz(m, m);
    Eigen::VectorXd cm(m);
    for (int a = 0; a < m; ++a) {
      cm[a] = e.cm(s[a], j);
      for (int b = 0; b < m; ++b) czz(a, b) = e.czz(s[a], s[b]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(czz);
    if (llt.info() != Eigen::Success) throw MapFailure("singular factor moment matrix");
    const Eigen::VectorXd b = llt.solve(cm);
    for (int a = 0; a < m; ++a) next.beta(s[a], j) = b[a];
    next.tau2[j] = cov.cyy(j, j) - cm.dot(b);
  }
  check_uniquenesses(next.tau2);
  return next;
}

FactorModelParams unrestricted_update(const FactorModelParams& params,
                                      const SampleCovariance& cov, const EStep& e) {
  Eigen::LLT<Eigen::MatrixXd> llt(e.czz);
  if (llt.info() != Eigen::Success) throw MapFailure("singular factor moment matrix");
  FactorModelParams next;
  next.free = params.free;
  next.beta = llt.solve(e.cm);
  next.tau2 = cov.cyy.diagonal() - e.cm.cwiseProduct(next.beta).colwise().sum().transpose();
  check_uniquenesses(next.tau2);
  return next;
}

double loglik_or_minus_inf(const Eigen::MatrixXd& beta, const Eigen::VectorXd& tau2,
                           const SampleCovariance& cov) {
  if (!tau2.allFinite()) return -std::numeric_limits<double>::infinity();
  Eigen::LLT<Eigen::MatrixXd> llt(sigma(beta, tau2));
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const double trace = llt.solve(cov.cyy).trace();
  const double ll = -0.5 * cov.n * (logdet + trace);
  return std::isfinite(ll) ? ll : -std::numeric_limits<double>::infinity();
}

}  // namespace

ParameterVector FactorModelParams::to_vector() const {
  ParameterVector v(beta.size() + tau2.size());
  v.head(beta.size()) = Eigen::Map<const Eigen::VectorXd>(beta.data(), beta.size());
  v.tail(tau2.size()) = tau2;
  return v;
}

FactorModelParams FactorModelParams::from_vector(const ParameterVector& v,
                                                 const LoadingMask& free) {
  const Eigen::Index q = free.rows(), p = free.cols();
  if (v.size() != q * p + p)
    throw std::invalid_argument("factor parameter vector has the wrong length");
  FactorModelParams params;
  params.beta = Eigen::Map<const Eigen::MatrixXd>(v.data(), q, p);
  params.tau2 = v.tail(p);
  params.free = free;
  return params;
}

LoadingMask bundled_factor_mask() {
  LoadingMask m = LoadingMask::Constant(4, 9, true);
  for (int j = 0; j < 4; ++j) m(3, j) = false;
  for (int j = 4; j < 9; ++j) m(2, j) = false;
  return m;
}

FactorModelParams factor_em_step(const FactorModelParams& params,
                                 const SampleCovariance& cov) {
  check_shapes(params, cov);
  const EStep e = expectation(params, cov);
  return params.all_free() ? unrestricted_update(params, cov, e)
                           : restricted_update(params, cov, e);
}

FactorModelParams factor_em_step_restricted(const FactorModelParams& params,
                                            const SampleCovariance& cov) {
  check_shapes(params, cov);
  return restricted_update(params, cov, expectation(params, cov));
}

FactorModelParams factor_ecme_step(const FactorModelParams& params,
                                   const SampleCovariance& cov) {
  const FactorModelParams em = factor_em_step(params, cov);
  const Eigen::VectorXd& t = params.tau2;
  const Eigen::MatrixXd a = sigma_inverse(em.beta, t);
  const Eigen::MatrixXd b = a * (cov.n * cov.cyy) * a;

  // Gradient and Hessian of the log-likelihood in U = log(tau2).
  const Eigen::VectorXd grad =
      (-0.5 * t.array() * (cov.n * a.diagonal().array() - b.diagonal().array())).matrix();
  Eigen::MatrixXd hess = 0.5 * (t * t.transpose()).cwiseProduct(
                                   cov.n * a.cwiseProduct(a) - 2.0 * a.cwiseProduct(b));
  hess.diagonal() += grad;

  FactorModelParams next = em;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(hess);
  const Eigen::VectorXd step = lu.solve(grad);
  if (!step.allFinite()) return next;

  const Eigen::VectorXd u = t.array().log().matrix();
  const double base = loglik_or_minus_inf(em.beta, t, cov);
  double scale = 1.0;
  for (int k = 0; k <= 10; ++k) {
    const Eigen::VectorXd cand = (u - scale * step).array().exp().matrix();
    if (cand.allFinite() && (cand.array() > 0.0).all() &&
        loglik_or_minus_inf(em.beta, cand, cov) >= base) {
      next.tau2 = cand;
      return next;
    }
    scale *= 0.5;
  }
  return next;
}

double factor_neg_loglik(const FactorModelParams& params, const SampleCovariance& cov) {
  check_shapes(params, cov);
  const double ll = loglik_or_minus_inf(params.beta, params.tau2, cov);
  if (!std::isfinite(ll))
    throw std::domain_error("factor model covariance is not positive definite");
  return -ll;
}

FixedPointProblem make_factor_problem(SampleCovariance cov, LoadingMask free, bool ecme) {
  if (cov.cyy.rows() != free.cols() || cov.cyy.cols() != free.cols())
    throw std::invalid_argument("covariance and loading mask dimensions differ");
  if (!(cov.n > 0.0)) throw std::invalid_argument("sample size must be positive");
  FixedPointProblem problem;
  problem.map = [cov, free, ecme](const ParameterVector& v) {
    const FactorModelParams params = FactorModelParams::from_vector(v, free);
    return (ecme ? factor_ecme_step(params, cov) : factor_em_step(params, cov)).to_vector();
  };
  problem.objective = [cov, free](const ParameterVector& v) {
    return factor_neg_loglik(FactorModelParams::from_vector(v, free), cov);
  };
  problem.feasible = [free](const ParameterVector& v) {
    const FactorModelParams params = FactorModelParams::from_vector(v, free);
    if (!(params.tau2.array() > 0.0).all()) return false;
    for (Eigen::Index j = 0; j < free.cols(); ++j)
      for (Eigen::Index k = 0; k < free.rows(); ++k)
        if (!free(k, j) && params.beta(k, j) != 0.0) return false;
    return true;
  };
  return problem;
}

}  // namespace squarem
