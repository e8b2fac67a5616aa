#include "squarem/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace squarem {

namespace {

bool all_finite(const ParameterVector& x) { return x.allFinite(); }

// Evaluates the map; nullopt on any exception, wrong length, or non-finite
// output.
std::optional<ParameterVector> try_map(const FixedPointProblem& problem,
                                       const ParameterVector& x,
                                       std::string* why = nullptr) {
  try {
    ParameterVector y = problem.map(x);
    if (y.size() != x.size()) {
      if (why) *why = "map changed the parameter length";
      return std::nullopt;
    }
    if (!all_finite(y)) {
      if (why) *why = "map returned non-finite values";
      return std::nullopt;
    }
    return y;
  } catch (const std::exception& e) {
    if (why) *why = e.what();
    return std::nullopt;
  }
}

std::optional<double> try_objective(const FixedPointProblem& problem,
                                    const ParameterVector& x) {
  try {
    const double v = problem.objective(x);
    if (std::isnan(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void check_start(const FixedPointProblem& problem, const ParameterVector& start) {
  if (!problem.map) throw std::invalid_argument("problem has no map");
  if (start.size() < 1) throw std::invalid_argument("empty start vector");
  if (!all_finite(start)) throw std::invalid_argument("start vector is not finite");
}

}  // namespace

bool FixedPointProblem::is_feasible(const ParameterVector& x) const {
  if (!x.allFinite()) return false;
  return !feasible || feasible(x);
}

void SquaremSettings::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (maxiter < 1) throw std::invalid_argument("maxiter must be at least 1");
  if (std::isnan(objfn_inc) || objfn_inc < 0.0)
    throw std::invalid_argument("objfn_inc must be nonnegative or infinite");
  const int m = static_cast<int>(method);
  if (m < 1 || m > 3) throw std::invalid_argument("method must be 1, 2 or 3");
  if (!(step_min0 <= -1.0)) throw std::invalid_argument("step_min0 must be <= -1");
  if (!(mstep > 1.0)) throw std::invalid_argument("mstep must exceed 1");
  if (order != 1)
    throw std::invalid_argument("only first-order Squarem (K = 1) is supported");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kToleranceMet: return "tolerance_met";
    case Termination::kMaxIterReached: return "maxiter_reached";
    case Termination::kMapFailure: return "map_failure";
  }
  return "unknown";
}

double compute_steplength(const ParameterVector& r, const ParameterVector& v,
                          StepMethod method) {
  const double rr = r.squaredNorm();
  const double vv = v.squaredNorm();
  const double rv = r.dot(v);
  double alpha = -1.0;
  switch (method) {
    case StepMethod::kS1:
      if (vv > 0.0) alpha = rv / vv;
      break;
    case StepMethod::kS2:
      if (rv != 0.0) alpha = rr / rv;
      break;
    case StepMethod::kS3:
      if (vv > 0.0) alpha = -std::sqrt(rr / vv);
      break;
  }
  return std::isfinite(alpha) ? alpha : -1.0;
}

StepWindow::StepWindow(double step_min0, double mstep)
    : lower0_(step_min0), lower_(step_min0), mstep_(mstep) {}

double StepWindow::clamp(double alpha) const {
  if (!std::isfinite(alpha)) return -1.0;
  return std::min(-1.0, std::max(lower_, alpha));
}

void StepWindow::on_reject(double alpha) {
  if (alpha == lower_) lower_ = std::min(lower0_, lower_ / mstep_);
}

void StepWindow::on_step(double alpha) {
  if (alpha == lower_) lower_ *= mstep_;
}

ParameterVector extrapolate(const ParameterVector& theta0,
                            const ParameterVector& r,
                            const ParameterVector& v, double alpha) {
  return theta0 - 2.0 * alpha * r + alpha * alpha * v;
}

CandidateDecision accept_candidate(const FixedPointProblem& problem,
                                   const ParameterVector& candidate,
                                   const ParameterVector& fallback,
                                   std::optional<double> reference,
                                   double objfn_inc) {
  CandidateDecision d;
  auto reject = [&] {
    d.accepted = false;
    d.chosen = fallback;
    d.value.reset();
    if (problem.has_objective()) {
      d.value = try_objective(problem, fallback);
      ++d.objfevals;
    }
    return d;
  };

  if (!problem.is_feasible(candidate)) return reject();

  if (!problem.has_objective() || std::isinf(objfn_inc)) {
    d.accepted = true;
    d.chosen = candidate;
    d.value = reference;
    return d;
  }

  const std::optional<double> value = try_objective(problem, candidate);
  ++d.objfevals;
  const bool ok = value && (!reference || *value <= *reference + objfn_inc);
  if (!ok) return reject();
  d.accepted = true;
  d.chosen = candidate;
  d.value = value;
  return d;
}

ConvergenceReport fixed_point_run(const FixedPointProblem& problem,
                                  const ParameterVector& start,
                                  const SquaremSettings& settings,
                                  IterationTrace* trace) {
  settings.validate();
  check_start(problem, start);

  ConvergenceReport report;
  ParameterVector par = start;
  bool failed = false;
  bool converged = false;

  while (report.fpevals < settings.maxiter) {
    std::string why;
    std::optional<ParameterVector> next = try_map(problem, par, &why);
    ++report.fpevals;
    if (!next) {
      failed = true;
      report.message = why;
      break;
    }
    const double res = (*next - par).norm();
    if (trace) trace->records.push_back({report.fpevals, std::nullopt, res, *next});
    if (res < settings.tol) {
      converged = true;
      break;
    }
    par = std::move(*next);
  }

  report.par = par;
  report.convergence = converged;
  report.termination = converged ? Termination::kToleranceMet
                       : failed  ? Termination::kMapFailure
                                 : Termination::kMaxIterReached;
  if (problem.has_objective()) {
    report.value_objfn = try_objective(problem, par);
    report.objfevals = 1;
  }
  return report;
}

ConvergenceReport squarem_run(const FixedPointProblem& problem,
                              const ParameterVector& start,
                              const SquaremSettings& settings,
                              IterationTrace* trace) {
  settings.validate();
  check_start(problem, start);
  if (!problem.is_feasible(start))
    throw std::invalid_argument("start vector is outside the problem domain");

  const bool guarded = problem.has_objective() && std::isfinite(settings.objfn_inc);
  const Eigen::Index n = start.size();

  ConvergenceReport report;
  ParameterVector p = start;
  std::optional<double> lold;
  if (problem.has_objective()) {
    lold = try_objective(problem, p);
    ++report.objfevals;
    if (!lold) throw std::invalid_argument("objective cannot be evaluated at the start");
  }

  StepWindow window(settings.step_min0, settings.mstep);
  long iter = 1;
  bool converged = false;
  bool failed = false;

  while (report.fpevals < settings.maxiter) {
    std::string why;
    std::optional<ParameterVector> p1 = try_map(problem, p, &why);
    ++report.fpevals;
    if (!p1) {
      failed = true;
      report.message = why;
      break;
    }
    const ParameterVector r = *p1 - p;
    if (r.norm() < settings.tol) {
      converged = true;
      break;
    }

    std::optional<ParameterVector> p2 = try_map(problem, *p1, &why);
    ++report.fpevals;
    if (!p2) {
      failed = true;
      report.message = why;
      break;
    }
    const ParameterVector q2 = *p2 - *p1;
    if (q2.norm() < settings.tol) {
      converged = true;
      break;
    }
    const ParameterVector v = q2 - r;

    double alpha = window.clamp(compute_steplength(r, v, settings.method));
    ParameterVector candidate = extrapolate(p, r, v, alpha);
    if (std::abs(alpha + 1.0) > 0.01) {
      std::optional<ParameterVector> stabilized = try_map(problem, candidate);
      ++report.fpevals;
      candidate = stabilized ? std::move(*stabilized)
                             : ParameterVector::Constant(
                                   n, std::numeric_limits<double>::quiet_NaN());
    }

    CandidateDecision decision =
        accept_candidate(problem, candidate, *p2, lold, settings.objfn_inc);
    report.objfevals += decision.objfevals;
    if (!decision.accepted) {
      window.on_reject(alpha);
      alpha = -1.0;
    }
    window.on_step(alpha);

    const double step_norm = (decision.chosen - p).norm();
    p = std::move(decision.chosen);
    if (decision.value) lold = decision.value;
    if (trace) trace->records.push_back({report.fpevals, guarded ? lold : std::nullopt,
                                         step_norm, p});
    ++iter;
  }

  report.par = p;
  report.iter = iter;
  report.convergence = converged;
  report.termination = converged ? Termination::kToleranceMet
                       : failed  ? Termination::kMapFailure
                                 : Termination::kMaxIterReached;
  if (problem.has_objective()) {
    if (!guarded) {
      lold = try_objective(problem, p);
      ++report.objfevals;
    }
    report.value_objfn = lold;
  }
  return report;
}

}  // namespace squarem
