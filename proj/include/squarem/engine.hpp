#pragma once

// Plain fixed-point iteration and the squared extrapolation (Squarem) scheme
// for slow, linearly convergent contractions such as EM and MM updates.
//
// Steplengths use the negative orientation: alpha = -1 reproduces two plain
// steps, and more negative values extrapolate further along r.

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace squarem {

using ParameterVector = Eigen::VectorXd;

/// Raised by a fixed-point map that cannot be evaluated at its input
/// (singular system, zero-mass row, ...). The engines treat any exception
/// thrown from a map the same way.
class MapFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fixed-point map F, an optional objective L to minimize, and an optional
/// domain predicate for extrapolated points.
///
/// `map` and `objective` must be pure: the engine may be run concurrently over
/// the same problem from several threads, and it relies on F(x) being a
/// function of x alone.
struct FixedPointProblem {
  std::function<ParameterVector(const ParameterVector&)> map;
  std::function<double(const ParameterVector&)> objective;
  std::function<bool(const ParameterVector&)> feasible;

  bool has_objective() const { return static_cast<bool>(objective); }
  /// Finite entries and, when a predicate is set, inside the domain.
  bool is_feasible(const ParameterVector& x) const;
};

enum class StepMethod : int {
  kS1 = 1,  // <r,v> / <v,v>
  kS2 = 2,  // <r,r> / <r,v>
  kS3 = 3,  // -||r|| / ||v||
};

struct SquaremSettings {
  double tol = 1e-7;
  /// Maximum number of map evaluations (not outer iterations).
  long maxiter = 1500;
  StepMethod method = StepMethod::kS3;
  /// Permitted objective increase per outer iteration; 0 is strictly
  /// monotone, infinity disables the guard and all objective evaluations.
  double objfn_inc = 1.0;
  /// Initial lower bound of the steplength window [lower, -1].
  double step_min0 = -1.0;
  /// Factor by which the lower bound grows when alpha reaches it.
  double mstep = 4.0;
  /// Order of the squared scheme. Only first order is implemented.
  int order = 1;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

enum class Termination { kToleranceMet, kMaxIterReached, kMapFailure };

std::string to_string(Termination t);

struct ConvergenceReport {
  ParameterVector par;
  std::optional<double> value_objfn;
  /// Outer iterations begun; absent for plain iteration.
  std::optional<long> iter;
  long fpevals = 0;
  long objfevals = 0;
  bool convergence = false;
  Termination termination = Termination::kMaxIterReached;
  std::string message;
};

/// One record per plain step or per outer Squarem iteration.
struct IterationTrace {
  struct Record {
    long fpevals = 0;
    std::optional<double> objective;
    double residual_norm = 0.0;
    ParameterVector par;
  };
  std::vector<Record> records;
};

/// theta_{k+1} = F(theta_k) until ||F(theta_k) - theta_k|| < tol or maxiter map
/// evaluations. Reports theta_k, the last input whose step was below tol.
ConvergenceReport fixed_point_run(const FixedPointProblem& problem,
                                  const ParameterVector& start,
                                  const SquaremSettings& settings,
                                  IterationTrace* trace = nullptr);

/// First-order Squarem with objective guard and stabilization step.
ConvergenceReport squarem_run(const FixedPointProblem& problem,
                              const ParameterVector& start,
                              const SquaremSettings& settings,
                              IterationTrace* trace = nullptr);

/// Unclamped steplength. Degenerate denominators give -1.
double compute_steplength(const ParameterVector& r, const ParameterVector& v,
                          StepMethod method);

/// Dynamic clamp window [lower, -1] for the steplength.
class StepWindow {
 public:
  StepWindow(double step_min0, double mstep);

  double clamp(double alpha) const;
  /// Called when a candidate built with `alpha` was rejected.
  void on_reject(double alpha);
  /// Called with the steplength finally used for the iteration.
  void on_step(double alpha);
  double lower() const { return lower_; }

 private:
  double lower0_;
  double lower_;
  double mstep_;
};

/// theta0 - 2 alpha r + alpha^2 v.
ParameterVector extrapolate(const ParameterVector& theta0,
                            const ParameterVector& r,
                            const ParameterVector& v, double alpha);

struct CandidateDecision {
  bool accepted = false;
  ParameterVector chosen;
  /// Objective at `chosen` when it was evaluated (or carried over).
  std::optional<double> value;
  int objfevals = 0;
};

/// Objective guard. A non-finite or infeasible candidate, or one whose
/// objective cannot be evaluated, is rejected in favour of `fallback`. With
/// no objective or an infinite `objfn_inc` a feasible candidate is accepted
/// without evaluation. Otherwise it is accepted iff
/// L(candidate) <= reference + objfn_inc. On rejection the objective is
/// evaluated at the fallback so the caller can track it.
CandidateDecision accept_candidate(const FixedPointProblem& problem,
                                   const ParameterVector& candidate,
                                   const ParameterVector& fallback,
                                   std::optional<double> reference,
                                   double objfn_inc);

}  // namespace squarem
