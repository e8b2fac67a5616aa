#pragma once

// Nonparametric maximum likelihood for interval-censored event times. Each
// observation is a half-open interval (L, R] known to contain the event; the
// estimate is a probability mass vector over support cells.

#include "squarem/engine.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace squarem {

struct Interval {
  double left = 0.0;
  double right = 0.0;  // may be +infinity
};

struct IntervalData {
  std::vector<Interval> intervals;

  std::size_t size() const { return intervals.size(); }
  /// Throws std::invalid_argument unless 0 <= L < R for every row.
  void validate() const;
};

enum class SupportMode {
  /// Every cell between consecutive distinct endpoints, all-zero columns dropped.
  kAllCells,
  /// Only cells (s, t] with s a left endpoint and t the next distinct endpoint
  /// a right endpoint (the innermost intervals carrying the NPMLE mass).
  kInnermost,
};

/// Binary incidence of observations (rows) on support cells (columns). Each
/// row covers a contiguous run of cells, so rows are stored as spans.
/// Observations with identical spans are merged with a multiplicity.
struct AlphaMatrix {
  std::vector<double> cell_left;   // cell j is (cell_left[j], cell_right[j]]
  std::vector<double> cell_right;
  std::vector<int> row_first;      // per observation, inclusive span
  std::vector<int> row_last;

  struct Span {
    int first;
    int last;
    double count;
  };
  std::vector<Span> spans;         // distinct spans sorted by (first, last)
  std::vector<int> group_start;    // spans[group_start[g] .. group_start[g+1]) share first
  double n_obs = 0.0;

  int rows() const { return static_cast<int>(row_first.size()); }
  int cols() const { return static_cast<int>(cell_left.size()); }
  /// Support times s_0 < s_1 < ... in kAllCells mode (s_0 = 0).
  std::vector<double> support_times() const;
  Eigen::MatrixXd dense() const;
};

AlphaMatrix build_alpha_matrix(const IntervalData& data,
                               SupportMode mode = SupportMode::kInnermost);

/// p_j <- (p_j / n) sum_i alpha_ij / (alpha_i . p), negatives truncated to 0.
/// Throws MapFailure when an observation receives no mass.
Eigen::VectorXd interval_em_step(const Eigen::VectorXd& pvec, const AlphaMatrix& a);
Eigen::VectorXd interval_em_step_serial(const Eigen::VectorXd& pvec, const AlphaMatrix& a);
Eigen::VectorXd interval_em_step_parallel(const Eigen::VectorXd& pvec,
                                          const AlphaMatrix& a);

/// -sum_i log(alpha_i . p). Throws std::domain_error for a zero-mass row.
double interval_neg_loglik(const Eigen::VectorXd& pvec, const AlphaMatrix& a);

/// Uniform mass 1/m on every cell.
Eigen::VectorXd interval_uniform_start(const AlphaMatrix& a);

FixedPointProblem make_interval_problem(AlphaMatrix a);

}  // namespace squarem
