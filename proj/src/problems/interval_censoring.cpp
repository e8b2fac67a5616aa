#include "squarem/problems/interval_censoring.hpp"

#include "squarem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace squarem {

void IntervalData::validate() const {
  if (intervals.empty()) throw std::invalid_argument("no intervals");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (!(iv.left >= 0.0) || !std::isfinite(iv.left) || std::isnan(iv.right) ||
        !(iv.left < iv.right))
      throw std::invalid_argument("interval " + std::to_string(i + 1) +
                                  " must satisfy 0 <= L < R");
  }
}

std::vector<double> AlphaMatrix::support_times() const {
  std::vector<double> s;
  if (cell_left.empty()) return s;
  s.push_back(cell_left.front());
  for (double r : cell_right) s.push_back(r);
  return s;
}

Eigen::MatrixXd AlphaMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows(), cols());
  for (int i = 0; i < rows(); ++i)
    for (int j = row_first[i]; j <= row_last[i]; ++j) m(i, j) = 1.0;
  return m;
}

AlphaMatrix build_alpha_matrix(const IntervalData& data, SupportMode mode) {
  data.validate();
  std::set<double> lefts, rights, all{0.0};
  for (const Interval& iv : data.intervals) {
    lefts.insert(iv.left);
    rights.insert(iv.right);
    all.insert(iv.left);
    all.insert(iv.right);
  }
  const std::vector<double> s(all.begin(), all.end());

  std::vector<double> cl, cr;
  for (std::size_t j = 1; j < s.size(); ++j) {
    if (mode == SupportMode::kInnermost && (!lefts.count(s[j - 1]) || !rights.count(s[j])))
      continue;
    cl.push_back(s[j - 1]);
    cr.push_back(s[j]);
  }

  // Cells are disjoint and ordered, so each row covers a contiguous run.
  auto span_of = [&](const Interval& iv) {
    const int first = static_cast<int>(std::lower_bound(cl.begin(), cl.end(), iv.left) - cl.begin());
    const int last = static_cast<int>(std::upper_bound(cr.begin(), cr.end(), iv.right) - cr.begin()) - 1;
    return std::pair<int, int>{first, last};
  };

  if (mode == SupportMode::kAllCells) {
    std::vector<int> covered(cl.size(), 0);
    for (const Interval& iv : data.intervals) {
      const auto [f, l] = span_of(iv);
      for (int j = f; j <= l; ++j) covered[j] = 1;
    }
    std::vector<double> kl, kr;
    for (std::size_t j = 0; j < cl.size(); ++j)
      if (covered[j]) {
        kl.push_back(cl[j]);
        kr.push_back(cr[j]);
      }
    cl.swap(kl);
    cr.swap(kr);
  }

  AlphaMatrix a;
  a.cell_left = cl;
  a.cell_right = cr;
  std::map<std::pair<int, int>, double> counts;
  for (std::size_t i = 0; i < data.intervals.size(); ++i) {
    const auto [f, l] = span_of(data.intervals[i]);
    if (f > l)
      throw std::invalid_argument("interval " + std::to_string(i + 1) +
                                  " contains no support cell");
    a.row_first.push_back(f);
    a.row_last.push_back(l);
    counts[{f, l}] += 1.0;
  }
  a.n_obs = static_cast<double>(data.intervals.size());
  for (const auto& [key, c] : counts) {
    if (a.spans.empty() || a.spans.back().first != key.first)
      a.group_start.push_back(static_cast<int>(a.spans.size()));
    a.spans.push_back({key.first, key.second, c});
  }
  a.group_start.push_back(static_cast<int>(a.spans.size()));
  return a;
}

namespace {

void check_length(const Eigen::VectorXd& pvec, const AlphaMatrix& a) {
  if (pvec.size() != a.cols())
    throw std::invalid_argument("mass vector length differs from the support size");
}

// Mass of each distinct span; forward partial sums from the group's first cell.
void span_masses(const Eigen::VectorXd& pvec, const AlphaMatrix& a, int g,
                 std::vector<double>& mass) {
  const int begin = a.group_start[g], end = a.group_start[g + 1];
  double acc = 0.0;
  int j = a.spans[begin].first;
  for (int s = begin; s < end; ++s) {
    for (; j <= a.spans[s].last; ++j) acc += pvec[j];
    mass[s] = acc;
  }
}

// Suffix sums over span weights in group g: out[j] = sum of weight over spans
// with first <= j <= last.
void group_coverage(const AlphaMatrix& a, int g, const std::vector<double>& weight,
                    double* out) {
  const int begin = a.group_start[g], end = a.group_start[g + 1];
  const int first = a.spans[begin].first;
  double acc = 0.0;
  int s = end - 1;
  for (int j = a.spans[end - 1].last; j >= first; --j) {
    for (; s >= begin && a.spans[s].last >= j; --s) acc += weight[s];
    out[j] = acc;
  }
}

void check_masses(const std::vector<double>& mass) {
  for (double d : mass)
    if (!(d > 0.0) || !std::isfinite(d))
      throw MapFailure("an observation has no probability mass");
}

// Negative masses can only come from an extrapolated input; they are
// truncated and the result rescaled so it stays on the simplex.
Eigen::VectorXd finish(const Eigen::VectorXd& pvec, const Eigen::VectorXd& cover,
                       double n) {
  Eigen::VectorXd next(pvec.size());
  bool truncated = false;
  for (Eigen::Index j = 0; j < pvec.size(); ++j) {
    const double v = pvec[j] * cover[j] / n;
    truncated = truncated || v < 0.0;
    next[j] = v > 0.0 ? v : 0.0;
  }
  if (truncated) next /= next.sum();
  return next;
}

}  // namespace

Eigen::VectorXd interval_em_step_serial(const Eigen::VectorXd& pvec, const AlphaMatrix& a) {
  check_length(pvec, a);
  const int groups = static_cast<int>(a.group_start.size()) - 1;
  std::vector<double> mass(a.spans.size());
  for (int g = 0; g < groups; ++g) span_masses(pvec, a, g, mass);
  check_masses(mass);
  std::vector<double> weight(a.spans.size());
  for (std::size_t s = 0; s < a.spans.size(); ++s) weight[s] = a.spans[s].count / mass[s];

  Eigen::VectorXd cover = Eigen::VectorXd::Zero(a.cols());
  std::vector<double> buf(a.cols());
  for (int g = 0; g < groups; ++g) {
    group_coverage(a, g, weight, buf.data());
    const int first = a.spans[a.group_start[g]].first;
    const int last = a.spans[a.group_start[g + 1] - 1].last;
    for (int j = first; j <= last; ++j) cover[j] += buf[j];
  }
  return finish(pvec, cover, a.n_obs);
}

Eigen::VectorXd interval_em_step_parallel(const Eigen::VectorXd& pvec,
                                          const AlphaMatrix& a) {
  check_length(pvec, a);
  const int groups = static_cast<int>(a.group_start.size()) - 1;
  const int m = a.cols();
  const int threads = threads_for(static_cast<long>(groups) * m, 2048);
  std::vector<double> mass(a.spans.size());
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int g = 0; g < groups; ++g) span_masses(pvec, a, g, mass);
  check_masses(mass);
  std::vector<double> weight(a.spans.size());
  for (std::size_t s = 0; s < a.spans.size(); ++s) weight[s] = a.spans[s].count / mass[s];

  // Row g of the buffer holds group g's coverage; columns are then reduced in
  // ascending group order, the same order as the serial kernel.
  std::vector<double> buf(static_cast<std::size_t>(groups) * m, 0.0);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int g = 0; g < groups; ++g)
    group_coverage(a, g, weight, buf.data() + static_cast<std::size_t>(g) * m);

  Eigen::VectorXd cover = Eigen::VectorXd::Zero(m);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int j = 0; j < m; ++j) {
    double acc = 0.0;
    for (int g = 0; g < groups; ++g) {
      const int first = a.spans[a.group_start[g]].first;
      if (first > j) break;
      const int last = a.spans[a.group_start[g + 1] - 1].last;
      if (j <= last) acc += buf[static_cast<std::size_t>(g) * m + j];
    }
    cover[j] = acc;
  }
  return finish(pvec, cover, a.n_obs);
}

Eigen::VectorXd interval_em_step(const Eigen::VectorXd& pvec, const AlphaMatrix& a) {
  if (threads_for(static_cast<long>(a.group_start.size()) * a.cols(), 2048) > 1)
    return interval_em_step_parallel(pvec, a);
  return interval_em_step_serial(pvec, a);
}

double interval_neg_loglik(const Eigen::VectorXd& pvec, const AlphaMatrix& a) {
  check_length(pvec, a);
  const int groups = static_cast<int>(a.group_start.size()) - 1;
  std::vector<double> mass(a.spans.size());
  for (int g = 0; g < groups; ++g) span_masses(pvec, a, g, mass);
  double ll = 0.0;
  for (std::size_t s = 0; s < a.spans.size(); ++s) {
    if (!(mass[s] > 0.0)) throw std::domain_error("an observation has no probability mass");
    ll += a.spans[s].count * std::log(mass[s]);
  }
  return -ll;
}

Eigen::VectorXd interval_uniform_start(const AlphaMatrix& a) {
  return Eigen::VectorXd::Constant(a.cols(), 1.0 / a.cols());
}

FixedPointProblem make_interval_problem(AlphaMatrix a) {
  if (a.cols() == 0) throw std::invalid_argument("empty support");
  FixedPointProblem problem;
  problem.map = [a](const ParameterVector& p) { return interval_em_step(p, a); };
  problem.objective = [a](const ParameterVector& p) { return interval_neg_loglik(p, a); };
  problem.feasible = [](const ParameterVector& p) { return (p.array() >= 0.0).all(); };
  return problem;
}

}  // namespace squarem
