#include "squarem/problems/admixture.hpp"

#include "squarem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace squarem {

ParameterVector AdmixtureParams::to_vector() const {
  ParameterVector v(freq.size() + qmat.size());
  v.head(freq.size()) = Eigen::Map<const Eigen::VectorXd>(freq.data(), freq.size());
  v.tail(qmat.size()) = Eigen::Map<const Eigen::VectorXd>(qmat.data(), qmat.size());
  return v;
}

AdmixtureParams AdmixtureParams::from_vector(const ParameterVector& v, int n, int p, int k) {
  if (v.size() != static_cast<Eigen::Index>(p + n) * k)
    throw std::invalid_argument("admixture parameter vector has the wrong length");
  AdmixtureParams params;
  params.freq = Eigen::Map<const Eigen::MatrixXd>(v.data(), p, k);
  params.qmat = Eigen::Map<const Eigen::MatrixXd>(v.data() + static_cast<Eigen::Index>(p) * k, n, k);
  return params;
}

bool AdmixtureParams::feasible() const {
  return (freq.array() > 0.0).all() && (freq.array() < 1.0).all() &&
         (qmat.array() >= 0.0).all() && freq.allFinite() && qmat.allFinite();
}

void validate_genotypes(const GenotypeMatrix& x) {
  if (x.size() == 0) throw std::invalid_argument("empty genotype matrix");
  if ((x.array() < 0).any() || (x.array() > 2).any())
    throw std::invalid_argument("genotypes must be 0, 1 or 2");
}

namespace {

void check_shapes(const AdmixtureParams& params, const GenotypeMatrix& x) {
  if (params.qmat.rows() != x.rows() || params.freq.rows() != x.cols() ||
      params.qmat.cols() != params.freq.cols() || params.freq.cols() < 1)
    throw std::invalid_argument("admixture dimensions do not match the genotypes");
}

// Posterior ancestry weights for one cell. For a gene copy carrying allele 1
// the weight on population k is q_k f_k / sum q f; for allele 0 it is
// q_k (1 - f_k) / sum q (1 - f). A heterozygote has one copy of each.
// one[k] and zero[k] receive the expected number of allele-1 and allele-0
// copies drawn from population k.
void cell_posterior(const AdmixtureParams& params, int i, int j, int xij, double* one,
                    double* zero) {
  const int K = static_cast<int>(params.freq.cols());
  double s1 = 0.0, s0 = 0.0;
  for (int k = 0; k < K; ++k) {
    const double q = params.qmat(i, k);
    const double f = params.freq(j, k);
    one[k] = q * f;
    zero[k] = q * (1.0 - f);
    s1 += one[k];
    s0 += zero[k];
  }
  const double c1 = static_cast<double>(xij);
  const double c0 = 2.0 - c1;
  if ((c1 > 0.0 && !(s1 > 0.0)) || (c0 > 0.0 && !(s0 > 0.0)))
    throw MapFailure("a genotype has zero posterior mass");
  for (int k = 0; k < K; ++k) {
    one[k] = c1 > 0.0 ? c1 * one[k] / s1 : 0.0;
    zero[k] = c0 > 0.0 ? c0 * zero[k] / s0 : 0.0;
  }
}

constexpr int kMaxInlineK = 16;

struct Accumulators {
  Eigen::MatrixXd n1, n0, m;

  Accumulators(int n, int p, int K)
      : n1(Eigen::MatrixXd::Constant(p, K, kAdmixtureSmoothing)),
        n0(Eigen::MatrixXd::Constant(p, K, kAdmixtureSmoothing)),
        m(Eigen::MatrixXd::Constant(n, K, kAdmixtureSmoothing)) {}

  AdmixtureParams finish() const {
    AdmixtureParams next;
    next.freq = n1.array() / (n1.array() + n0.array());
    next.qmat = m.array().colwise() / m.rowwise().sum().array();
    return next;
  }
};

// Scratch space for one cell's posterior; heap only for unusually large K.
struct CellBuffer {
  double one_inline[kMaxInlineK], zero_inline[kMaxInlineK];
  std::vector<double> one_heap, zero_heap;
  double* one;
  double* zero;

  explicit CellBuffer(int K) {
    if (K <= kMaxInlineK) {
      one = one_inline;
      zero = zero_inline;
    } else {
      one_heap.resize(K);
      zero_heap.resize(K);
      one = one_heap.data();
      zero = zero_heap.data();
    }
  }
};

void check_input(const AdmixtureParams& params, const GenotypeMatrix& x) {
  check_shapes(params, x);
  if (!params.freq.allFinite() || !params.qmat.allFinite())
    throw MapFailure("non-finite admixture parameters");
}

}  // namespace

// Reference kernel: one pass over cells, individuals outermost. Each n1/n0
// entry accumulates over individuals in ascending order and each m entry over
// markers in ascending order.
AdmixtureParams admixture_em_step_serial(const AdmixtureParams& params,
                                         const GenotypeMatrix& x) {
  check_input(params, x);
  const int n = static_cast<int>(x.rows()), p = static_cast<int>(x.cols());
  const int K = static_cast<int>(params.freq.cols());
  Accumulators acc(n, p, K);
  CellBuffer cell(K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      cell_posterior(params, i, j, x(i, j), cell.one, cell.zero);
      for (int k = 0; k < K; ++k) {
        acc.n1(j, k) += cell.one[k];
        acc.n0(j, k) += cell.zero[k];
        acc.m(i, k) += cell.one[k] + cell.zero[k];
      }
    }
  }
  return acc.finish();
}

// Two passes, one parallel over individuals and one over markers, each
// recomputing the cell posteriors. Summation orders match the serial kernel.
AdmixtureParams admixture_em_step_parallel(const AdmixtureParams& params,
                                           const GenotypeMatrix& x, int threads) {
  check_input(params, x);
  const int n = static_cast<int>(x.rows()), p = static_cast<int>(x.cols());
  const int K = static_cast<int>(params.freq.cols());
  Accumulators acc(n, p, K);
  bool failed = false;

#pragma omp parallel num_threads(threads) reduction(|| : failed)
  {
    CellBuffer cell(K);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        for (int j = 0; j < p; ++j) {
          cell_posterior(params, i, j, x(i, j), cell.one, cell.zero);
          for (int k = 0; k < K; ++k) acc.m(i, k) += cell.one[k] + cell.zero[k];
        }
      } catch (const MapFailure&) {
        failed = true;
      }
    }
#pragma omp for schedule(static)
    for (int j = 0; j < p; ++j) {
      try {
        for (int i = 0; i < n; ++i) {
          cell_posterior(params, i, j, x(i, j), cell.one, cell.zero);
          for (int k = 0; k < K; ++k) {
            acc.n1(j, k) += cell.one[k];
            acc.n0(j, k) += cell.zero[k];
          }
        }
      } catch (const MapFailure&) {
        failed = true;
      }
    }
  }
  if (failed) throw MapFailure("a genotype has zero posterior mass");
  return acc.finish();
}

AdmixtureParams admixture_em_step(const AdmixtureParams& params, const GenotypeMatrix& x) {
  const long work = static_cast<long>(x.size()) * params.freq.cols();
  const int threads = threads_for(work, 20000);
  return threads > 1 ? admixture_em_step_parallel(params, x, threads)
                     : admixture_em_step_serial(params, x);
}

double admixture_neg_loglik(const AdmixtureParams& params, const GenotypeMatrix& x) {
  check_shapes(params, x);
  const Eigen::MatrixXd prob = params.qmat * params.freq.transpose();
  double ll = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double pr = prob(i, j);
      const int c = x(i, j);
      if ((c > 0 && !(pr > 0.0)) || (c < 2 && !(pr < 1.0)))
        throw std::domain_error("allele probability outside (0, 1)");
      if (c > 0) ll += c * std::log(pr);
      if (c < 2) ll += (2 - c) * std::log1p(-pr);
    }
  }
  return -ll;
}

FixedPointProblem make_admixture_problem(GenotypeMatrix x, int k) {
  validate_genotypes(x);
  if (k < 1) throw std::invalid_argument("K must be at least 1");
  const int n = static_cast<int>(x.rows());
  const int p = static_cast<int>(x.cols());
  FixedPointProblem problem;
  problem.map = [x, n, p, k](const ParameterVector& v) {
    return admixture_em_step(AdmixtureParams::from_vector(v, n, p, k), x).to_vector();
  };
  problem.objective = [x, n, p, k](const ParameterVector& v) {
    return admixture_neg_loglik(AdmixtureParams::from_vector(v, n, p, k), x);
  };
  problem.feasible = [n, p, k](const ParameterVector& v) {
    return AdmixtureParams::from_vector(v, n, p, k).feasible();
  };
  return problem;
}

}  // namespace squarem
