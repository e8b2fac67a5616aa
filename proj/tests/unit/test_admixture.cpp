#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "squarem/data/rng.hpp"
#include "squarem/data/simulate.hpp"
#include "squarem/problems/admixture.hpp"

#include <cmath>

using namespace squarem;

namespace {

constexpr double kEps = kAdmixtureSmoothing;

// Reference update by enumerating the ancestry of both gene copies of every
// cell. The copies carry alleles (x >= 1) and (x == 2).
AdmixtureParams enumerate_step(const AdmixtureParams& prm, const GenotypeMatrix& x) {
  const int n = static_cast<int>(x.rows()), p = static_cast<int>(x.cols());
  const int K = static_cast<int>(prm.freq.cols());
  Eigen::MatrixXd n1 = Eigen::MatrixXd::Constant(p, K, kEps);
  Eigen::MatrixXd n0 = n1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, K, kEps);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      const int alleles[2] = {x(i, j) >= 1 ? 1 : 0, x(i, j) == 2 ? 1 : 0};
      double total = 0.0;
      Eigen::MatrixXd w(K, K);
      for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) {
          double pr = 1.0;
          const int z[2] = {a, b};
          for (int c = 0; c < 2; ++c) {
            const double f = prm.freq(j, z[c]);
            pr *= prm.qmat(i, z[c]) * (alleles[c] ? f : 1.0 - f);
          }
          w(a, b) = pr;
          total += pr;
        }
      }
      w /= total;
      for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) {
          const int z[2] = {a, b};
          for (int c = 0; c < 2; ++c) {
            m(i, z[c]) += w(a, b);
            (alleles[c] ? n1 : n0)(j, z[c]) += w(a, b);
          }
        }
      }
    }
  }
  AdmixtureParams out;
  out.freq = n1.array() / (n1.array() + n0.array());
  out.qmat = m.array().colwise() / m.rowwise().sum().array();
  return out;
}

AdmixtureParams random_params(Rng& rng, int n, int p, int k) {
  AdmixtureParams prm;
  prm.freq.resize(p, k);
  prm.qmat.resize(n, k);
  for (int j = 0; j < p; ++j)
    for (int c = 0; c < k; ++c) prm.freq(j, c) = 0.05 + 0.9 * rng.uniform01();
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < k; ++c) prm.qmat(i, c) = 0.1 + rng.uniform01();
    prm.qmat.row(i) /= prm.qmat.row(i).sum();
  }
  return prm;
}

}  // namespace

TEST_CASE("update matches enumeration of latent ancestries") {
  Rng rng(11);
  for (int k : {2, 3}) {
    GenotypeMatrix x(2, 2);
    x << 0, 1, 2, 1;
    const AdmixtureParams prm = random_params(rng, 2, 2, k);
    const AdmixtureParams got = admixture_em_step_serial(prm, x);
    const AdmixtureParams want = enumerate_step(prm, x);
    CHECK((got.freq - want.freq).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((got.qmat - want.qmat).cwiseAbs().maxCoeff() < 1e-12);
  }
  GenotypeMatrix x = simulate_genotypes(12, 9, 3, rng).x;
  const AdmixtureParams prm = random_params(rng, 12, 9, 3);
  const AdmixtureParams got = admixture_em_step_serial(prm, x);
  const AdmixtureParams want = enumerate_step(prm, x);
  CHECK((got.freq - want.freq).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((got.qmat - want.qmat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single population gives allele frequencies in one step") {
  GenotypeMatrix x(3, 2);
  x << 0, 2, 1, 2, 2, 1;
  AdmixtureParams prm{Eigen::MatrixXd::Constant(2, 1, 0.3), Eigen::MatrixXd::Ones(3, 1)};
  const AdmixtureParams next = admixture_em_step(prm, x);
  CHECK(next.freq(0, 0) == doctest::Approx((3 + kEps) / (6 + 2 * kEps)));
  CHECK(next.freq(1, 0) == doctest::Approx((5 + kEps) / (6 + 2 * kEps)));
  CHECK((next.qmat.array() == 1.0).all());
}

TEST_CASE("identical populations keep proportions") {
  GenotypeMatrix x(2, 3);
  x << 0, 1, 2, 2, 2, 0;
  AdmixtureParams prm{Eigen::MatrixXd::Constant(3, 2, 0.4), Eigen::MatrixXd(2, 2)};
  prm.qmat << 0.25, 0.75, 0.6, 0.4;
  const AdmixtureParams next = admixture_em_step(prm, x);
  CHECK((next.qmat - prm.qmat).cwiseAbs().maxCoeff() < 1e-6);
  // Each population's frequency is the q-weighted allele frequency.
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      const double num = prm.qmat(0, k) * x(0, j) + prm.qmat(1, k) * x(1, j);
      const double den = 2 * (prm.qmat(0, k) + prm.qmat(1, k));
      CHECK(next.freq(j, k) == doctest::Approx(num / den).epsilon(1e-5));
    }
  }
}

TEST_CASE("negative log-likelihood") {
  GenotypeMatrix x(2, 2);
  x << 0, 1, 2, 1;
  AdmixtureParams prm{Eigen::MatrixXd::Constant(2, 1, 0.5), Eigen::MatrixXd::Ones(2, 1)};
  CHECK(admixture_neg_loglik(prm, x) == doctest::Approx(8 * std::log(2.0)));
  prm.freq(0, 0) = 1.0;
  CHECK_THROWS_AS(admixture_neg_loglik(prm, x), std::domain_error);
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  Rng rng(5);
  const GenotypeMatrix x = simulate_genotypes(40, 60, 3, rng).x;
  const AdmixtureParams prm = random_params(rng, 40, 60, 3);
  const AdmixtureParams a = admixture_em_step_serial(prm, x);
  for (int threads : {1, 2, 3, 7}) {
    const AdmixtureParams b = admixture_em_step_parallel(prm, x, threads);
    CHECK(a.freq == b.freq);
    CHECK(a.qmat == b.qmat);
  }
}

TEST_CASE("EM is monotone and stays in the domain") {
  Rng rng(9);
  const GenotypeMatrix x = simulate_genotypes(30, 40, 2, rng).x;
  AdmixtureParams prm = random_params(rng, 30, 40, 2);
  double prev = admixture_neg_loglik(prm, x);
  for (int it = 0; it < 40; ++it) {
    prm = admixture_em_step(prm, x);
    CHECK(prm.feasible());
    CHECK((prm.qmat.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
    const double cur = admixture_neg_loglik(prm, x);
    CHECK(cur <= prev + 1e-8);
    prev = cur;
  }
}

TEST_CASE("genotype validation and vector layout") {
  GenotypeMatrix x(1, 2);
  x << 0, 3;
  CHECK_THROWS_AS(validate_genotypes(x), std::invalid_argument);
  x << 0, -1;
  CHECK_THROWS_AS(make_admixture_problem(x, 2), std::invalid_argument);

  Rng rng(1);
  const AdmixtureParams prm = random_params(rng, 4, 3, 2);
  const ParameterVector v = prm.to_vector();
  CHECK(v.size() == (4 + 3) * 2);
  const AdmixtureParams back = AdmixtureParams::from_vector(v, 4, 3, 2);
  CHECK(back.freq == prm.freq);
  CHECK(back.qmat == prm.qmat);
  CHECK_THROWS_AS(AdmixtureParams::from_vector(v, 4, 3, 3), std::invalid_argument);
}
