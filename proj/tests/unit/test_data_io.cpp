#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "squarem/data/catalog.hpp"
#include "squarem/data/formats.hpp"
#include "squarem/data/rng.hpp"
#include "squarem/data/simulate.hpp"

#include <cmath>
#include <limits>
#include <set>

using namespace squarem;

namespace {

std::string fixture(const std::string& name) {
  return read_text_file(std::string(SQUAREM_FIXTURE_DIR) + "/" + name);
}

int parse_error_line(std::string_view text) {
  try {
    parse_intervals(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("interval parsing") {
  const IntervalData d = parse_intervals("L,R\n0,7\n(45, Inf]\n# comment\n\n4 5.5\n");
  REQUIRE(d.size() == 3);
  CHECK(d.intervals[0].right == 7);
  CHECK(d.intervals[1].left == 45);
  CHECK(std::isinf(d.intervals[1].right));
  CHECK(d.intervals[2].right == 5.5);
  CHECK(parse_intervals("1,inf\n").intervals[0].right == std::numeric_limits<double>::infinity());

  CHECK(parse_error_line("0,7\n7,7\n") == 2);
  CHECK(parse_error_line("0,7\n\n9,3\n") == 3);
  CHECK(parse_error_line("0,7\n1,2,3\n") == 2);
  CHECK(parse_error_line("0,7\nx,y\n") == 2);
  CHECK(parse_error_line("-1,2\n") == 1);
}

TEST_CASE("interval round trip") {
  const IntervalData d = catalog::breast_cancer_intervals();
  const IntervalData back = parse_intervals(write_intervals(d));
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.intervals[i].left == d.intervals[i].left);
    CHECK(back.intervals[i].right == d.intervals[i].right);
  }
}

TEST_CASE("genotype parsing") {
  const GenotypeMatrix x = parse_genotypes("0 1 2\n2,2,0\n");
  CHECK(x.rows() == 2);
  CHECK(x(1, 0) == 2);
  CHECK_THROWS_AS(parse_genotypes("3\n"), ParseError);
  CHECK_THROWS_AS(parse_genotypes("0 1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_genotypes("0 1.5\n"), ParseError);
  CHECK_THROWS_AS(parse_genotypes(""), std::exception);

  Rng rng(99);
  const GenotypeMatrix big = simulate_genotypes(150, 100, 3, rng).x;
  CHECK(parse_genotypes(write_genotypes(big)) == big);
}

TEST_CASE("covariance and logistic tables") {
  const Eigen::MatrixXd c = catalog::joreskog_cov().cyy;
  CHECK(parse_covariance(write_matrix(c)) == c);
  CHECK_THROWS_AS(parse_covariance("1 0.5\n0.4 1\n"), ParseError);
  CHECK_THROWS_AS(parse_covariance("1 0.5\n"), ParseError);

  const LogisticData d = parse_logistic_table("int x y\n1 0.5 1\n1 -2 0\n1 3 1\n");
  CHECK(d.design.rows() == 3);
  CHECK(d.design.cols() == 2);
  CHECK(d.successes[1] == 0);
  const LogisticData back = parse_logistic_table(write_logistic_table(d));
  CHECK(back.design == d.design);
  CHECK(back.successes == d.successes);
  CHECK_THROWS_AS(parse_logistic_table("1 0.5 2\n"), ParseError);
}

TEST_CASE("number formatting") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5e17}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "Inf");
  CHECK(parse_double_list("0.3,1,5") == std::vector<double>{0.3, 1, 5});
  CHECK_THROWS(parse_double_list("0.3,,5"));
}

TEST_CASE("bundled datasets") {
  CHECK(catalog::times_deaths().total() == 1096);
  const Eigen::MatrixXd c = catalog::joreskog_cov().cyy;
  CHECK(c.rows() == 9);
  CHECK(c.cols() == 9);
  CHECK(c == c.transpose());
  CHECK((c.diagonal().array() == 1.0).all());
  const IntervalData bc = catalog::breast_cancer_intervals();
  CHECK(bc.size() == 46);
  CHECK_NOTHROW(bc.validate());
  CHECK(catalog::lee_preview().size() == 5);
  CHECK(catalog::tau2_start().size() == 9);
  CHECK(catalog::dataset_names().size() >= 4);
}

TEST_CASE("random streams") {
  Rng a(42), b(42), c(42, 1), d(43);
  const std::uint64_t x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  CHECK(x != d.next_u64());
  Rng r1 = Rng::for_replicate(42, 0);
  Rng r2(42, 1);
  CHECK(r1.next_u64() == r2.next_u64());
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform01();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("samplers") {
  CHECK(weibull_from_uniform(1.0, 1.0, std::exp(-1.0)) == doctest::Approx(1.0));
  CHECK(weibull_from_uniform(2.0, 3.0, std::exp(-4.0)) == doctest::Approx(6.0));

  Rng rng(2024);
  CHECK(sample_poisson(0.0, rng) == 0);

  const int draws = 100000;
  double s = 0, ss = 0, w = 0;
  for (int i = 0; i < draws; ++i) {
    const double k = sample_poisson(5.0, rng);
    s += k;
    ss += k * k;
    w += sample_weibull(1.0, 5.0, rng);
  }
  const double mean = s / draws;
  const double var = ss / draws - mean * mean;
  CHECK(std::abs(mean - 5.0) < 0.05);
  CHECK(std::abs(var - 5.0) < 0.1);
  CHECK(std::abs(w / draws - 5.0) < 0.1);

  double z = 0, zz = 0;
  for (int i = 0; i < draws; ++i) {
    const double v = sample_normal(rng);
    z += v;
    zz += v * v;
  }
  CHECK(std::abs(z / draws) < 0.02);
  CHECK(std::abs(zz / draws - 1.0) < 0.02);
}

TEST_CASE("simulated intervals") {
  Rng rng(5);
  const IntervalData none = simulate_intervals(50, 0.0, rng);
  for (const Interval& iv : none.intervals) {
    CHECK(iv.left == 0.0);
    CHECK(std::isinf(iv.right));
  }
  const IntervalData d = simulate_intervals(500, 4.0, rng);
  CHECK_NOTHROW(d.validate());
  for (const Interval& iv : d.intervals) {
    const double l10 = iv.left * 10, r10 = iv.right * 10;
    CHECK(std::abs(l10 - std::round(l10)) < 1e-9);
    if (std::isfinite(iv.right)) {
      CHECK(std::abs(r10 - std::round(r10)) < 1e-9);
      CHECK(iv.right <= 10.0);
    }
  }
}

TEST_CASE("simulated genotypes") {
  Rng rng(6);
  const Eigen::MatrixXd q = Eigen::MatrixXd::Ones(20, 1);
  CHECK((simulate_genotypes_from(Eigen::MatrixXd::Ones(5, 1), q, rng).array() == 2).all());
  CHECK((simulate_genotypes_from(Eigen::MatrixXd::Zero(5, 1), q, rng).array() == 0).all());

  const Eigen::MatrixXd f = Eigen::MatrixXd::Constant(1, 1, 0.3);
  const GenotypeMatrix x = simulate_genotypes_from(f, Eigen::MatrixXd::Ones(10000, 1), rng);
  CHECK(std::abs(x.cast<double>().mean() - 0.6) < 0.02);

  const SimulatedGenotypes g = simulate_genotypes(30, 10, 3, rng);
  CHECK((g.qmat.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK((g.freq.array() >= 0.05).all());
  CHECK((g.freq.array() <= 0.95).all());
}

TEST_CASE("simulated factor covariance recovers the model") {
  Rng rng(8);
  Eigen::MatrixXd beta(1, 3);
  beta << 0.8, -0.5, 0.3;
  const Eigen::VectorXd tau2 = Eigen::Vector3d(0.4, 0.6, 0.5);
  const int n = 100000;
  const SampleCovariance c = simulate_factor_covariance(n, beta, tau2, rng);
  CHECK(c.n == n);
  const Eigen::MatrixXd sigma =
      beta.transpose() * beta + Eigen::MatrixXd(tau2.asDiagonal());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double se = std::sqrt((sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) / n);
      CHECK(std::abs(c.cyy(i, j) - sigma(i, j)) < 4 * se);
    }
  }
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 3);
  const SampleCovariance d = simulate_factor_covariance(n, zero, tau2, rng);
  CHECK(std::abs(d.cyy(0, 1)) < 0.02);
  CHECK(std::abs(d.cyy(1, 1) - 0.6) < 0.02);
}

TEST_CASE("simulators reproduce the golden fixtures") {
  {
    Rng rng(7, 0);
    CHECK(write_intervals(simulate_intervals(20, 2.0, rng)) == fixture("intervals_seed7.txt"));
  }
  {
    Rng rng(7, 0);
    CHECK(write_genotypes(simulate_genotypes(10, 8, 2, rng).x) == fixture("genotypes_seed7.txt"));
  }
  {
    Rng rng(7, 0);
    CHECK(write_matrix(simulate_factor_data(50, 4, 1, rng).cov.cyy) ==
          fixture("factor_cov_seed7.txt"));
  }
  {
    Rng rng(7, 0);
    CHECK(write_logistic_table(simulate_logistic(12, 3, rng).data) == fixture("logistic_seed7.txt"));
  }
}
