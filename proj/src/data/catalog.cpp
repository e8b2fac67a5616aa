#include "squarem/data/catalog.hpp"

#include <limits>

namespace squarem::catalog {

PoissonCountData times_deaths() {
  return {{162, 267, 271, 185, 111, 61, 27, 8, 3, 1}};
}

SampleCovariance joreskog_cov() {
  static const double upper[9][9] = {
      {1.0, 0.554, 0.227, 0.189, 0.461, 0.506, 0.408, 0.280, 0.241},
      {0, 1.0, 0.296, 0.219, 0.479, 0.530, 0.425, 0.311, 0.311},
      {0, 0, 1.0, 0.769, 0.237, 0.243, 0.304, 0.718, 0.730},
      {0, 0, 0, 1.0, 0.212, 0.226, 0.291, 0.681, 0.661},
      {0, 0, 0, 0, 1.0, 0.520, 0.514, 0.313, 0.245},
      {0, 0, 0, 0, 0, 1.0, 0.473, 0.348, 0.290},
      {0, 0, 0, 0, 0, 0, 1.0, 0.374, 0.306},
      {0, 0, 0, 0, 0, 0, 0, 1.0, 0.672},
      {0, 0, 0, 0, 0, 0, 0, 0, 1.0},
  };
  SampleCovariance cov;
  cov.n = 145.0;
  cov.cyy.resize(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) cov.cyy(i, j) = cov.cyy(j, i) = upper[i][j];
  return cov;
}

Eigen::MatrixXd beta_start() {
  // Rows are variables here; transposed to factors x variables on return.
  static const double rows[9][4] = {
      {0.5954912, -0.4893347, -0.3848925, 0},
      {0.6449102, -0.4408213, -0.3555598, 0},
      {0.7630006, 0.5053083, -0.0535340, 0},
      {0.7163828, 0.5258722, 0.0219100, 0},
      {0.6175647, -0.4714808, 0, 0.1931459},
      {0.6464100, -0.4628659, 0, 0.4606456},
      {0.6452737, -0.3260013, 0, -0.3622682},
      {0.7868222, 0.3690580, 0, 0.0630371},
      {0.7482302, 0.4326963, 0, 0.0431256},
  };
  Eigen::MatrixXd beta(4, 9);
  for (int j = 0; j < 9; ++j)
    for (int k = 0; k < 4; ++k) beta(k, j) = rows[j][k];
  return beta;
}

Eigen::VectorXd tau2_start() { return Eigen::VectorXd::Constant(9, 1e-8); }

FactorModelParams factor_start() {
  return {beta_start(), tau2_start(), bundled_factor_mask()};
}

IntervalData breast_cancer_intervals() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{{45, inf}, {6, 10},  {0, 7},    {46, inf}, {7, 16},   {17, inf}, {7, 14},
           {37, 44},  {0, 8},   {4, 11},   {15, inf}, {11, 15},  {22, inf}, {46, inf},
           {46, inf}, {25, 37}, {46, inf}, {26, 40},  {46, inf}, {27, 34},  {36, 44},
           {46, inf}, {36, 48}, {37, inf}, {40, inf}, {17, 25},  {46, inf}, {11, 18},
           {38, inf}, {5, 12},  {37, inf}, {0, 5},    {18, inf}, {24, inf}, {36, inf},
           {5, 11},   {19, 35}, {17, 25},  {24, inf}, {32, inf}, {33, inf}, {19, 26},
           {37, inf}, {34, inf}, {36, inf}, {46, inf}}};
}

LogisticData lee_preview() {
  LogisticData d;
  d.design.resize(5, 7);
  d.design << 1, 0.8, 0.83, 0.66, 1.9, 1.100, 0.996,  //
      1, 0.9, 0.36, 0.32, 1.4, 0.740, 0.992,           //
      1, 0.8, 0.88, 0.70, 0.8, 0.176, 0.982,           //
      1, 1.0, 0.87, 0.87, 0.7, 1.053, 0.986,           //
      1, 0.9, 0.75, 0.68, 1.3, 0.519, 0.980;
  d.successes.resize(5);
  d.successes << 1, 1, 0, 0, 1;
  return d;
}

std::vector<std::string> dataset_names() {
  return {"times_deaths", "joreskog", "breast_cancer", "lee_preview"};
}

}  // namespace squarem::catalog
