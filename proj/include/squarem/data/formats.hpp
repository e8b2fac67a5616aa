#pragma once

// Text formats for intervals, genotypes, covariance matrices and logistic
// tables. Fields are separated by commas and/or whitespace; blank lines and
// lines starting with '#' are ignored. Writers emit 17 significant digits so
// that values survive a write/parse round trip exactly.

#include "squarem/problems/admixture.hpp"
#include "squarem/problems/factor_analysis.hpp"
#include "squarem/problems/interval_censoring.hpp"
#include "squarem/problems/logistic_mm.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace squarem {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Two columns L, R; "Inf" (any case) allowed for R. Optional brackets such
/// as "(45, Inf]" and a non-numeric header line are accepted.
IntervalData parse_intervals(std::string_view text);
std::string write_intervals(const IntervalData& data);

/// Rectangular grid of 0/1/2, individuals in rows.
GenotypeMatrix parse_genotypes(std::string_view text);
std::string write_genotypes(const GenotypeMatrix& x);

/// Square symmetric matrix (symmetry checked to 1e-12).
Eigen::MatrixXd parse_covariance(std::string_view text);
std::string write_matrix(const Eigen::MatrixXd& m);

/// Numeric table with optional header; the last column is the response and the
/// remaining columns form the design (include an intercept column explicitly).
LogisticData parse_logistic_table(std::string_view text);
std::string write_logistic_table(const LogisticData& data);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Shortest form of %.17g; "Inf"/"-Inf" for infinities.
std::string format_double(double v);
/// Comma-separated list of doubles ("0.3,1,5").
std::vector<double> parse_double_list(std::string_view text);

}  // namespace squarem
