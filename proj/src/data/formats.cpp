#include "squarem/data/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace squarem {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> fields;
};

std::vector<std::string> split_fields(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    lines.push_back({number, split_fields(raw)});
    if (end == text.size()) break;
  }
  return lines;
}

bool parse_number(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e && std::isfinite(out);
}

bool is_inf_token(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s == "inf" || s == "+inf" || s == "infinity";
}

bool numeric_line(const Line& l) {
  double v;
  for (const auto& f : l.fields)
    if (!parse_number(f, v) && !is_inf_token(f)) return false;
  return true;
}

std::string strip_brackets(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](char c) { return c == '(' || c == ')' || c == '[' || c == ']'; }),
          s.end());
  return s;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  if (std::isnan(v)) return "NaN";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string f(text.substr(pos, end - pos));
    f.erase(0, f.find_first_not_of(" \t"));
    f.erase(f.find_last_not_of(" \t") + 1);
    double v;
    if (!parse_number(f, v)) throw std::invalid_argument("not a number: '" + f + "'");
    out.push_back(v);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

IntervalData parse_intervals(std::string_view text) {
  IntervalData data;
  const std::vector<Line> lines = content_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::vector<std::string> f;
    for (const auto& raw : lines[k].fields) {
      std::string s = strip_brackets(raw);
      if (!s.empty()) f.push_back(s);
    }
    const int ln = lines[k].number;
    if (f.size() != 2) throw ParseError(ln, "expected two fields L, R");
    double left, right;
    const bool left_ok = parse_number(f[0], left);
    const bool right_inf = is_inf_token(f[1]);
    const bool right_ok = right_inf || parse_number(f[1], right);
    if (!left_ok || !right_ok) {
      if (k == 0 && data.intervals.empty() && !left_ok && !right_ok) continue;  // header
      throw ParseError(ln, "malformed interval '" + f[0] + "," + f[1] + "'");
    }
    if (right_inf) right = std::numeric_limits<double>::infinity();
    if (left < 0.0) throw ParseError(ln, "left endpoint must be nonnegative");
    if (!(left < right)) throw ParseError(ln, "empty interval: L must be < R");
    data.intervals.push_back({left, right});
  }
  if (data.intervals.empty()) throw ParseError(0, "no intervals found");
  return data;
}

std::string write_intervals(const IntervalData& data) {
  std::string out;
  for (const Interval& iv : data.intervals)
    out += format_double(iv.left) + "," + format_double(iv.right) + "\n";
  return out;
}

GenotypeMatrix parse_genotypes(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "no genotypes found");
  const std::size_t cols = lines.front().fields.size();
  GenotypeMatrix x(static_cast<Eigen::Index>(lines.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.fields.size() != cols)
      throw ParseError(l.number, "expected " + std::to_string(cols) + " fields, found " +
                                     std::to_string(l.fields.size()));
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string& t = l.fields[j];
      if (t.size() != 1 || t[0] < '0' || t[0] > '2')
        throw ParseError(l.number, "genotype must be 0, 1 or 2, found '" + t + "'");
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t[0] - '0';
    }
  }
  return x;
}

std::string write_genotypes(const GenotypeMatrix& x) {
  std::string out;
  out.reserve(static_cast<std::size_t>(x.size()) * 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j) out += ' ';
      out += static_cast<char>('0' + x(i, j));
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd parse_covariance(std::string_view text) {
  std::vector<Line> lines = content_lines(text);
  if (!lines.empty() && !numeric_line(lines.front())) lines.erase(lines.begin());
  if (lines.empty()) throw ParseError(0, "no matrix rows found");
  const std::size_t p = lines.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    const Line& l = lines[i];
    if (l.fields.size() != p)
      throw ParseError(l.number, "matrix is not square: expected " + std::to_string(p) +
                                     " fields");
    for (std::size_t j = 0; j < p; ++j) {
      double v;
      if (!parse_number(l.fields[j], v))
        throw ParseError(l.number, "not a finite number: '" + l.fields[j] + "'");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12)
        throw ParseError(lines[i].number, "matrix is not symmetric");
  return m;
}

std::string write_matrix(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

LogisticData parse_logistic_table(std::string_view text) {
  std::vector<Line> lines = content_lines(text);
  if (!lines.empty() && !numeric_line(lines.front())) lines.erase(lines.begin());
  if (lines.empty()) throw ParseError(0, "no data rows found");
  const std::size_t cols = lines.front().fields.size();
  if (cols < 2) throw ParseError(lines.front().number, "need a design column and a response");
  LogisticData d;
  const auto n = static_cast<Eigen::Index>(lines.size());
  d.design.resize(n, static_cast<Eigen::Index>(cols - 1));
  d.successes.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Line& l = lines[static_cast<std::size_t>(i)];
    if (l.fields.size() != cols)
      throw ParseError(l.number, "expected " + std::to_string(cols) + " fields");
    for (std::size_t j = 0; j < cols; ++j) {
      double v;
      if (!parse_number(l.fields[j], v))
        throw ParseError(l.number, "not a finite number: '" + l.fields[j] + "'");
      if (j + 1 < cols)
        d.design(i, static_cast<Eigen::Index>(j)) = v;
      else
        d.successes[i] = v;
    }
    if (d.successes[i] != 0.0 && d.successes[i] != 1.0)
      throw ParseError(l.number, "response must be 0 or 1");
  }
  return d;
}

std::string write_logistic_table(const LogisticData& data) {
  std::string out;
  for (Eigen::Index i = 0; i < data.design.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.design.cols(); ++j)
      out += format_double(data.design(i, j)) + " ";
    out += format_double(data.successes[i]) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace squarem
