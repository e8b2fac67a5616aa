#include "squarem/experiment/experiment.hpp"

#include "squarem/data/catalog.hpp"
#include "squarem/data/formats.hpp"
#include "squarem/data/simulate.hpp"
#include "squarem/parallel.hpp"
#include "squarem/problems/admixture.hpp"
#include "squarem/problems/factor_analysis.hpp"
#include "squarem/problems/interval_censoring.hpp"
#include "squarem/problems/logistic_mm.hpp"
#include "squarem/problems/poisson_mixture.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace squarem {

namespace {

const std::vector<std::pair<std::string, ProblemKind>>& kind_table() {
  static const std::vector<std::pair<std::string, ProblemKind>> table = {
      {"poisson", ProblemKind::kPoisson},
      {"factor", ProblemKind::kFactor},
      {"factor-ecme", ProblemKind::kFactorEcme},
      {"interval", ProblemKind::kInterval},
      {"admixture", ProblemKind::kAdmixture},
      {"logistic-ub", ProblemKind::kLogisticUniform},
      {"logistic-nub", ProblemKind::kLogisticNonuniform},
  };
  return table;
}

int get_int(const KeyValues& kv, const std::string& key, int fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size())
    throw std::invalid_argument("'" + key + "' must be an integer, got '" + it->second + "'");
  return v;
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::vector<double> v = parse_double_list(it->second);
  if (v.size() != 1) throw std::invalid_argument("'" + key + "' must be a number");
  return v.front();
}

void allow_keys(const KeyValues& kv, std::initializer_list<const char*> keys,
                const std::string& what) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) throw std::invalid_argument("unknown " + what + " key '" + k + "'");
  }
}

ParameterVector dirichlet_ones(int m, Rng& rng) {
  ParameterVector v(m);
  for (int j = 0; j < m; ++j) v[j] = -std::log1p(-rng.uniform01());
  return v / v.sum();
}

bool is_catalog(const std::string& data, const char* name) {
  return data.empty() || data == name;
}

ProblemInstance poisson_instance(const ExperimentSpec& spec) {
  if (!spec.simulate.empty()) throw std::invalid_argument("poisson has no simulator");
  PoissonCountData data = is_catalog(spec.data, "times_deaths")
                              ? catalog::times_deaths()
                              : PoissonCountData{parse_double_list(read_text_file(spec.data))};
  ProblemInstance inst;
  inst.problem = make_poisson_problem(data);
  inst.default_start = PoissonMixtureParams{0.3, 1.0, 5.0}.to_vector();
  inst.random_start = [](Rng& rng) { return random_poisson_start(rng); };
  for (double c : data.counts) inst.data_text += format_double(c) + "\n";
  inst.description = "poisson mixture, " + std::to_string(data.counts.size()) + " count classes";
  return inst;
}

ProblemInstance factor_instance(const ExperimentSpec& spec, Rng& rng, bool ecme) {
  SampleCovariance cov;
  LoadingMask mask;
  FactorModelParams start;
  std::string source;
  if (!spec.simulate.empty()) {
    allow_keys(spec.simulate, {"n", "p", "q", "datasets"}, "factor simulation");
    const int q = get_int(spec.simulate, "q", 4);
    const SimulatedFactorData sim = simulate_factor_data(
        get_int(spec.simulate, "n", 200), get_int(spec.simulate, "p", 32), q, rng);
    cov = sim.cov;
    source = "simulated";
  } else if (is_catalog(spec.data, "joreskog")) {
    cov = catalog::joreskog_cov();
    mask = bundled_factor_mask();
    start = catalog::factor_start();
    source = "joreskog";
  } else {
    allow_keys(spec.model, {"n", "q"}, "factor model");
    cov.cyy = parse_covariance(read_text_file(spec.data));
    cov.n = get_double(spec.model, "n", 0.0);
    if (!(cov.n > 0.0)) throw std::invalid_argument("a covariance file needs --model n=<sample size>");
    source = spec.data;
  }
  if (mask.size() == 0) {
    const int q = !spec.simulate.empty() ? get_int(spec.simulate, "q", 4) : get_int(spec.model, "q", 1);
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    mask = LoadingMask::Constant(q, cov.cyy.cols(), true);
    start.free = mask;
    start.beta.resize(q, cov.cyy.cols());
    for (Eigen::Index j = 0; j < start.beta.cols(); ++j)
      for (Eigen::Index k = 0; k < q; ++k) start.beta(k, j) = sample_uniform(-1.0, 1.0, rng);
    start.tau2 = 0.5 * cov.cyy.diagonal();
  }
  ProblemInstance inst;
  inst.problem = make_factor_problem(cov, mask, ecme);
  inst.default_start = start.to_vector();
  const Eigen::VectorXd diag = cov.cyy.diagonal();
  inst.random_start = [mask, diag](Rng& r) {
    FactorModelParams p;
    p.free = mask;
    p.beta = Eigen::MatrixXd::Zero(mask.rows(), mask.cols());
    for (Eigen::Index j = 0; j < mask.cols(); ++j)
      for (Eigen::Index k = 0; k < mask.rows(); ++k)
        if (mask(k, j)) p.beta(k, j) = sample_uniform(-1.0, 1.0, r);
    p.tau2.resize(diag.size());
    for (Eigen::Index j = 0; j < diag.size(); ++j) p.tau2[j] = sample_uniform(0.2, 0.8, r) * diag[j];
    return p.to_vector();
  };
  inst.data_text = write_matrix(cov.cyy);
  inst.description = std::string(ecme ? "factor analysis (ECME), " : "factor analysis (EM), ") +
                     source;
  return inst;
}

ProblemInstance interval_instance(const ExperimentSpec& spec, Rng& rng) {
  allow_keys(spec.model, {"support"}, "interval model");
  IntervalData data;
  if (!spec.simulate.empty()) {
    allow_keys(spec.simulate, {"n", "mu", "datasets"}, "interval simulation");
    data = simulate_intervals(get_int(spec.simulate, "n", 200),
                              get_double(spec.simulate, "mu", 5.0), rng);
  } else if (is_catalog(spec.data, "breast_cancer")) {
    data = catalog::breast_cancer_intervals();
  } else {
    data = parse_intervals(read_text_file(spec.data));
  }
  SupportMode mode = SupportMode::kInnermost;
  if (auto it = spec.model.find("support"); it != spec.model.end()) {
    if (it->second == "all")
      mode = SupportMode::kAllCells;
    else if (it->second != "innermost")
      throw std::invalid_argument("support must be 'innermost' or 'all'");
  }
  const AlphaMatrix alpha = build_alpha_matrix(data, mode);
  ProblemInstance inst;
  inst.data_text = write_intervals(data);
  inst.problem = make_interval_problem(alpha);
  inst.default_start = interval_uniform_start(alpha);
  const int m = alpha.cols();
  inst.random_start = [m](Rng& r) { return dirichlet_ones(m, r); };
  inst.description = "interval censoring, n=" + std::to_string(alpha.rows()) +
                     ", cells=" + std::to_string(m);
  return inst;
}

ProblemInstance admixture_instance(const ExperimentSpec& spec, Rng& rng) {
  GenotypeMatrix x;
  int k = 3;
  if (!spec.data.empty() && spec.simulate.empty()) {
    allow_keys(spec.model, {"k"}, "admixture model");
    x = parse_genotypes(read_text_file(spec.data));
    k = get_int(spec.model, "k", 3);
  } else {
    allow_keys(spec.simulate, {"n", "p", "k", "datasets"}, "admixture simulation");
    k = get_int(spec.simulate, "k", 3);
    x = simulate_genotypes(get_int(spec.simulate, "n", 150), get_int(spec.simulate, "p", 100), k,
                           rng)
            .x;
  }
  const int n = static_cast<int>(x.rows()), p = static_cast<int>(x.cols());
  auto start_from = [n, p, k](Rng& r, bool random_q) {
    AdmixtureParams s;
    s.freq.resize(p, k);
    for (int j = 0; j < p; ++j)
      for (int a = 0; a < k; ++a) {
        double f = r.uniform01();
        while (f == 0.0) f = r.uniform01();
        s.freq(j, a) = f;
      }
    s.qmat = Eigen::MatrixXd::Constant(n, k, 1.0 / k);
    if (random_q)
      for (int i = 0; i < n; ++i) s.qmat.row(i) = dirichlet_ones(k, r).transpose();
    return s.to_vector();
  };
  ProblemInstance inst;
  inst.problem = make_admixture_problem(x, k);
  inst.data_text = write_genotypes(x);
  inst.default_start = start_from(rng, false);
  inst.random_start = [start_from](Rng& r) { return start_from(r, true); };
  inst.description = "admixture, n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                     ", K=" + std::to_string(k);
  return inst;
}

ProblemInstance logistic_instance(const ExperimentSpec& spec, Rng& rng, bool uniform) {
  LogisticData data;
  std::string source;
  if (!spec.simulate.empty() || spec.data.empty()) {
    allow_keys(spec.simulate, {"n", "d", "datasets"}, "logistic simulation");
    data = simulate_logistic(get_int(spec.simulate, "n", 100), get_int(spec.simulate, "d", 7), rng)
               .data;
    source = "simulated";
  } else if (spec.data == "lee_preview") {
    data = catalog::lee_preview();
    source = "lee_preview";
  } else {
    data = parse_logistic_table(read_text_file(spec.data));
    source = spec.data;
  }
  const int d = static_cast<int>(data.design.cols());
  ProblemInstance inst;
  inst.problem = make_logistic_problem(data, uniform);
  inst.data_text = write_logistic_table(data);
  inst.default_start = ParameterVector::Constant(d, 10.0);
  inst.random_start = [d](Rng& r) {
    ParameterVector v(d);
    for (int k = 0; k < d; ++k) v[k] = sample_uniform(0.0, 10.0, r);
    return v;
  };
  inst.description = std::string(uniform ? "logistic QM (uniform bound), "
                                         : "logistic QM (non-uniform bound), ") +
                     source;
  return inst;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join_vector(const ParameterVector& v, const char* sep) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

ProblemKind parse_problem_kind(const std::string& name) {
  for (const auto& [n, k] : kind_table())
    if (n == name) return k;
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::string to_string(ProblemKind kind) {
  for (const auto& [n, k] : kind_table())
    if (k == kind) return n;
  return "unknown";
}

std::vector<std::string> problem_names() {
  std::vector<std::string> out;
  for (const auto& entry : kind_table()) out.push_back(entry.first);
  return out;
}

std::string to_string(Algorithm algo) {
  return algo == Algorithm::kFixedPoint ? "fp" : "squarem";
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw std::invalid_argument("expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

ProblemInstance build_instance(const ExperimentSpec& spec, Rng& data_rng) {
  switch (spec.problem) {
    case ProblemKind::kPoisson: return poisson_instance(spec);
    case ProblemKind::kFactor: return factor_instance(spec, data_rng, false);
    case ProblemKind::kFactorEcme: return factor_instance(spec, data_rng, true);
    case ProblemKind::kInterval: return interval_instance(spec, data_rng);
    case ProblemKind::kAdmixture: return admixture_instance(spec, data_rng);
    case ProblemKind::kLogisticUniform: return logistic_instance(spec, data_rng, true);
    case ProblemKind::kLogisticNonuniform: return logistic_instance(spec, data_rng, false);
  }
  throw std::invalid_argument("unknown problem");
}

RunRecord run_once(const ProblemInstance& instance, Algorithm algo,
                   const ParameterVector& start, const SquaremSettings& settings,
                   bool record_timing, long replicate, ConvergenceReport* report,
                   IterationTrace* trace) {
  RunRecord rec;
  rec.replicate = replicate;
  rec.algo = algo;
  rec.start = start;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ConvergenceReport r = algo == Algorithm::kFixedPoint
                              ? fixed_point_run(instance.problem, start, settings, trace)
                              : squarem_run(instance.problem, start, settings, trace);
    rec.fpevals = r.fpevals;
    rec.objfevals = r.objfevals;
    rec.iter = r.iter;
    rec.objective = r.value_objfn;
    rec.converged = r.convergence;
    rec.termination = r.termination;
    rec.error = r.message;
    if (report) *report = std::move(r);
  } catch (const std::invalid_argument& e) {
    rec.converged = false;
    rec.termination = Termination::kMapFailure;
    rec.error = e.what();
  }
  if (record_timing) rec.seconds = seconds_since(t0);
  return rec;
}

std::vector<SingleResult> run_single(const ExperimentSpec& spec, bool keep_trace) {
  Rng data_rng(spec.seed, 0);
  const ProblemInstance inst = build_instance(spec, data_rng);
  ParameterVector start = inst.default_start;
  if (spec.start) {
    start = Eigen::Map<const ParameterVector>(spec.start->data(),
                                              static_cast<Eigen::Index>(spec.start->size()));
    if (start.size() != inst.default_start.size())
      throw std::invalid_argument("start has " + std::to_string(start.size()) +
                                  " values, problem expects " +
                                  std::to_string(inst.default_start.size()));
  }
  spec.settings.validate();
  std::vector<SingleResult> out;
  for (Algorithm algo : spec.algos) {
    SingleResult res;
    res.algo = algo;
    res.record = run_once(inst, algo, start, spec.settings, spec.record_timing, 0, &res.report,
                          keep_trace ? &res.trace : nullptr);
    if (!res.record.error.empty() && res.report.par.size() == 0)
      throw std::invalid_argument(res.record.error);
    out.push_back(std::move(res));
  }
  return out;
}

ParameterVector reference_fixed_point(const ProblemInstance& instance,
                                      const ParameterVector& start) {
  SquaremSettings s;
  s.tol = 1e-13;
  s.maxiter = 200000;
  return squarem_run(instance.problem, start, s).par;
}

std::string trace_csv(const IterationTrace& trace, const ParameterVector& reference,
                      const FixedPointProblem& problem) {
  std::string out = "fpevals,error,objective\n";
  for (const auto& r : trace.records) {
    std::optional<double> obj = r.objective;
    if (!obj && problem.has_objective()) {
      try {
        obj = problem.objective(r.par);
      } catch (const std::exception&) {
      }
    }
    out += std::to_string(r.fpevals) + "," + format_double((r.par - reference).norm()) + "," +
           (obj ? format_double(*obj) : std::string("NA")) + "\n";
  }
  return out;
}

std::vector<RunRecord> run_multistart(const ExperimentSpec& spec) {
  if (spec.starts < 1) throw std::invalid_argument("starts must be at least 1");
  spec.settings.validate();
  Rng data_rng(spec.seed, 0);
  const ProblemInstance inst = build_instance(spec, data_rng);
  const long n = spec.starts;
  const long a = static_cast<long>(spec.algos.size());
  std::vector<ParameterVector> starts(static_cast<std::size_t>(n));
  for (long r = 0; r < n; ++r) {
    if (n == 1) {
      starts[0] = spec.start ? Eigen::Map<const ParameterVector>(
                                   spec.start->data(), static_cast<Eigen::Index>(spec.start->size()))
                             : inst.default_start;
    } else {
      Rng rng = Rng::for_replicate(spec.seed, static_cast<std::uint64_t>(r));
      starts[static_cast<std::size_t>(r)] = inst.random_start(rng);
    }
  }
  std::vector<RunRecord> records(static_cast<std::size_t>(n * a));
  const int threads = threads_for(n * a);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (long t = 0; t < n * a; ++t) {
    const long r = t / a;
    records[static_cast<std::size_t>(t)] =
        run_once(inst, spec.algos[static_cast<std::size_t>(t % a)],
                 starts[static_cast<std::size_t>(r)], spec.settings, spec.record_timing, r);
  }
  return records;
}

std::vector<RunRecord> run_simulation_study(const ExperimentSpec& spec) {
  if (spec.simulate.empty()) throw std::invalid_argument("a simulation study needs --simulate");
  spec.settings.validate();
  const int datasets = get_int(spec.simulate, "datasets", 1);
  if (datasets < 1) throw std::invalid_argument("datasets must be at least 1");
  const long a = static_cast<long>(spec.algos.size());
  std::vector<RunRecord> records(static_cast<std::size_t>(datasets * a));
  std::vector<std::string> errors(static_cast<std::size_t>(datasets));
  const int threads = threads_for(datasets);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (int d = 0; d < datasets; ++d) {
    try {
      Rng rng = Rng::for_replicate(spec.seed, static_cast<std::uint64_t>(d));
      const ProblemInstance inst = build_instance(spec, rng);
      for (long k = 0; k < a; ++k)
        records[static_cast<std::size_t>(d * a + k)] =
            run_once(inst, spec.algos[static_cast<std::size_t>(k)], inst.default_start,
                     spec.settings, spec.record_timing, d);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(d)] = e.what();
    }
  }
  for (const std::string& e : errors)
    if (!e.empty()) throw std::invalid_argument(e);
  return records;
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<Summary> summarize(const std::vector<RunRecord>& records) {
  std::vector<Algorithm> order;
  for (const RunRecord& r : records)
    if (std::find(order.begin(), order.end(), r.algo) == order.end()) order.push_back(r.algo);
  std::vector<Summary> out;
  for (Algorithm algo : order) {
    Summary s;
    s.algo = algo;
    std::vector<double> evals, secs;
    for (const RunRecord& r : records) {
      if (r.algo != algo) continue;
      ++s.runs;
      if (!r.converged) {
        ++s.failed;
        continue;
      }
      evals.push_back(static_cast<double>(r.fpevals));
      if (r.seconds) secs.push_back(*r.seconds);
    }
    if (!evals.empty()) {
      const double n = static_cast<double>(evals.size());
      s.mean_fpevals = std::accumulate(evals.begin(), evals.end(), 0.0) / n;
      double ss = 0.0;
      for (double e : evals) ss += (e - s.mean_fpevals) * (e - s.mean_fpevals);
      s.sd_fpevals = evals.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      s.low_fpevals = quantile(evals, 0.025);
      s.high_fpevals = quantile(evals, 0.975);
    }
    if (!secs.empty() && secs.size() == evals.size()) {
      s.mean_seconds = std::accumulate(secs.begin(), secs.end(), 0.0) / secs.size();
      s.low_seconds = quantile(secs, 0.025);
      s.high_seconds = quantile(secs, 0.975);
    }
    out.push_back(s);
  }
  return out;
}

std::string band_string(double mean, double low, double high, int decimals) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.*f(%.*f, %.*f)", decimals, mean, decimals, low, decimals,
                high);
  return buf;
}

std::string records_csv(const std::vector<RunRecord>& records, bool with_timing) {
  std::string out =
      "replicate,algo,fpevals,objfevals,iter,objective,converged,termination,seconds,start\n";
  for (const RunRecord& r : records) {
    out += std::to_string(r.replicate) + "," + to_string(r.algo) + "," +
           std::to_string(r.fpevals) + "," + std::to_string(r.objfevals) + "," +
           (r.iter ? std::to_string(*r.iter) : std::string("NA")) + "," +
           (r.objective ? format_double(*r.objective) : std::string("NA")) + "," +
           (r.converged ? "true" : "false") + "," + to_string(r.termination) + "," +
           (with_timing && r.seconds ? format_double(*r.seconds) : std::string("NA")) + "," +
           join_vector(r.start, ";") + "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<Summary>& summary) {
  std::string out =
      "algo,runs,failed,mean_fpevals,sd_fpevals,p025_fpevals,p975_fpevals,fpevals_band,"
      "mean_seconds,p025_seconds,p975_seconds\n";
  for (const Summary& s : summary) {
    auto opt = [](const std::optional<double>& v) {
      return v ? format_double(*v) : std::string("NA");
    };
    out += to_string(s.algo) + "," + std::to_string(s.runs) + "," + std::to_string(s.failed) +
           "," + format_double(s.mean_fpevals) + "," + format_double(s.sd_fpevals) + "," +
           format_double(s.low_fpevals) + "," + format_double(s.high_fpevals) + ",\"" +
           band_string(s.mean_fpevals, s.low_fpevals, s.high_fpevals) + "\"," +
           opt(s.mean_seconds) + "," + opt(s.low_seconds) + "," + opt(s.high_seconds) + "\n";
  }
  return out;
}

std::string spec_json(const ExperimentSpec& spec, const std::vector<Summary>& summary) {
  nlohmann::ordered_json j;
  j["problem"] = to_string(spec.problem);
  std::vector<std::string> algos;
  for (Algorithm a : spec.algos) algos.push_back(to_string(a));
  j["algos"] = algos;
  j["settings"] = {{"tol", spec.settings.tol},
                   {"maxiter", spec.settings.maxiter},
                   {"method", static_cast<int>(spec.settings.method)},
                   {"objfn_inc", std::isinf(spec.settings.objfn_inc)
                                     ? nlohmann::ordered_json("Inf")
                                     : nlohmann::ordered_json(spec.settings.objfn_inc)},
                   {"step_min0", spec.settings.step_min0},
                   {"mstep", spec.settings.mstep}};
  j["starts"] = spec.starts;
  j["seed"] = spec.seed;
  j["data"] = spec.data;
  j["simulate"] = spec.simulate;
  j["model"] = spec.model;
  if (spec.start) j["start"] = *spec.start;
  j["timing_recorded"] = spec.record_timing;
  j["rng"] = "mt19937_64 seeded by seed_seq{seed lo, seed hi, stream lo, stream hi}";
  j["quantiles"] = "empirical 2.5/97.5 percentiles, linear interpolation";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Summary& s : summary) {
    rows.push_back({{"algo", to_string(s.algo)},
                    {"runs", s.runs},
                    {"failed", s.failed},
                    {"mean_fpevals", s.mean_fpevals},
                    {"sd_fpevals", s.sd_fpevals},
                    {"p025_fpevals", s.low_fpevals},
                    {"p975_fpevals", s.high_fpevals}});
  }
  j["summary"] = rows;
  return j.dump(2) + "\n";
}

std::string report_text(ProblemKind problem, const SingleResult& result) {
  const ConvergenceReport& r = result.report;
  std::string out;
  out += "problem: " + to_string(problem) + "\n";
  out += "algo: " + to_string(result.algo) + "\n";
  out += "par: " + join_vector(r.par, ",") + "\n";
  out += "value.objfn: " + (r.value_objfn ? format_double(*r.value_objfn) : std::string("NA")) +
         "\n";
  out += "iter: " + (r.iter ? std::to_string(*r.iter) : std::string("NA")) + "\n";
  out += "fpevals: " + std::to_string(r.fpevals) + "\n";
  out += "objfevals: " + std::to_string(r.objfevals) + "\n";
  out += std::string("convergence: ") + (r.convergence ? "true" : "false") + "\n";
  out += "termination: " + to_string(r.termination) + "\n";
  if (!r.message.empty()) out += "message: " + r.message + "\n";
  if (result.record.seconds) out += "seconds: " + format_double(*result.record.seconds) + "\n";
  return out;
}

}  // namespace squarem
