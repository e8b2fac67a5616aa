#pragma once

// Experiment harness: single runs with optional error traces, multi-start
// studies and simulation studies over the bundled problems.

#include "squarem/data/rng.hpp"
#include "squarem/engine.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace squarem {

enum class ProblemKind {
  kPoisson,
  kFactor,
  kFactorEcme,
  kInterval,
  kAdmixture,
  kLogisticUniform,
  kLogisticNonuniform,
};

enum class Algorithm { kFixedPoint, kSquarem };

ProblemKind parse_problem_kind(const std::string& name);
std::string to_string(ProblemKind kind);
std::vector<std::string> problem_names();
std::string to_string(Algorithm algo);

using KeyValues = std::map<std::string, std::string>;

/// "n=200,mu=5" -> {n: 200, mu: 5}. Throws std::invalid_argument.
KeyValues parse_key_values(const std::string& text);

struct ExperimentSpec {
  ProblemKind problem = ProblemKind::kPoisson;
  std::vector<Algorithm> algos{Algorithm::kSquarem};
  SquaremSettings settings;
  int starts = 1;
  std::uint64_t seed = 1;
  /// Catalog name or file path; empty selects the problem's default source.
  std::string data;
  /// Simulator parameters; non-empty selects simulated data.
  KeyValues simulate;
  /// Model options such as q and n for a covariance file or k for genotypes.
  KeyValues model;
  std::optional<std::vector<double>> start;
  bool record_timing = true;
};

/// A problem bound to its data, with the default and random starts.
struct ProblemInstance {
  FixedPointProblem problem;
  ParameterVector default_start;
  std::function<ParameterVector(Rng&)> random_start;
  std::string description;
  /// The data in the matching file format, for --dump-data.
  std::string data_text;
};

/// Builds the data for `spec`. Simulated data are drawn from `data_rng`.
ProblemInstance build_instance(const ExperimentSpec& spec, Rng& data_rng);

struct RunRecord {
  long replicate = 0;
  Algorithm algo = Algorithm::kSquarem;
  ParameterVector start;
  long fpevals = 0;
  long objfevals = 0;
  std::optional<long> iter;
  std::optional<double> objective;
  bool converged = false;
  Termination termination = Termination::kMaxIterReached;
  std::optional<double> seconds;
  std::string error;
};

/// Runs one algorithm from one start; start-domain errors are recorded, not thrown.
RunRecord run_once(const ProblemInstance& instance, Algorithm algo,
                   const ParameterVector& start, const SquaremSettings& settings,
                   bool record_timing, long replicate = 0,
                   ConvergenceReport* report = nullptr, IterationTrace* trace = nullptr);

struct SingleResult {
  Algorithm algo;
  ConvergenceReport report;
  RunRecord record;
  IterationTrace trace;
};

/// Runs each requested algorithm from the explicit or default start.
std::vector<SingleResult> run_single(const ExperimentSpec& spec, bool keep_trace);

/// Reference fixed point from a tol-1e-13 Squarem run started at `start`.
ParameterVector reference_fixed_point(const ProblemInstance& instance,
                                      const ParameterVector& start);

/// CSV "fpevals,error,objective" with error = ||theta - theta_ref||.
std::string trace_csv(const IterationTrace& trace, const ParameterVector& reference,
                      const FixedPointProblem& problem);

/// Every algorithm from spec.starts random starts; replicate r draws its start
/// from its own stream, so thread count never changes the results.
std::vector<RunRecord> run_multistart(const ExperimentSpec& spec);

/// spec.simulate["datasets"] simulated datasets, dataset d drawn from stream
/// d; each algorithm runs from the default start of each dataset. The
/// replicate field of each record holds the dataset index.
std::vector<RunRecord> run_simulation_study(const ExperimentSpec& spec);

struct Summary {
  Algorithm algo;
  long runs = 0;
  long failed = 0;
  double mean_fpevals = 0, sd_fpevals = 0, low_fpevals = 0, high_fpevals = 0;
  std::optional<double> mean_seconds, low_seconds, high_seconds;
};

/// Per-algorithm mean, standard deviation and empirical 2.5/97.5 percentiles
/// (linear interpolation between order statistics) over converged runs.
std::vector<Summary> summarize(const std::vector<RunRecord>& records);

/// Empirical quantile with linear interpolation (type 7).
double quantile(std::vector<double> values, double prob);

std::string records_csv(const std::vector<RunRecord>& records, bool with_timing);
std::string summary_csv(const std::vector<Summary>& summary);
/// "mean(low, high)" with the given number of decimals.
std::string band_string(double mean, double low, double high, int decimals = 0);
std::string spec_json(const ExperimentSpec& spec, const std::vector<Summary>& summary);
std::string report_text(ProblemKind problem, const SingleResult& result);

}  // namespace squarem
