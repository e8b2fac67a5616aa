// Command-line harness: single runs, multi-start studies and simulation
// studies over the bundled problems. See README.md for examples.

#include "squarem/data/formats.hpp"
#include "squarem/experiment/experiment.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <string>

namespace {

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int run(int argc, char** argv) {
  using namespace squarem;
  CLI::App app{"Fixed-point and Squarem benchmark harness"};
  app.set_version_flag("--version", "squarem-bench 1.0");

  std::string problem_name, algo = "squarem", objfn_inc = "1", start, simulate, model;
  std::string data, trace_path, out_path, dump_path;
  int method = 3, starts = 1;
  double tol = 1e-7;
  long maxiter = 1500;
  std::uint64_t seed = 1;
  bool no_timing = false;

  app.add_option("problem", problem_name, "Problem to run")
      ->required()
      ->check(CLI::IsMember(problem_names()));
  app.add_option("--algo", algo, "fp, squarem or both")
      ->check(CLI::IsMember({"fp", "squarem", "both"}))
      ->capture_default_str();
  app.add_option("--method", method, "Steplength scheme")->check(CLI::Range(1, 3))->capture_default_str();
  app.add_option("--tol", tol, "Convergence tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--maxiter", maxiter, "Maximum map evaluations")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--objfn-inc", objfn_inc, "Permitted objective increase (number or Inf)")->capture_default_str();
  app.add_option("--start", start, "Comma-separated start vector");
  app.add_option("--starts", starts, "Number of random starts")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--data", data, "Catalog name or file path");
  app.add_option("--simulate", simulate, "Simulator parameters k=v,... (datasets=N runs a study)");
  app.add_option("--model", model, "Model options k=v,... (q, n for covariance files; k for genotypes; support=all|innermost)");
  app.add_option("--trace", trace_path, "Write an error trace CSV (single runs)");
  app.add_option("--out", out_path, "Write per-run CSV plus a JSON sidecar");
  app.add_option("--dump-data", dump_path, "Write the problem data (catalog, file or simulated) and exit");
  app.add_flag("--no-timing", no_timing, "Omit wall-clock columns so output is byte-stable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  ExperimentSpec spec;
  try {
    spec.problem = parse_problem_kind(problem_name);
    if (algo == "both")
      spec.algos = {Algorithm::kFixedPoint, Algorithm::kSquarem};
    else
      spec.algos = {algo == "fp" ? Algorithm::kFixedPoint : Algorithm::kSquarem};
    spec.settings.tol = tol;
    spec.settings.maxiter = maxiter;
    spec.settings.method = static_cast<StepMethod>(method);
    if (objfn_inc == "Inf" || objfn_inc == "inf") {
      spec.settings.objfn_inc = std::numeric_limits<double>::infinity();
    } else {
      const auto v = parse_double_list(objfn_inc);
      if (v.size() != 1) throw std::invalid_argument("--objfn-inc expects one number");
      spec.settings.objfn_inc = v.front();
    }
    spec.settings.validate();
    spec.starts = starts;
    spec.seed = seed;
    spec.data = data;
    spec.simulate = parse_key_values(simulate);
    spec.model = parse_key_values(model);
    if (!start.empty()) spec.start = parse_double_list(start);
    spec.record_timing = !no_timing;

    if (!dump_path.empty()) {
      Rng data_rng(spec.seed, 0);
      write_text_file(dump_path, build_instance(spec, data_rng).data_text);
      return 0;
    }

    bool all_converged = true;
    std::vector<RunRecord> records;
    std::vector<Summary> summary;
    const bool study = spec.simulate.count("datasets") > 0;
    if (study || spec.starts > 1) {
      if (!trace_path.empty()) throw std::invalid_argument("--trace applies to single runs only");
      records = study ? run_simulation_study(spec) : run_multistart(spec);
      summary = summarize(records);
      std::cout << "problem: " << to_string(spec.problem) << "\n";
      std::cout << (study ? "datasets: " : "starts: ")
                << (study ? spec.simulate.at("datasets") : std::to_string(spec.starts)) << "\n";
      std::cout << summary_csv(summary);
      for (const RunRecord& r : records) all_converged = all_converged && r.converged;
    } else {
      const std::vector<SingleResult> results = run_single(spec, !trace_path.empty());
      Rng data_rng(spec.seed, 0);
      std::optional<ProblemInstance> inst;
      for (const SingleResult& res : results) {
        std::cout << report_text(spec.problem, res);
        if (results.size() > 1) std::cout << "\n";
        all_converged = all_converged && res.report.convergence;
        records.push_back(res.record);
        if (!trace_path.empty()) {
          if (!inst) inst = build_instance(spec, data_rng);
          const ParameterVector ref = reference_fixed_point(*inst, res.record.start);
          const std::string path =
              results.size() > 1 ? with_suffix(trace_path, "-" + to_string(res.algo)) : trace_path;
          write_text_file(path, trace_csv(res.trace, ref, inst->problem));
        }
      }
      summary = summarize(records);
    }
    if (!out_path.empty()) {
      write_text_file(out_path, records_csv(records, spec.record_timing));
      write_text_file(out_path + ".json", spec_json(spec, summary));
      if (records.size() > 1) write_text_file(with_suffix(out_path, ".summary"), summary_csv(summary));
    }
    return all_converged ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
