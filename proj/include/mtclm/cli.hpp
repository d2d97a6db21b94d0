#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtclm/bench.hpp"
#include "mtclm/types.hpp"

// Subcommand runners shared by the binary and the tests. Each returns a
// process exit code: 0 success, 1 runtime failure, 2 usage or validation
// error. Human-readable diagnostics go to stderr.
namespace mtclm::cli {

struct FitOptions {
  std::string input;
  std::string label = "y";
  int k_max = -1;  // -1: infer from data
  std::string method = "mtclm-l1";
  double lambda11 = 0.0;
  double lambda12 = 0.0;
  double lambda_f = 0.0;
  double lambda_g = 0.0;
  double lambda = 0.0;  // baselines
  AdmmSettings admm;
  int inner_max_iter = 200;
  double inner_tol = 1e-6;
  bool standardize = true;
  std::string out;
  std::string trace_out;
};
int run_fit(const FitOptions& options);

struct PredictOptions {
  std::string model;
  std::string input;
  double threshold = 0.5;
  std::string out;
};
int run_predict(const PredictOptions& options);

struct CvOptions {
  std::string input;
  std::string label = "y";
  int k_max = -1;
  std::string method = "mtclm-l1";
  int folds = 5;
  std::uint64_t seed = 0;
  bool stratified = true;
  bool standardize = true;
  std::vector<double> lambda11_grid;  // empty: defaults
  std::vector<double> lambda12_grid;
  std::vector<double> structural_grid;
  std::vector<double> lambda_grid;  // baselines
  AdmmSettings admm;
  int inner_max_iter = 200;
  double inner_tol = 1e-6;
  std::string out_table;
  std::string out_selected;
  std::string out_model;
};
int run_cv(const CvOptions& options);

struct SimulateOptions {
  std::string scenario = "identical";
  int n = 300;
  int p = 75;
  double rho = 0.0;
  std::uint64_t seed = 1;
  std::string coef_mode = "uniform";
  double fixed_magnitude = 1.0;
  bool retain_latent = false;
  std::string out;
  std::string truth_out;
};
int run_simulate(const SimulateOptions& options);

struct BenchOptions {
  std::vector<std::string> scenarios;
  std::vector<std::string> methods;
  int replicates = 10;
  int n = 300;
  int p = 75;
  double rho = 0.0;
  std::string coef_mode = "uniform";
  double fixed_magnitude = 1.0;
  std::uint64_t seed = 1;
  int folds = 5;
  int threads = 1;
  std::string out;
};
int run_bench_cmd(const BenchOptions& options);

struct TraceOptions {
  std::string method = "mtclm-fused";
  int n = 300;
  int p = 75;
  double rho = 0.0;
  std::uint64_t seed = 1;
  double lambda11 = 0.05;
  double lambda12 = 0.05;
  double lambda_structural = 0.01;
  double mu = 1.0;
  int max_iter = 500;
  bool standardize = true;
  std::string out;
};
int run_trace(const TraceOptions& options);

}  // namespace mtclm::cli
