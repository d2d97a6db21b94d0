#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtclm/simgen.hpp"
#include "mtclm/tuning.hpp"

namespace mtclm {

enum class Method { mtclm_l1, mtclm_fused, mtclm_group, logistic_l1, clm_l1 };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

struct BenchConfig {
  std::vector<Scenario> scenarios;
  std::vector<Method> methods;
  int replicates = 10;
  int n = 300;
  int p = 75;
  double rho = 0.0;
  CoefMagnitude coef_magnitude = CoefMagnitude::uniform_075_125;
  double fixed_magnitude = 1.0;
  std::uint64_t seed = 1;
  int folds = 5;
  int threads = 1;
  AdmmSettings admm{1.0, 1.0, 300, 1e-4, 1e-3};  // trend-scale tolerances
  SmoothSolveSettings smooth;
  ProxGradSettings baseline_settings;
};

struct BenchRow {
  std::string scenario;
  std::string method;
  int replicate = 0;
  std::string metric;
  double value = 0.0;
};

// One train/test replicate per tuple: tune by K-fold CV on the training set,
// refit, evaluate on an independent test set of the same size. Deterministic
// in config.seed regardless of thread count; a failed tuple is recorded as a
// metric "error" row rather than aborting the run.
std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

}  // namespace mtclm
