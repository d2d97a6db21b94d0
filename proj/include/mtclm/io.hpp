#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtclm/baselines.hpp"
#include "mtclm/simgen.hpp"
#include "mtclm/types.hpp"
#include "mtclm/admm.hpp"

namespace mtclm {

// Parse/format failures carry the 1-based line number of the offending row.
struct CsvError : std::runtime_error {
  explicit CsvError(const std::string& what) : std::runtime_error(what) {}
};

struct CsvDataset {
  OrdinalDataset data;
  std::vector<std::string> feature_names;
  std::string label_name;
};

// Header row required; `label` names the integer response column, every
// other column is a numeric predictor. k_max defaults to max(y) unless
// overridden.
CsvDataset read_dataset_csv(const std::string& path, const std::string& label,
                            int k_max_override = -1);

void write_dataset_csv(const std::string& path, const OrdinalDataset& data,
                       const std::string& label,
                       const std::vector<std::string>& feature_names);

inline constexpr int kModelSchemaVersion = 1;

// Everything a saved fit needs to predict and to be audited: parameters on
// the fitting scale and the original data scale, the scaler, config echo,
// and convergence diagnostics. Exactly one of mtclm/baseline is populated.
struct ModelArtifact {
  std::string method;
  int k_max = 0;
  std::string label_name;
  std::vector<std::string> feature_names;
  bool standardized = true;
  StandardizeRecord record;

  std::optional<MtclmParams> mtclm;
  std::optional<MtclmParams> mtclm_original;
  std::optional<BaselineFit> baseline;
  std::optional<BaselineFit> baseline_original;

  PenaltyConfig penalty;
  AdmmSettings admm;
  SmoothSolveSettings smooth;

  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<std::string> notes;
};

void save_model(const std::string& path, const ModelArtifact& artifact);
ModelArtifact load_model(const std::string& path);

void write_ground_truth_json(const std::string& path, const ScenarioSpec& spec,
                             const GroundTruth& truth);

void write_trace_csv(const std::string& path, const FitResult& fit);

}  // namespace mtclm
