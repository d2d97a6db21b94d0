#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtclm/admm.hpp"
#include "mtclm/baselines.hpp"
#include "mtclm/types.hpp"

namespace mtclm {

enum class GridKind { l1, l1_fused, l1_group };

// Default tuning grids: lambda11 in {0.01, 0.05}, lambda12 in {0.05, 0.1},
// structural lambda in {0, 0.01, 0.05} for the fused/group kinds.
std::vector<PenaltyConfig> default_grid(GridKind kind);

enum class SolverVariant { fused, group };

struct CvSpec {
  int folds = 5;
  std::vector<PenaltyConfig> grid;
  std::uint64_t seed = 0;
  bool stratified = true;        // stratify folds by the full ordinal level
  bool standardize_fits = true;  // scaler learned on each fold's training part
};

struct CvResult {
  MatrixXd heldout_nll;   // grid x folds, average held-out nll
  VectorXd mean_cv_error; // per grid point
  int selected_index = -1;
  PenaltyConfig selected;
  FitResult refit;                 // full-data refit (fitting scale)
  MtclmParams refit_original;      // refit mapped to the original data scale
  StandardizeRecord refit_record;
  std::vector<std::string> notes;  // e.g. severity categories missing in a fold
};

// Row indices per fold; stratified assignment keeps per-level fold counts
// within one of each other. Deterministic in (y, folds, seed).
std::vector<std::vector<int>> make_folds(const VectorXi& y, int folds, std::uint64_t seed,
                                         bool stratified = true);

// K-fold CV over the grid: CV(config) = mean over folds of the held-out
// average joint nll, fits warm-started along the grid in descending total
// penalty. Ties toward the larger total penalty. Refits the winner on the
// full data.
CvResult kfold_cv(const OrdinalDataset& data, const CvSpec& spec, SolverVariant variant,
                  const AdmmSettings& admm = {}, const SmoothSolveSettings& smooth = {});

struct BaselineCvResult {
  MatrixXd heldout_nll;
  VectorXd mean_cv_error;
  int selected_index = -1;
  double selected_lambda = 0.0;
  BaselineFit refit;           // fitting scale
  BaselineFit refit_original;
  StandardizeRecord refit_record;
  std::vector<std::string> notes;
};

std::vector<double> baseline_default_lambdas();  // {0.01, 0.05, 0.1}

// Same CV scheme for the two reference methods; the held-out criterion is
// each model's own average nll.
BaselineCvResult kfold_cv_baseline(const OrdinalDataset& data, BaselineKind kind,
                                   const std::vector<double>& lambdas, int folds,
                                   std::uint64_t seed, bool stratified = true,
                                   bool standardize_fits = true,
                                   const ProxGradSettings& settings = {});

}  // namespace mtclm
