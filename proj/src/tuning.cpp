#include "mtclm/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mtclm/likelihood.hpp"

namespace mtclm {

std::vector<PenaltyConfig> default_grid(GridKind kind) {
  const std::vector<double> l11 = {0.01, 0.05};
  const std::vector<double> l12 = {0.05, 0.1};
  const std::vector<double> structural = {0.0, 0.01, 0.05};
  std::vector<PenaltyConfig> grid;
  for (double a : l11) {
    for (double b : l12) {
      if (kind == GridKind::l1) {
        grid.push_back({a, b, 0.0, 0.0});
        continue;
      }
      for (double s : structural) {
        if (kind == GridKind::l1_fused) grid.push_back({a, b, s, 0.0});
        else grid.push_back({a, b, 0.0, s});
      }
    }
  }
  return grid;
}

std::vector<double> baseline_default_lambdas() { return {0.01, 0.05, 0.1}; }

std::vector<std::vector<int>> make_folds(const VectorXi& y, int folds, std::uint64_t seed,
                                         bool stratified) {
  if (folds < 2) throw std::invalid_argument("make_folds: need at least 2 folds");
  if (y.size() < folds) throw std::invalid_argument("make_folds: more folds than rows");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> assignment(folds);

  auto deal = [&](std::vector<int>& idx, int start_fold) {
    std::shuffle(idx.begin(), idx.end(), rng);
    for (size_t i = 0; i < idx.size(); ++i)
      assignment[(start_fold + static_cast<int>(i)) % folds].push_back(idx[i]);
    return (start_fold + static_cast<int>(idx.size())) % folds;
  };

  if (stratified) {
    const int k_max = y.maxCoeff();
    int start = 0;
    for (int level = 0; level <= k_max; ++level) {
      std::vector<int> idx;
      for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] == level) idx.push_back(static_cast<int>(i));
      start = deal(idx, start);
    }
  } else {
    std::vector<int> idx(y.size());
    std::iota(idx.begin(), idx.end(), 0);
    deal(idx, 0);
  }
  for (auto& fold : assignment) std::sort(fold.begin(), fold.end());
  return assignment;
}

namespace {

OrdinalDataset take_rows(const OrdinalDataset& data, const std::vector<int>& rows) {
  OrdinalDataset out;
  out.k_max = data.k_max;
  out.x.resize(rows.size(), data.x.cols());
  out.y.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.x.row(i) = data.x.row(rows[i]);
    out.y[i] = data.y[rows[i]];
  }
  return out;
}

std::vector<int> complement_rows(Eigen::Index n, const std::vector<int>& fold) {
  std::vector<int> rows;
  rows.reserve(n - fold.size());
  size_t f = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (f < fold.size() && fold[f] == i) { ++f; continue; }
    rows.push_back(static_cast<int>(i));
  }
  return rows;
}

void check_training_part(const VectorXi& y, int k_max, int fold_index,
                         std::vector<std::string>& notes) {
  Eigen::Index healthy = 0, diseased = 0;
  VectorXi level_counts = VectorXi::Zero(k_max + 1);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    ++level_counts[y[i]];
    if (y[i] == 0) ++healthy;
    else ++diseased;
  }
  if (healthy == 0 || diseased == 0)
    throw std::invalid_argument("kfold_cv: training part of fold " + std::to_string(fold_index) +
                                " lacks a " + (healthy == 0 ? "healthy" : "diseased") + " class");
  for (int k = 1; k <= k_max; ++k)
    if (level_counts[k] == 0)
      notes.push_back("fold " + std::to_string(fold_index) + ": no severity-" + std::to_string(k) +
                      " observations in training part");
}

// Grid order for warm starts: heaviest total penalty first.
std::vector<int> descending_penalty_order(const std::vector<PenaltyConfig>& grid) {
  std::vector<int> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  auto total = [](const PenaltyConfig& c) {
    return c.lambda11 + c.lambda12 + c.lambda_f + c.lambda_g;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return total(grid[i]) > total(grid[j]); });
  return order;
}

int select_winner(const VectorXd& mean_cv, const std::vector<PenaltyConfig>& grid) {
  const double best = mean_cv.minCoeff();
  int winner = -1;
  double winner_total = -1.0;
  for (Eigen::Index g = 0; g < mean_cv.size(); ++g) {
    if (mean_cv[g] > best + 1e-12 * std::fmax(1.0, std::fabs(best))) continue;
    const double total =
        grid[g].lambda11 + grid[g].lambda12 + grid[g].lambda_f + grid[g].lambda_g;
    if (total > winner_total) {
      winner_total = total;
      winner = static_cast<int>(g);
    }
  }
  return winner;
}

}  // namespace

CvResult kfold_cv(const OrdinalDataset& data, const CvSpec& spec, SolverVariant variant,
                  const AdmmSettings& admm, const SmoothSolveSettings& smooth) {
  validate_dataset(data);
  if (spec.grid.empty()) throw std::invalid_argument("kfold_cv: empty grid");
  for (const auto& config : spec.grid) {
    validate_penalty(config);
    if (variant == SolverVariant::fused && config.lambda_g > 0)
      throw std::invalid_argument("kfold_cv: fused variant forbids lambda_g > 0");
    if (variant == SolverVariant::group && config.lambda_f > 0)
      throw std::invalid_argument("kfold_cv: group variant forbids lambda_f > 0");
  }

  const auto folds = make_folds(data.y, spec.folds, spec.seed, spec.stratified);
  const auto order = descending_penalty_order(spec.grid);

  CvResult res;
  res.heldout_nll.resize(spec.grid.size(), spec.folds);

  auto fit_one = [&](const OrdinalDataset& train, const PenaltyConfig& config,
                     const AdmmState* warm) {
    return variant == SolverVariant::fused
               ? fit_fused(train, config, admm, smooth, std::nullopt, warm)
               : fit_group(train, config, admm, smooth, std::nullopt, warm);
  };

  for (int f = 0; f < spec.folds; ++f) {
    const auto train_rows = complement_rows(data.n_rows(), folds[f]);
    OrdinalDataset train = take_rows(data, train_rows);
    check_training_part(train.y, data.k_max, f, res.notes);
    const OrdinalDataset heldout = take_rows(data, folds[f]);

    StandardizeRecord rec{VectorXd::Zero(data.x.cols()), VectorXd::Ones(data.x.cols())};
    if (spec.standardize_fits) {
      auto [std_train, record] = standardize(train);
      train = std::move(std_train);
      rec = std::move(record);
    }

    AdmmState warm;
    bool have_warm = false;
    for (int g : order) {
      FitResult fit = fit_one(train, spec.grid[g], have_warm ? &warm : nullptr);
      warm = fit.state;
      have_warm = true;
      const MtclmParams original =
          spec.standardize_fits ? to_original_scale(fit.params, rec) : fit.params;
      res.heldout_nll(g, f) = total_nll(heldout, original).total;
    }
  }

  res.mean_cv_error = res.heldout_nll.rowwise().mean();
  res.selected_index = select_winner(res.mean_cv_error, spec.grid);
  res.selected = spec.grid[res.selected_index];

  OrdinalDataset full = data;
  res.refit_record =
      StandardizeRecord{VectorXd::Zero(data.x.cols()), VectorXd::Ones(data.x.cols())};
  if (spec.standardize_fits) {
    auto [std_full, record] = standardize(data);
    full = std::move(std_full);
    res.refit_record = std::move(record);
  }
  res.refit = variant == SolverVariant::fused ? fit_fused(full, res.selected, admm, smooth)
                                              : fit_group(full, res.selected, admm, smooth);
  res.refit_original = spec.standardize_fits ? to_original_scale(res.refit.params, res.refit_record)
                                             : res.refit.params;
  return res;
}

BaselineCvResult kfold_cv_baseline(const OrdinalDataset& data, BaselineKind kind,
                                   const std::vector<double>& lambdas, int folds,
                                   std::uint64_t seed, bool stratified, bool standardize_fits,
                                   const ProxGradSettings& settings) {
  if (lambdas.empty()) throw std::invalid_argument("kfold_cv_baseline: empty lambda grid");
  const auto fold_rows = make_folds(data.y, folds, seed, stratified);

  BaselineCvResult res;
  res.heldout_nll.resize(lambdas.size(), folds);

  auto fit_one = [&](const OrdinalDataset& train, double lambda) {
    return kind == BaselineKind::logistic_l1 ? fit_logistic_l1(train, lambda, settings)
                                             : fit_clm_l1(train, lambda, settings);
  };
  auto heldout_criterion = [&](const OrdinalDataset& heldout, const BaselineFit& fit) {
    if (kind == BaselineKind::logistic_l1)
      return screening_nll(heldout, fit.intercepts[0], fit.coefficients);
    return clm_nll(heldout, fit.intercepts, fit.coefficients);
  };

  for (int f = 0; f < folds; ++f) {
    const auto train_rows = complement_rows(data.n_rows(), fold_rows[f]);
    OrdinalDataset train = take_rows(data, train_rows);
    std::vector<std::string> fold_notes;
    check_training_part(train.y, data.k_max, f, fold_notes);
    res.notes.insert(res.notes.end(), fold_notes.begin(), fold_notes.end());
    const OrdinalDataset heldout = take_rows(data, fold_rows[f]);

    StandardizeRecord rec{VectorXd::Zero(data.x.cols()), VectorXd::Ones(data.x.cols())};
    if (standardize_fits) {
      auto [std_train, record] = standardize(train);
      train = std::move(std_train);
      rec = std::move(record);
    }
    for (size_t g = 0; g < lambdas.size(); ++g) {
      BaselineFit fit = fit_one(train, lambdas[g]);
      const BaselineFit original =
          standardize_fits ? baseline_to_original_scale(fit, rec) : fit;
      res.heldout_nll(static_cast<Eigen::Index>(g), f) = heldout_criterion(heldout, original);
    }
  }

  res.mean_cv_error = res.heldout_nll.rowwise().mean();
  int winner = 0;
  const double best = res.mean_cv_error.minCoeff();
  double winner_lambda = -1.0;
  for (Eigen::Index g = 0; g < res.mean_cv_error.size(); ++g) {
    if (res.mean_cv_error[g] > best + 1e-12 * std::fmax(1.0, std::fabs(best))) continue;
    if (lambdas[g] > winner_lambda) {
      winner_lambda = lambdas[g];
      winner = static_cast<int>(g);
    }
  }
  res.selected_index = winner;
  res.selected_lambda = lambdas[winner];

  OrdinalDataset full = data;
  res.refit_record =
      StandardizeRecord{VectorXd::Zero(data.x.cols()), VectorXd::Ones(data.x.cols())};
  if (standardize_fits) {
    auto [std_full, record] = standardize(data);
    full = std::move(std_full);
    res.refit_record = std::move(record);
  }
  res.refit = fit_one(full, res.selected_lambda);
  res.refit_original =
      standardize_fits ? baseline_to_original_scale(res.refit, res.refit_record) : res.refit;
  return res;
}

}  // namespace mtclm
