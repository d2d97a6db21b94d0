#include <doctest.h>

#include <cmath>
#include <numeric>
#include <string>

#include "mtclm/simgen.hpp"
#include "mtclm/tuning.hpp"

using namespace mtclm;

TEST_CASE("default grids have the documented sizes and shapes") {
  const auto l1 = default_grid(GridKind::l1);
  const auto fused = default_grid(GridKind::l1_fused);
  const auto group = default_grid(GridKind::l1_group);
  CHECK(l1.size() == 4);
  CHECK(fused.size() == 12);
  CHECK(group.size() == 12);
  for (const auto& c : l1) {
    CHECK(c.lambda_f == 0.0);
    CHECK(c.lambda_g == 0.0);
  }
  for (const auto& c : fused) CHECK(c.lambda_g == 0.0);
  for (const auto& c : group) CHECK(c.lambda_f == 0.0);
  int zero_structural = 0;
  for (const auto& c : fused) zero_structural += c.lambda_f == 0.0;
  CHECK(zero_structural == 4);  // {0, 0.01, 0.05} per l11 x l12 cell
}

TEST_CASE("stratified folds partition rows and balance every level") {
  VectorXi y(23);
  for (int i = 0; i < 23; ++i) y[i] = i % 4;  // levels 0..3
  const auto folds = make_folds(y, 5, 42, true);
  REQUIRE(folds.size() == 5);

  std::vector<int> seen(23, 0);
  for (const auto& fold : folds)
    for (int idx : fold) {
      REQUIRE(idx >= 0);
      REQUIRE(idx < 23);
      ++seen[idx];
    }
  for (int c : seen) CHECK(c == 1);

  for (int level = 0; level <= 3; ++level) {
    int lo = 1 << 20, hi = 0;
    for (const auto& fold : folds) {
      int count = 0;
      for (int idx : fold) count += y[idx] == level;
      lo = std::min(lo, count);
      hi = std::max(hi, count);
    }
    CHECK(hi - lo <= 1);
  }
}

TEST_CASE("fold assignment is deterministic in the seed") {
  VectorXi y(30);
  for (int i = 0; i < 30; ++i) y[i] = i % 3;
  const auto a = make_folds(y, 4, 7, true);
  const auto b = make_folds(y, 4, 7, true);
  CHECK(a == b);
  const auto c = make_folds(y, 4, 8, true);
  CHECK(a != c);
}

TEST_CASE("make_folds rejects impossible requests") {
  VectorXi y(5);
  y << 0, 1, 2, 0, 1;
  CHECK_THROWS_AS(make_folds(y, 1, 0, true), std::invalid_argument);
  CHECK_THROWS_AS(make_folds(y, 6, 0, true), std::invalid_argument);
}

TEST_CASE("a hand-checkable four-row problem yields the log 2 cv error") {
  OrdinalDataset data;
  data.x.resize(4, 1);
  data.x << 1.0, 2.0, 3.0, 4.0;
  data.y.resize(4);
  data.y << 0, 2, 0, 2;
  data.k_max = 2;

  CvSpec spec;
  spec.folds = 2;
  spec.seed = 11;
  spec.grid = {{1e3, 1e3, 0.0, 0.0}};
  const CvResult res = kfold_cv(data, spec, SolverVariant::group);

  REQUIRE(res.heldout_nll.rows() == 1);
  REQUIRE(res.heldout_nll.cols() == 2);
  // Each held-out half carries one healthy row (-log 1/2) and one top-severity
  // row (-log 1/2 for screening, -log ~1 for severity), averaged over 2 rows.
  CHECK(std::fabs(res.mean_cv_error[0] - std::log(2.0)) < 1e-4);
  CHECK(std::fabs(res.heldout_nll(0, 0) - std::log(2.0)) < 1e-4);
  CHECK(std::fabs(res.heldout_nll(0, 1) - std::log(2.0)) < 1e-4);
  CHECK(res.selected_index == 0);
  CHECK(std::fabs(res.refit_original.alpha) < 1e-3);
  CHECK(res.refit_original.beta[0] == 0.0);

  // Severity level 1 never appears, so every fold leaves a note.
  REQUIRE(res.notes.size() == 2);
  CHECK(res.notes[0].find("severity-1") != std::string::npos);
  CHECK(res.notes[0].find("fold 0") != std::string::npos);
  CHECK(res.notes[1].find("fold 1") != std::string::npos);
}

TEST_CASE("training parts missing a class abort with the fold named") {
  OrdinalDataset data;
  data.x.resize(6, 1);
  data.x << 1, 2, 3, 4, 5, 6;
  data.y.resize(6);
  data.y << 0, 1, 1, 1, 1, 1;
  data.k_max = 2;

  CvSpec spec;
  spec.folds = 2;
  spec.seed = 3;
  spec.grid = {{0.01, 0.01, 0.0, 0.0}};
  try {
    kfold_cv(data, spec, SolverVariant::group);
    FAIL("expected a degenerate-fold failure");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("lacks a healthy class") != std::string::npos);
    CHECK(what.find("fold") != std::string::npos);
  }
}

TEST_CASE("cv rejects empty and incompatible grids") {
  ScenarioSpec sim;
  sim.scenario = Scenario::identical;
  sim.n = 60;
  sim.p = 18;
  sim.seed = 6;
  const OrdinalDataset data = generate(sim).first;

  CvSpec spec;
  spec.folds = 3;
  CHECK_THROWS_AS(kfold_cv(data, spec, SolverVariant::group), std::invalid_argument);

  spec.grid = {{0.01, 0.05, 0.02, 0.0}};
  CHECK_THROWS_AS(kfold_cv(data, spec, SolverVariant::group), std::invalid_argument);
  spec.grid = {{0.01, 0.05, 0.0, 0.02}};
  CHECK_THROWS_AS(kfold_cv(data, spec, SolverVariant::fused), std::invalid_argument);
}

TEST_CASE("full cv run returns coherent shapes and a sensible winner") {
  ScenarioSpec sim;
  sim.scenario = Scenario::identical;
  sim.n = 120;
  sim.p = 18;
  sim.rho = 0.2;
  sim.seed = 14;
  const OrdinalDataset data = generate(sim).first;

  CvSpec spec;
  spec.folds = 3;
  spec.seed = 2;
  spec.grid = {{0.01, 0.05, 0.0, 0.0}, {0.05, 0.1, 0.0, 0.0}, {1e3, 1e3, 0.0, 0.0}};
  const CvResult res = kfold_cv(data, spec, SolverVariant::fused);

  CHECK(res.heldout_nll.rows() == 3);
  CHECK(res.heldout_nll.cols() == 3);
  CHECK(res.mean_cv_error.size() == 3);
  for (int g = 0; g < 3; ++g)
    CHECK(res.mean_cv_error[g] == doctest::Approx(res.heldout_nll.row(g).mean()).epsilon(1e-14));
  CHECK(res.selected_index >= 0);
  CHECK(res.selected_index < 3);
  CHECK(res.selected_index != 2);  // the intercept-only extreme cannot win here
  CHECK(res.refit.params.beta.size() == 18);
  CHECK(res.refit_original.beta.size() == 18);
  CHECK(res.mean_cv_error[res.selected_index] == res.mean_cv_error.minCoeff());
}

TEST_CASE("baseline cv breaks exact ties toward the heavier penalty") {
  ScenarioSpec sim;
  sim.scenario = Scenario::identical;
  sim.n = 90;
  sim.p = 18;
  sim.seed = 25;
  const OrdinalDataset data = generate(sim).first;

  // Both penalties are far beyond the kill threshold, so the fits and the
  // held-out errors they produce are identical bit for bit.
  const BaselineCvResult res =
      kfold_cv_baseline(data, BaselineKind::logistic_l1, {1e5, 2e5}, 3, 9);
  CHECK(res.heldout_nll.row(0) == res.heldout_nll.row(1));
  CHECK(res.selected_lambda == 2e5);
}

TEST_CASE("baseline cv tunes and refits both reference methods") {
  ScenarioSpec sim;
  sim.scenario = Scenario::parallel;
  sim.n = 120;
  sim.p = 18;
  sim.seed = 33;
  const OrdinalDataset data = generate(sim).first;

  for (BaselineKind kind : {BaselineKind::logistic_l1, BaselineKind::clm_l1}) {
    const BaselineCvResult res =
        kfold_cv_baseline(data, kind, baseline_default_lambdas(), 3, 4);
    CHECK(res.heldout_nll.rows() == 3);
    CHECK(res.heldout_nll.cols() == 3);
    CHECK(res.selected_index >= 0);
    CHECK(res.refit.kind == kind);
    CHECK(res.refit.coefficients.size() == 18);
    CHECK(res.selected_lambda == baseline_default_lambdas()[res.selected_index]);
  }
}
