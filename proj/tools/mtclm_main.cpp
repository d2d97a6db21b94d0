#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "mtclm/cli.hpp"

namespace {

void add_admm_flags(CLI::App* cmd, mtclm::AdmmSettings& admm) {
  cmd->add_option("--mu-f", admm.mu_f, "fused-difference penalty parameter");
  cmd->add_option("--mu-1", admm.mu_1, "elementwise split penalty parameter");
  cmd->add_option("--max-iter", admm.max_iter, "ADMM iteration cap");
  cmd->add_option("--eps-abs", admm.eps_abs, "absolute stopping tolerance");
  cmd->add_option("--eps-rel", admm.eps_rel, "relative stopping tolerance");
}

int default_threads() {
  if (const char* env = std::getenv("MTCLM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-task cumulative linear models for screening and severity"};
  app.require_subcommand(1);

  mtclm::cli::FitOptions fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a model on a labeled csv");
  fit_cmd->add_option("--input", fit.input, "training csv")->required();
  fit_cmd->add_option("--label", fit.label, "label column name");
  fit_cmd->add_option("--k-max", fit.k_max, "largest severity level, -1 infers from data");
  fit_cmd->add_option("--method", fit.method,
                      "mtclm-l1|mtclm-fused|mtclm-group|logistic-l1|clm-l1");
  fit_cmd->add_option("--lambda11", fit.lambda11, "screening l1 weight");
  fit_cmd->add_option("--lambda12", fit.lambda12, "severity l1 weight");
  fit_cmd->add_option("--lambda-f", fit.lambda_f, "fused difference weight");
  fit_cmd->add_option("--lambda-g", fit.lambda_g, "group weight");
  fit_cmd->add_option("--lambda", fit.lambda, "baseline l1 weight");
  add_admm_flags(fit_cmd, fit.admm);
  fit_cmd->add_option("--inner-max-iter", fit.inner_max_iter, "smooth block iteration cap");
  fit_cmd->add_option("--inner-tol", fit.inner_tol, "smooth block gradient tolerance");
  fit_cmd->add_flag("--standardize,!--no-standardize", fit.standardize,
                    "standardize columns before fitting");
  fit_cmd->add_option("--out", fit.out, "model json path")->required();
  fit_cmd->add_option("--trace-out", fit.trace_out, "per-iteration trace csv");

  mtclm::cli::PredictOptions predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "score a csv with a saved model");
  predict_cmd->add_option("--model", predict.model, "model json path")->required();
  predict_cmd->add_option("--input", predict.input, "csv with the model's feature columns")
      ->required();
  predict_cmd->add_option("--threshold", predict.threshold, "screening threshold on P(y>=1)");
  predict_cmd->add_option("--out", predict.out, "prediction csv path")->required();

  mtclm::cli::CvOptions cv;
  CLI::App* cv_cmd = app.add_subcommand("cv", "cross-validate penalties and refit");
  cv_cmd->add_option("--input", cv.input, "training csv")->required();
  cv_cmd->add_option("--label", cv.label, "label column name");
  cv_cmd->add_option("--k-max", cv.k_max, "largest severity level, -1 infers from data");
  cv_cmd->add_option("--method", cv.method,
                     "mtclm-l1|mtclm-fused|mtclm-group|logistic-l1|clm-l1");
  cv_cmd->add_option("--folds", cv.folds, "fold count");
  cv_cmd->add_option("--seed", cv.seed, "fold assignment seed");
  cv_cmd->add_flag("--stratified,!--no-stratified", cv.stratified,
                   "stratify folds by severity level");
  cv_cmd->add_flag("--standardize,!--no-standardize", cv.standardize,
                   "standardize within each training part");
  cv_cmd->add_option("--lambda11-grid", cv.lambda11_grid, "screening l1 grid");
  cv_cmd->add_option("--lambda12-grid", cv.lambda12_grid, "severity l1 grid");
  cv_cmd->add_option("--structural-grid", cv.structural_grid, "fused or group weight grid");
  cv_cmd->add_option("--lambda-grid", cv.lambda_grid, "baseline l1 grid");
  add_admm_flags(cv_cmd, cv.admm);
  cv_cmd->add_option("--inner-max-iter", cv.inner_max_iter, "smooth block iteration cap");
  cv_cmd->add_option("--inner-tol", cv.inner_tol, "smooth block gradient tolerance");
  cv_cmd->add_option("--out-table", cv.out_table, "per-fold error csv");
  cv_cmd->add_option("--out-selected", cv.out_selected, "selected penalty json");
  cv_cmd->add_option("--out-model", cv.out_model, "refit model json");

  mtclm::cli::SimulateOptions sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "draw a synthetic screening dataset");
  sim_cmd->add_option("--scenario", sim.scenario,
                      "identical|almost-inverse|similar|almost-independent|parallel");
  sim_cmd->add_option("--n", sim.n, "observations");
  sim_cmd->add_option("--p", sim.p, "predictors");
  sim_cmd->add_option("--rho", sim.rho, "toeplitz correlation");
  sim_cmd->add_option("--seed", sim.seed, "rng seed");
  sim_cmd->add_option("--coef-mode", sim.coef_mode, "uniform|fixed magnitudes");
  sim_cmd->add_option("--fixed-magnitude", sim.fixed_magnitude,
                      "magnitude used by --coef-mode fixed");
  sim_cmd->add_flag("--retain-latent", sim.retain_latent,
                    "include latent coefficients in the truth json");
  sim_cmd->add_option("--out", sim.out, "dataset csv path")->required();
  sim_cmd->add_option("--truth-out", sim.truth_out, "ground truth json path");

  mtclm::cli::BenchOptions bench;
  bench.threads = default_threads();
  CLI::App* bench_cmd = app.add_subcommand("bench", "replicate scenarios and score methods");
  bench_cmd->add_option("--scenarios", bench.scenarios, "scenario names")->required();
  bench_cmd->add_option("--methods", bench.methods, "method names")->required();
  bench_cmd->add_option("--replicates", bench.replicates, "replicates per scenario");
  bench_cmd->add_option("--n", bench.n, "training observations");
  bench_cmd->add_option("--p", bench.p, "predictors");
  bench_cmd->add_option("--rho", bench.rho, "toeplitz correlation");
  bench_cmd->add_option("--coef-mode", bench.coef_mode, "uniform|fixed magnitudes");
  bench_cmd->add_option("--fixed-magnitude", bench.fixed_magnitude,
                        "magnitude used by --coef-mode fixed");
  bench_cmd->add_option("--seed", bench.seed, "base seed");
  bench_cmd->add_option("--folds", bench.folds, "cv folds per fit");
  bench_cmd->add_option("--threads", bench.threads, "worker threads");
  bench_cmd->add_option("--out", bench.out, "result csv path")->required();

  mtclm::cli::TraceOptions trace;
  CLI::App* trace_cmd = app.add_subcommand("trace", "record solver diagnostics on synthetic data");
  trace_cmd->add_option("--method", trace.method, "mtclm-l1|mtclm-fused|mtclm-group");
  trace_cmd->add_option("--n", trace.n, "observations");
  trace_cmd->add_option("--p", trace.p, "predictors");
  trace_cmd->add_option("--rho", trace.rho, "toeplitz correlation");
  trace_cmd->add_option("--seed", trace.seed, "rng seed");
  trace_cmd->add_option("--lambda11", trace.lambda11, "screening l1 weight");
  trace_cmd->add_option("--lambda12", trace.lambda12, "severity l1 weight");
  trace_cmd->add_option("--lambda-structural", trace.lambda_structural,
                        "fused or group weight");
  trace_cmd->add_option("--mu", trace.mu, "augmented penalty parameter");
  trace_cmd->add_option("--max-iter", trace.max_iter, "ADMM iteration cap");
  trace_cmd->add_flag("--standardize,!--no-standardize", trace.standardize,
                      "standardize columns before fitting");
  trace_cmd->add_option("--out", trace.out, "trace csv path")->required();

  CLI11_PARSE(app, argc, argv);

  if (fit_cmd->parsed()) return mtclm::cli::run_fit(fit);
  if (predict_cmd->parsed()) return mtclm::cli::run_predict(predict);
  if (cv_cmd->parsed()) return mtclm::cli::run_cv(cv);
  if (sim_cmd->parsed()) return mtclm::cli::run_simulate(sim);
  if (bench_cmd->parsed()) return mtclm::cli::run_bench_cmd(bench);
  if (trace_cmd->parsed()) return mtclm::cli::run_trace(trace);
  return 2;
}
