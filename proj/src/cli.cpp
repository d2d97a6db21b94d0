#include "mtclm/cli.hpp"

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "mtclm/io.hpp"
#include "mtclm/predict.hpp"

namespace mtclm::cli {

using nlohmann::json;

namespace {

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

SmoothSolveSettings smooth_settings(int max_inner_iter, double grad_tol) {
  SmoothSolveSettings s;
  s.max_inner_iter = max_inner_iter;
  s.grad_tol = grad_tol;
  return s;
}

void check_method_penalty(const std::string& method, const PenaltyConfig& penalty) {
  if (method == "mtclm-l1" && (penalty.lambda_f > 0 || penalty.lambda_g > 0))
    throw std::invalid_argument("mtclm-l1 forbids structural penalties");
  if (method == "mtclm-fused" && penalty.lambda_g > 0)
    throw std::invalid_argument("mtclm-fused forbids lambda_g > 0");
  if (method == "mtclm-group" && penalty.lambda_f > 0)
    throw std::invalid_argument("mtclm-group forbids lambda_f > 0");
}

bool is_mtclm(const std::string& method) { return method.rfind("mtclm", 0) == 0; }

CsvDataset load_labeled_csv(const std::string& path, const std::string& label, int k_max,
                            bool for_mtclm) {
  CsvDataset csv = read_dataset_csv(path, label, k_max);
  for (Eigen::Index i = 0; i < csv.data.y.size(); ++i) {
    if (csv.data.y[i] < 0 || csv.data.y[i] > csv.data.k_max)
      throw std::invalid_argument("row " + std::to_string(i + 2) + ": label " +
                                  std::to_string(csv.data.y[i]) + " outside {0.." +
                                  std::to_string(csv.data.k_max) + "}");
  }
  if (for_mtclm)
    validate_dataset(csv.data);
  else if (csv.data.k_max < 1)
    throw std::invalid_argument("labels must span at least two values");
  return csv;
}

// Generic numeric table, used by predict where the label column is optional.
struct CsvTable {
  std::vector<std::string> columns;
  MatrixXd values;
};

CsvTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError("csv line 1: empty file " + path);
  CsvTable table;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      table.columns.push_back(cell);
    }
  }
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size() && cell.find_first_not_of(" \r", used) != std::string::npos)
          throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw CsvError("csv line " + std::to_string(line_no) + ": not numeric: '" + cell + "'");
      }
    }
    if (row.size() != table.columns.size())
      throw CsvError("csv line " + std::to_string(line_no) + ": expected " +
                     std::to_string(table.columns.size()) + " cells");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError("csv: no data rows in " + path);
  table.values.resize(rows.size(), table.columns.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) table.values(i, j) = rows[i][j];
  return table;
}

}  // namespace

int run_fit(const FitOptions& options) {
  return guarded([&] {
    const PenaltyConfig penalty{options.lambda11, options.lambda12, options.lambda_f,
                                options.lambda_g};
    const bool mtclm_method = is_mtclm(options.method);
    if (mtclm_method) {
      validate_penalty(penalty);
      check_method_penalty(options.method, penalty);
    } else if (options.method != "logistic-l1" && options.method != "clm-l1") {
      throw std::invalid_argument("unknown method: " + options.method);
    }

    CsvDataset csv = load_labeled_csv(options.input, options.label, options.k_max, mtclm_method);
    OrdinalDataset fit_data = csv.data;
    StandardizeRecord rec{VectorXd::Zero(csv.data.x.cols()), VectorXd::Ones(csv.data.x.cols())};
    if (options.standardize) {
      auto [std_data, record] = standardize(csv.data);
      fit_data = std::move(std_data);
      rec = std::move(record);
    }

    ModelArtifact artifact;
    artifact.method = options.method;
    artifact.k_max = csv.data.k_max;
    artifact.label_name = csv.label_name;
    artifact.feature_names = csv.feature_names;
    artifact.standardized = options.standardize;
    artifact.record = rec;
    artifact.penalty = penalty;
    artifact.admm = options.admm;
    artifact.smooth = smooth_settings(options.inner_max_iter, options.inner_tol);

    if (mtclm_method) {
      FitResult fit;
      if (options.method == "mtclm-fused")
        fit = fit_fused(fit_data, penalty, options.admm, artifact.smooth);
      else
        fit = fit_group(fit_data, penalty, options.admm, artifact.smooth);
      artifact.mtclm = fit.params;
      artifact.mtclm_original =
          options.standardize ? to_original_scale(fit.params, rec) : fit.params;
      artifact.converged = fit.converged;
      artifact.iterations = fit.iterations;
      artifact.objective = objective_value(fit_data, fit.params, penalty);
      artifact.primal_residual = fit.final_primal_residual;
      artifact.dual_residual = fit.final_dual_residual;
      if (!fit.converged) {
        artifact.notes.push_back("did not converge within max_iter");
        std::cerr << "warning: ADMM did not converge within " << options.admm.max_iter
                  << " iterations\n";
      }
      if (!options.trace_out.empty()) write_trace_csv(options.trace_out, fit);
    } else {
      const BaselineFit fit = options.method == "logistic-l1"
                                  ? fit_logistic_l1(fit_data, options.lambda)
                                  : fit_clm_l1(fit_data, options.lambda);
      artifact.baseline = fit;
      artifact.baseline_original =
          options.standardize ? baseline_to_original_scale(fit, rec) : fit;
      artifact.converged = fit.converged;
      artifact.iterations = fit.iterations;
      artifact.objective = fit.objective;
      if (options.method == "logistic-l1") artifact.k_max = 1;
      if (!options.trace_out.empty())
        throw std::invalid_argument("--trace-out is only available for mtclm methods");
    }

    if (options.out.empty()) throw std::invalid_argument("--out is required");
    save_model(options.out, artifact);
    std::cout << "fit " << options.method << ": converged=" << (artifact.converged ? "yes" : "no")
              << " iterations=" << artifact.iterations << " objective=" << artifact.objective
              << " -> " << options.out << "\n";
  });
}

int run_predict(const PredictOptions& options) {
  return guarded([&] {
    const ModelArtifact artifact = load_model(options.model);
    const CsvTable table = read_table_csv(options.input);

    MatrixXd x(table.values.rows(), artifact.feature_names.size());
    for (size_t j = 0; j < artifact.feature_names.size(); ++j) {
      const auto it = std::find(table.columns.begin(), table.columns.end(),
                                artifact.feature_names[j]);
      if (it == table.columns.end())
        throw std::invalid_argument("input is missing feature column '" +
                                    artifact.feature_names[j] + "'");
      x.col(j) = table.values.col(it - table.columns.begin());
    }

    MatrixXd proba;
    if (artifact.mtclm_original) {
      proba = predict_proba(*artifact.mtclm_original, x);
    } else if (artifact.baseline_original) {
      if (artifact.baseline_original->kind == BaselineKind::clm_l1) {
        proba = clm_predict_proba(artifact.baseline_original->intercepts,
                                  artifact.baseline_original->coefficients, x);
      } else {
        const VectorXd p0 = baseline_healthy_proba(*artifact.baseline_original, x);
        proba.resize(x.rows(), 2);
        proba.col(0) = p0;
        proba.col(1) = 1.0 - p0.array();
      }
    } else {
      throw std::runtime_error("model file carries no parameters");
    }

    const VectorXi cls = argmax_class(proba);
    std::ofstream out(options.out);
    if (!out) throw std::runtime_error("cannot open " + options.out + " for writing");
    out.precision(17);
    out << "row";
    for (Eigen::Index c = 0; c < proba.cols(); ++c) out << ",p" << c;
    out << ",screen,class\n";
    for (Eigen::Index i = 0; i < proba.rows(); ++i) {
      out << i;
      for (Eigen::Index c = 0; c < proba.cols(); ++c) out << "," << proba(i, c);
      const int screen = (1.0 - proba(i, 0)) >= options.threshold ? 1 : 0;
      out << "," << screen << "," << cls[i] << "\n";
    }
    std::cout << "predicted " << proba.rows() << " rows -> " << options.out << "\n";
  });
}

int run_cv(const CvOptions& options) {
  return guarded([&] {
    const bool mtclm_method = is_mtclm(options.method);
    CsvDataset csv = load_labeled_csv(options.input, options.label, options.k_max, mtclm_method);
    const SmoothSolveSettings smooth = smooth_settings(options.inner_max_iter, options.inner_tol);

    json selected_json;
    ModelArtifact artifact;
    artifact.method = options.method;
    artifact.k_max = csv.data.k_max;
    artifact.label_name = csv.label_name;
    artifact.feature_names = csv.feature_names;
    artifact.standardized = options.standardize;
    artifact.admm = options.admm;
    artifact.smooth = smooth;

    if (mtclm_method) {
      const GridKind kind = options.method == "mtclm-l1"      ? GridKind::l1
                            : options.method == "mtclm-fused" ? GridKind::l1_fused
                                                              : GridKind::l1_group;
      CvSpec spec;
      spec.folds = options.folds;
      spec.seed = options.seed;
      spec.stratified = options.stratified;
      spec.standardize_fits = options.standardize;
      if (options.lambda11_grid.empty() && options.lambda12_grid.empty() &&
          options.structural_grid.empty()) {
        spec.grid = default_grid(kind);
      } else {
        const auto l11 = options.lambda11_grid.empty() ? std::vector<double>{0.01, 0.05}
                                                       : options.lambda11_grid;
        const auto l12 = options.lambda12_grid.empty() ? std::vector<double>{0.05, 0.1}
                                                       : options.lambda12_grid;
        auto structural = options.structural_grid;
        if (structural.empty())
          structural = kind == GridKind::l1 ? std::vector<double>{0.0}
                                            : std::vector<double>{0.0, 0.01, 0.05};
        for (double a : l11)
          for (double b : l12)
            for (double s : structural) {
              if (kind == GridKind::l1 && s != 0.0)
                throw std::invalid_argument("mtclm-l1 forbids structural penalties");
              spec.grid.push_back({a, b, kind == GridKind::l1_fused ? s : 0.0,
                                   kind == GridKind::l1_group ? s : 0.0});
            }
      }
      const SolverVariant variant =
          options.method == "mtclm-fused" ? SolverVariant::fused : SolverVariant::group;
      const CvResult res = kfold_cv(csv.data, spec, variant, options.admm, smooth);

      if (!options.out_table.empty()) {
        std::ofstream table(options.out_table);
        if (!table) throw std::runtime_error("cannot open " + options.out_table);
        table.precision(17);
        table << "lambda11,lambda12,lambda_f,lambda_g,fold,heldout_nll\n";
        for (Eigen::Index g = 0; g < res.heldout_nll.rows(); ++g)
          for (Eigen::Index f = 0; f < res.heldout_nll.cols(); ++f)
            table << spec.grid[g].lambda11 << "," << spec.grid[g].lambda12 << ","
                  << spec.grid[g].lambda_f << "," << spec.grid[g].lambda_g << "," << f << ","
                  << res.heldout_nll(g, f) << "\n";
      }

      selected_json = json{{"lambda11", res.selected.lambda11},
                           {"lambda12", res.selected.lambda12},
                           {"lambda_f", res.selected.lambda_f},
                           {"lambda_g", res.selected.lambda_g},
                           {"mean_cv_error", res.mean_cv_error[res.selected_index]},
                           {"notes", res.notes}};

      artifact.record = res.refit_record;
      artifact.penalty = res.selected;
      artifact.mtclm = res.refit.params;
      artifact.mtclm_original = res.refit_original;
      artifact.converged = res.refit.converged;
      artifact.iterations = res.refit.iterations;
      artifact.objective = res.refit.objective_trace.empty() ? 0.0 : res.refit.objective_trace.back();
      artifact.primal_residual = res.refit.final_primal_residual;
      artifact.dual_residual = res.refit.final_dual_residual;
      artifact.notes = res.notes;
      std::cout << "cv selected lambda11=" << res.selected.lambda11
                << " lambda12=" << res.selected.lambda12 << " lambda_f=" << res.selected.lambda_f
                << " lambda_g=" << res.selected.lambda_g << "\n";
    } else {
      const BaselineKind kind = options.method == "logistic-l1" ? BaselineKind::logistic_l1
                                                                : BaselineKind::clm_l1;
      const auto lambdas =
          options.lambda_grid.empty() ? baseline_default_lambdas() : options.lambda_grid;
      const BaselineCvResult res =
          kfold_cv_baseline(csv.data, kind, lambdas, options.folds, options.seed,
                            options.stratified, options.standardize);
      if (!options.out_table.empty()) {
        std::ofstream table(options.out_table);
        if (!table) throw std::runtime_error("cannot open " + options.out_table);
        table.precision(17);
        table << "lambda,fold,heldout_nll\n";
        for (Eigen::Index g = 0; g < res.heldout_nll.rows(); ++g)
          for (Eigen::Index f = 0; f < res.heldout_nll.cols(); ++f)
            table << lambdas[g] << "," << f << "," << res.heldout_nll(g, f) << "\n";
      }
      selected_json = json{{"lambda", res.selected_lambda},
                           {"mean_cv_error", res.mean_cv_error[res.selected_index]},
                           {"notes", res.notes}};
      artifact.record = res.refit_record;
      artifact.baseline = res.refit;
      artifact.baseline_original = res.refit_original;
      artifact.converged = res.refit.converged;
      artifact.iterations = res.refit.iterations;
      artifact.objective = res.refit.objective;
      artifact.notes = res.notes;
      if (options.method == "logistic-l1") artifact.k_max = 1;
      std::cout << "cv selected lambda=" << res.selected_lambda << "\n";
    }

    if (!options.out_selected.empty()) {
      std::ofstream out(options.out_selected);
      if (!out) throw std::runtime_error("cannot open " + options.out_selected);
      out << selected_json.dump(2) << "\n";
    }
    if (!options.out_model.empty()) save_model(options.out_model, artifact);
  });
}

int run_simulate(const SimulateOptions& options) {
  return guarded([&] {
    ScenarioSpec spec;
    spec.scenario = scenario_from_string(options.scenario);
    spec.n = options.n;
    spec.p = options.p;
    spec.rho = options.rho;
    spec.seed = options.seed;
    spec.retain_latent = options.retain_latent;
    spec.coef_magnitude = coef_magnitude_from_string(options.coef_mode);
    spec.fixed_magnitude = options.fixed_magnitude;

    const auto [data, truth] = generate(spec);
    if (options.out.empty()) throw std::invalid_argument("--out is required");
    std::vector<std::string> names;
    for (int j = 1; j <= spec.p; ++j) names.push_back("x" + std::to_string(j));
    write_dataset_csv(options.out, data, "y", names);
    if (!options.truth_out.empty()) write_ground_truth_json(options.truth_out, spec, truth);
    std::cout << "simulated " << to_string(spec.scenario) << " n=" << spec.n << " p=" << spec.p
              << " -> " << options.out << "\n";
  });
}

int run_bench_cmd(const BenchOptions& options) {
  return guarded([&] {
    BenchConfig config;
    for (const auto& s : options.scenarios) config.scenarios.push_back(scenario_from_string(s));
    for (const auto& m : options.methods) config.methods.push_back(method_from_string(m));
    config.replicates = options.replicates;
    config.n = options.n;
    config.p = options.p;
    config.rho = options.rho;
    config.coef_magnitude = coef_magnitude_from_string(options.coef_mode);
    config.fixed_magnitude = options.fixed_magnitude;
    config.seed = options.seed;
    config.folds = options.folds;
    config.threads = options.threads;
    const auto rows = run_bench(config);
    if (options.out.empty()) throw std::invalid_argument("--out is required");
    write_bench_csv(options.out, rows);
    std::cout << "bench wrote " << rows.size() << " rows -> " << options.out << "\n";
  });
}

int run_trace(const TraceOptions& options) {
  return guarded([&] {
    ScenarioSpec spec;
    spec.scenario = Scenario::similar;
    spec.n = options.n;
    spec.p = options.p;
    spec.rho = options.rho;
    spec.seed = options.seed;
    auto [data, truth] = generate(spec);
    (void)truth;
    if (options.standardize) data = standardize(data).first;

    PenaltyConfig penalty;
    penalty.lambda11 = options.lambda11;
    penalty.lambda12 = options.lambda12;
    AdmmSettings admm;
    admm.mu_f = options.mu;
    admm.mu_1 = options.mu;
    admm.max_iter = options.max_iter;

    FitResult fit;
    if (options.method == "mtclm-fused") {
      penalty.lambda_f = options.lambda_structural;
      fit = fit_fused(data, penalty, admm);
    } else if (options.method == "mtclm-group") {
      penalty.lambda_g = options.lambda_structural;
      fit = fit_group(data, penalty, admm);
    } else if (options.method == "mtclm-l1") {
      fit = fit_group(data, penalty, admm);
    } else {
      throw std::invalid_argument("trace supports only the mtclm methods");
    }
    if (options.out.empty()) throw std::invalid_argument("--out is required");
    write_trace_csv(options.out, fit);
    std::cout << "trace " << options.method << ": " << fit.iterations
              << " iterations, converged=" << (fit.converged ? "yes" : "no") << " -> "
              << options.out << "\n";
  });
}

}  // namespace mtclm::cli
