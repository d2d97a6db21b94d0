#include "mtclm/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mtclm {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    size_t start = 0;
    while (start < cell.size() && cell[start] == ' ') ++start;
    cells.push_back(cell.substr(start));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_double(const std::string& cell, int line_no, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
    throw CsvError("csv line " + std::to_string(line_no) + ": column '" + column +
                   "' is not numeric: '" + cell + "'");
  return v;
}

int parse_label(const std::string& cell, int line_no, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(cell.c_str(), &end, 10);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
    throw CsvError("csv line " + std::to_string(line_no) + ": label column '" + column +
                   "' must be an integer: '" + cell + "'");
  return static_cast<int>(v);
}

}  // namespace

CsvDataset read_dataset_csv(const std::string& path, const std::string& label,
                            int k_max_override) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError("csv line 1: empty file " + path);
  const auto header = split_csv_line(line);
  int label_col = -1;
  CsvDataset out;
  out.label_name = label;
  for (size_t c = 0; c < header.size(); ++c) {
    if (header[c] == label) {
      if (label_col >= 0) throw CsvError("csv line 1: duplicate label column '" + label + "'");
      label_col = static_cast<int>(c);
    } else {
      out.feature_names.push_back(header[c]);
    }
  }
  if (label_col < 0) throw CsvError("csv line 1: label column '" + label + "' not found");
  if (out.feature_names.empty()) throw CsvError("csv line 1: no predictor columns");

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw CsvError("csv line " + std::to_string(line_no) + ": expected " +
                     std::to_string(header.size()) + " cells, got " +
                     std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(header.size() - 1);
    for (size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<int>(c) == label_col)
        labels.push_back(parse_label(cells[c], line_no, header[c]));
      else
        row.push_back(parse_double(cells[c], line_no, header[c]));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError("csv: no data rows in " + path);

  out.data.x.resize(rows.size(), out.feature_names.size());
  out.data.y.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) out.data.x(i, j) = rows[i][j];
    out.data.y[i] = labels[i];
  }
  out.data.k_max = k_max_override > 0 ? k_max_override : out.data.y.maxCoeff();
  return out;
}

void write_dataset_csv(const std::string& path, const OrdinalDataset& data,
                       const std::string& label,
                       const std::vector<std::string>& feature_names) {
  std::ofstream out(path);
  if (!out) throw CsvError("cannot open " + path + " for writing");
  out.precision(17);
  for (size_t j = 0; j < feature_names.size(); ++j) out << feature_names[j] << ",";
  out << label << "\n";
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) out << data.x(i, j) << ",";
    out << data.y[i] << "\n";
  }
}

namespace {

json vec_to_json(const VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

VectorXd vec_from_json(const json& arr) {
  VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

json params_to_json(const MtclmParams& params) {
  return json{{"alpha", params.alpha},
              {"beta", vec_to_json(params.beta)},
              {"zeta", vec_to_json(params.zeta)},
              {"gamma", vec_to_json(params.gamma)}};
}

MtclmParams params_from_json(const json& j) {
  MtclmParams params;
  params.alpha = j.at("alpha").get<double>();
  params.beta = vec_from_json(j.at("beta"));
  params.zeta = vec_from_json(j.at("zeta"));
  params.gamma = vec_from_json(j.at("gamma"));
  return params;
}

json baseline_to_json(const BaselineFit& fit) {
  return json{{"kind", fit.kind == BaselineKind::logistic_l1 ? "logistic_l1" : "clm_l1"},
              {"intercepts", vec_to_json(fit.intercepts)},
              {"coefficients", vec_to_json(fit.coefficients)},
              {"lambda", fit.lambda},
              {"converged", fit.converged},
              {"iterations", fit.iterations},
              {"objective", fit.objective},
              {"kkt_gap", fit.kkt_gap}};
}

BaselineFit baseline_from_json(const json& j) {
  BaselineFit fit;
  fit.kind = j.at("kind").get<std::string>() == "logistic_l1" ? BaselineKind::logistic_l1
                                                              : BaselineKind::clm_l1;
  fit.intercepts = vec_from_json(j.at("intercepts"));
  fit.coefficients = vec_from_json(j.at("coefficients"));
  fit.lambda = j.at("lambda").get<double>();
  fit.converged = j.at("converged").get<bool>();
  fit.iterations = j.at("iterations").get<int>();
  fit.objective = j.at("objective").get<double>();
  fit.kkt_gap = j.at("kkt_gap").get<double>();
  return fit;
}

json selected_variables(const ModelArtifact& artifact) {
  json arr = json::array();
  auto add = [&](const VectorXd& coef, const std::string& task) {
    for (Eigen::Index j = 0; j < coef.size(); ++j) {
      if (coef[j] != 0.0)
        arr.push_back(json{{"feature", artifact.feature_names[j]},
                           {"task", task},
                           {"value", coef[j]}});
    }
  };
  if (artifact.mtclm_original) {
    add(artifact.mtclm_original->beta, "screening");
    add(artifact.mtclm_original->gamma, "severity");
  } else if (artifact.baseline_original) {
    add(artifact.baseline_original->coefficients,
        artifact.baseline_original->kind == BaselineKind::logistic_l1 ? "screening" : "ordinal");
  }
  return arr;
}

}  // namespace

void save_model(const std::string& path, const ModelArtifact& artifact) {
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["method"] = artifact.method;
  j["k_max"] = artifact.k_max;
  j["label"] = artifact.label_name;
  j["features"] = artifact.feature_names;
  j["standardize"] = json{{"enabled", artifact.standardized},
                          {"mean", vec_to_json(artifact.record.mean)},
                          {"scale", vec_to_json(artifact.record.scale)}};
  j["penalty"] = json{{"lambda11", artifact.penalty.lambda11},
                      {"lambda12", artifact.penalty.lambda12},
                      {"lambda_f", artifact.penalty.lambda_f},
                      {"lambda_g", artifact.penalty.lambda_g}};
  j["admm"] = json{{"mu_f", artifact.admm.mu_f},
                   {"mu_1", artifact.admm.mu_1},
                   {"max_iter", artifact.admm.max_iter},
                   {"eps_abs", artifact.admm.eps_abs},
                   {"eps_rel", artifact.admm.eps_rel}};
  j["smooth"] = json{{"max_inner_iter", artifact.smooth.max_inner_iter},
                     {"grad_tol", artifact.smooth.grad_tol}};
  j["diagnostics"] = json{{"converged", artifact.converged},
                          {"iterations", artifact.iterations},
                          {"objective", artifact.objective},
                          {"primal_residual", artifact.primal_residual},
                          {"dual_residual", artifact.dual_residual},
                          {"notes", artifact.notes}};
  if (artifact.mtclm) {
    j["params"] = params_to_json(*artifact.mtclm);
    j["params_original"] = params_to_json(*artifact.mtclm_original);
  }
  if (artifact.baseline) {
    j["baseline"] = baseline_to_json(*artifact.baseline);
    j["baseline_original"] = baseline_to_json(*artifact.baseline_original);
  }
  j["selected"] = selected_variables(artifact);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("model file " + path + " is not valid json: " + e.what());
  }
  if (j.at("schema_version").get<int>() != kModelSchemaVersion)
    throw std::runtime_error("model file " + path + ": unsupported schema version");

  ModelArtifact artifact;
  artifact.method = j.at("method").get<std::string>();
  artifact.k_max = j.at("k_max").get<int>();
  artifact.label_name = j.at("label").get<std::string>();
  artifact.feature_names = j.at("features").get<std::vector<std::string>>();
  artifact.standardized = j.at("standardize").at("enabled").get<bool>();
  artifact.record.mean = vec_from_json(j.at("standardize").at("mean"));
  artifact.record.scale = vec_from_json(j.at("standardize").at("scale"));
  const auto& pen = j.at("penalty");
  artifact.penalty = PenaltyConfig{pen.at("lambda11").get<double>(),
                                   pen.at("lambda12").get<double>(),
                                   pen.at("lambda_f").get<double>(),
                                   pen.at("lambda_g").get<double>()};
  const auto& adm = j.at("admm");
  artifact.admm.mu_f = adm.at("mu_f").get<double>();
  artifact.admm.mu_1 = adm.at("mu_1").get<double>();
  artifact.admm.max_iter = adm.at("max_iter").get<int>();
  artifact.admm.eps_abs = adm.at("eps_abs").get<double>();
  artifact.admm.eps_rel = adm.at("eps_rel").get<double>();
  artifact.smooth.max_inner_iter = j.at("smooth").at("max_inner_iter").get<int>();
  artifact.smooth.grad_tol = j.at("smooth").at("grad_tol").get<double>();
  const auto& diag = j.at("diagnostics");
  artifact.converged = diag.at("converged").get<bool>();
  artifact.iterations = diag.at("iterations").get<int>();
  artifact.objective = diag.at("objective").get<double>();
  artifact.primal_residual = diag.at("primal_residual").get<double>();
  artifact.dual_residual = diag.at("dual_residual").get<double>();
  artifact.notes = diag.at("notes").get<std::vector<std::string>>();
  if (j.contains("params")) {
    artifact.mtclm = params_from_json(j.at("params"));
    artifact.mtclm_original = params_from_json(j.at("params_original"));
  }
  if (j.contains("baseline")) {
    artifact.baseline = baseline_from_json(j.at("baseline"));
    artifact.baseline_original = baseline_from_json(j.at("baseline_original"));
  }
  return artifact;
}

void write_ground_truth_json(const std::string& path, const ScenarioSpec& spec,
                             const GroundTruth& truth) {
  json j;
  j["schema_version"] = 1;
  j["spec"] = json{{"scenario", to_string(spec.scenario)},
                   {"n", spec.n},
                   {"p", spec.p},
                   {"rho", spec.rho},
                   {"seed", spec.seed},
                   {"coef_magnitude",
                    spec.coef_magnitude == CoefMagnitude::fixed ? "fixed" : "uniform_075_125"},
                   {"fixed_magnitude", spec.fixed_magnitude}};
  j["beta_true"] = vec_to_json(truth.beta_true);
  j["gamma_true"] = vec_to_json(truth.gamma_true);
  json beta_support = json::array(), gamma_support = json::array();
  for (Eigen::Index i = 0; i < truth.beta_true.size(); ++i) {
    if (truth.beta_true[i] != 0.0) beta_support.push_back(i);
    if (truth.gamma_true[i] != 0.0) gamma_support.push_back(i);
  }
  j["beta_support"] = beta_support;
  j["gamma_support"] = gamma_support;
  j["screen_threshold"] = truth.screen_threshold;
  j["severity_thresholds"] = vec_to_json(truth.severity_thresholds);
  if (truth.latent_screen.size() > 0) j["latent_screen"] = vec_to_json(truth.latent_screen);
  if (truth.latent_severity.size() > 0) j["latent_severity"] = vec_to_json(truth.latent_severity);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

void write_trace_csv(const std::string& path, const FitResult& fit) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "iteration,objective,aug_lagrangian,primal_residual,dual_residual\n";
  for (size_t t = 0; t < fit.objective_trace.size(); ++t) {
    out << t + 1 << "," << fit.objective_trace[t] << "," << fit.aug_lagrangian_trace[t] << ","
        << fit.primal_residual_trace[t] << "," << fit.dual_residual_trace[t] << "\n";
  }
}

}  // namespace mtclm
