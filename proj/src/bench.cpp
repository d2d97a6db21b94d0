#include "mtclm/bench.hpp"

#include <atomic>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "mtclm/metrics.hpp"
#include "mtclm/predict.hpp"

namespace mtclm {

std::string to_string(Method method) {
  switch (method) {
    case Method::mtclm_l1: return "mtclm-l1";
    case Method::mtclm_fused: return "mtclm-fused";
    case Method::mtclm_group: return "mtclm-group";
    case Method::logistic_l1: return "logistic-l1";
    case Method::clm_l1: return "clm-l1";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "mtclm-l1") return Method::mtclm_l1;
  if (name == "mtclm-fused") return Method::mtclm_fused;
  if (name == "mtclm-group") return Method::mtclm_group;
  if (name == "logistic-l1") return Method::logistic_l1;
  if (name == "clm-l1") return Method::clm_l1;
  throw std::invalid_argument("unknown method: " + name);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t tuple_seed(std::uint64_t base, int scenario, int replicate, int stream) {
  std::uint64_t z = base;
  z = splitmix64(z ^ (static_cast<std::uint64_t>(scenario) << 32));
  z = splitmix64(z ^ (static_cast<std::uint64_t>(replicate) << 16));
  z = splitmix64(z ^ static_cast<std::uint64_t>(stream));
  return z;
}

double tau_or_zero(const VectorXi& predicted, const VectorXi& truth) {
  try {
    return kendall_tau(predicted, truth);
  } catch (const std::invalid_argument&) {
    return 0.0;  // a constant prediction carries no ordinal association
  }
}

struct Task {
  Scenario scenario;
  Method method;
  int replicate;
};

std::vector<BenchRow> run_tuple(const BenchConfig& config, const Task& task) {
  const int scen_idx = static_cast<int>(task.scenario);
  ScenarioSpec spec;
  spec.scenario = task.scenario;
  spec.n = config.n;
  spec.p = config.p;
  spec.rho = config.rho;
  spec.coef_magnitude = config.coef_magnitude;
  spec.fixed_magnitude = config.fixed_magnitude;

  spec.seed = tuple_seed(config.seed, scen_idx, task.replicate, 0);
  auto [train, truth] = generate(spec);
  spec.seed = tuple_seed(config.seed, scen_idx, task.replicate, 1);
  const OrdinalDataset test = generate(spec).first;
  const std::uint64_t cv_seed = tuple_seed(config.seed, scen_idx, task.replicate, 2);

  const VectorXi screen_truth =
      test.y.unaryExpr([](int y) { return y >= 1 ? 1 : 0; });

  std::vector<BenchRow> rows;
  auto emit = [&](const std::string& metric, double value) {
    rows.push_back({to_string(task.scenario), to_string(task.method), task.replicate, metric, value});
  };
  auto emit_screen_and_class = [&](const MatrixXd& proba, bool with_class) {
    const VectorXd score = 1.0 - proba.col(0).array();
    VectorXi screen_pred(score.size());
    for (Eigen::Index i = 0; i < score.size(); ++i) screen_pred[i] = score[i] >= 0.5 ? 1 : 0;
    emit("auc", roc_auc(score, screen_truth));
    emit("f1", f1_score(screen_pred, screen_truth));
    if (!with_class) return;
    const VectorXi cls = argmax_class(proba);
    emit("accuracy", accuracy(cls, test.y));
    emit("mae", mean_absolute_error(cls, test.y));
    emit("kendall_tau", tau_or_zero(cls, test.y));
  };

  switch (task.method) {
    case Method::mtclm_l1:
    case Method::mtclm_fused:
    case Method::mtclm_group: {
      const GridKind kind = task.method == Method::mtclm_l1      ? GridKind::l1
                            : task.method == Method::mtclm_fused ? GridKind::l1_fused
                                                                 : GridKind::l1_group;
      const SolverVariant variant =
          task.method == Method::mtclm_fused ? SolverVariant::fused : SolverVariant::group;
      CvSpec cv;
      cv.folds = config.folds;
      cv.grid = default_grid(kind);
      cv.seed = cv_seed;
      CvResult res = kfold_cv(train, cv, variant, config.admm, config.smooth);
      emit_screen_and_class(predict_proba(res.refit_original, test.x), true);
      const SelectionMetrics sel = selection_metrics(res.refit.params.beta, res.refit.params.gamma,
                                                     truth.beta_true, truth.gamma_true);
      emit("power", sel.power);
      emit("fdr", sel.fdr);
      break;
    }
    case Method::clm_l1: {
      BaselineCvResult res = kfold_cv_baseline(train, BaselineKind::clm_l1,
                                               baseline_default_lambdas(), config.folds, cv_seed,
                                               true, true, config.baseline_settings);
      emit_screen_and_class(clm_predict_proba(res.refit_original.intercepts,
                                              res.refit_original.coefficients, test.x),
                            true);
      break;
    }
    case Method::logistic_l1: {
      BaselineCvResult res = kfold_cv_baseline(train, BaselineKind::logistic_l1,
                                               baseline_default_lambdas(), config.folds, cv_seed,
                                               true, true, config.baseline_settings);
      const VectorXd p0 = baseline_healthy_proba(res.refit_original, test.x);
      MatrixXd proba(test.x.rows(), 2);
      proba.col(0) = p0;
      proba.col(1) = 1.0 - p0.array();
      emit_screen_and_class(proba, false);
      break;
    }
  }
  return rows;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.scenarios.empty() || config.methods.empty() || config.replicates < 1)
    throw std::invalid_argument("run_bench: scenarios, methods, and replicates must be non-empty");

  std::vector<Task> tasks;
  for (const auto scenario : config.scenarios)
    for (const auto method : config.methods)
      for (int r = 0; r < config.replicates; ++r) tasks.push_back({scenario, method, r});

  std::vector<std::vector<BenchRow>> slots(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        slots[t] = run_tuple(config, tasks[t]);
      } catch (const std::exception& e) {
        slots[t] = {{to_string(tasks[t].scenario), to_string(tasks[t].method),
                     tasks[t].replicate, std::string("error: ") + e.what(),
                     std::numeric_limits<double>::quiet_NaN()}};
      }
    }
  };

  const int n_threads = std::max(1, config.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRow> rows;
  for (auto& slot : slots) rows.insert(rows.end(), slot.begin(), slot.end());
  return rows;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "scenario,method,replicate,metric,value\n";
  for (const auto& row : rows)
    out << row.scenario << "," << row.method << "," << row.replicate << "," << row.metric << ","
        << row.value << "\n";
}

}  // namespace mtclm
