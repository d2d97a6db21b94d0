#include "mtclm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mtclm {

double roc_auc(const VectorXd& scores, const VectorXi& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("roc_auc: size mismatch");
  const Eigen::Index n = scores.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return scores[i] < scores[j]; });

  double pos_rank_sum = 0.0;
  Eigen::Index n_pos = 0;
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
    for (Eigen::Index k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        pos_rank_sum += midrank;
        ++n_pos;
      }
    }
    i = j;
  }
  const Eigen::Index n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("roc_auc: needs both classes present");
  return (pos_rank_sum - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1)) /
         (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double f1_score(const VectorXi& predicted, const VectorXi& truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("f1_score: size mismatch");
  double tp = 0, fp = 0, fn = 0;
  for (Eigen::Index i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == 1 && truth[i] == 1) ++tp;
    else if (predicted[i] == 1 && truth[i] == 0) ++fp;
    else if (predicted[i] == 0 && truth[i] == 1) ++fn;
  }
  const double denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2 * tp / denom;
}

double accuracy(const VectorXi& predicted, const VectorXi& truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("accuracy: size mismatch");
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < predicted.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

double mean_absolute_error(const VectorXi& predicted, const VectorXi& truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("mean_absolute_error: size mismatch");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < predicted.size(); ++i)
    sum += std::abs(predicted[i] - truth[i]);
  return sum / static_cast<double>(predicted.size());
}

namespace {

// Pairs tied within runs of equal values: sum t(t-1)/2.
double tied_pairs(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  double total = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double t = static_cast<double>(j - i);
    total += 0.5 * t * (t - 1.0);
    i = j;
  }
  return total;
}

// Merge-sort inversion count: pairs (i < j) with v[i] > v[j] strictly.
double count_inversions(std::vector<int>& v, std::vector<int>& buf, size_t lo, size_t hi) {
  if (hi - lo < 2) return 0.0;
  const size_t mid = lo + (hi - lo) / 2;
  double inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
  size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (v[a] <= v[b]) {
      buf[out++] = v[a++];
    } else {
      inv += static_cast<double>(mid - a);
      buf[out++] = v[b++];
    }
  }
  while (a < mid) buf[out++] = v[a++];
  while (b < hi) buf[out++] = v[b++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return inv;
}

}  // namespace

double kendall_tau(const VectorXi& a, const VectorXi& b, TauVariant variant) {
  if (a.size() != b.size()) throw std::invalid_argument("kendall_tau: size mismatch");
  const Eigen::Index n = a.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: needs at least two observations");

  std::vector<std::pair<int, int>> pairs(n);
  for (Eigen::Index i = 0; i < n; ++i) pairs[i] = {a[i], b[i]};
  std::sort(pairs.begin(), pairs.end());

  const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  double n1 = 0.0, n3 = 0.0;
  {
    size_t i = 0;
    while (i < pairs.size()) {
      size_t j = i;
      double run_both = 0.0;
      size_t k = i;
      while (j < pairs.size() && pairs[j].first == pairs[i].first) {
        if (pairs[j].second != pairs[k].second) {
          const double t = static_cast<double>(j - k);
          run_both += 0.5 * t * (t - 1.0);
          k = j;
        }
        ++j;
      }
      const double t_last = static_cast<double>(j - k);
      run_both += 0.5 * t_last * (t_last - 1.0);
      const double t = static_cast<double>(j - i);
      n1 += 0.5 * t * (t - 1.0);
      n3 += run_both;
      i = j;
    }
  }
  std::vector<int> b_sorted(n), buf(n);
  for (Eigen::Index i = 0; i < n; ++i) b_sorted[i] = pairs[i].second;
  const double n2 = tied_pairs(b_sorted);
  const double discordant = count_inversions(b_sorted, buf, 0, b_sorted.size());

  const double num = n0 - n1 - n2 + n3 - 2.0 * discordant;  // concordant - discordant
  if (variant == TauVariant::a) {
    if (n0 == n1 || n0 == n2) throw std::invalid_argument("kendall_tau: constant input");
    return num / n0;
  }
  const double denom = std::sqrt((n0 - n1) * (n0 - n2));
  if (denom == 0) throw std::invalid_argument("kendall_tau: constant input");
  return num / denom;
}

SelectionMetrics selection_metrics(const VectorXd& beta_hat, const VectorXd& gamma_hat,
                                   const VectorXd& beta_true, const VectorXd& gamma_true) {
  if (beta_hat.size() != beta_true.size() || gamma_hat.size() != gamma_true.size() ||
      beta_hat.size() != gamma_hat.size())
    throw std::invalid_argument("selection_metrics: size mismatch");
  double tp = 0, fp = 0, tn = 0, fn = 0;
  auto tally = [&](double est, double truth) {
    const bool sel = est != 0.0, act = truth != 0.0;
    if (sel && act) ++tp;
    else if (sel && !act) ++fp;
    else if (!sel && !act) ++tn;
    else ++fn;
  };
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j) {
    tally(beta_hat[j], beta_true[j]);
    tally(gamma_hat[j], gamma_true[j]);
  }
  SelectionMetrics m;
  m.power = (tp + fn) > 0 ? tp / (tp + fn) : 1.0;
  m.sensitivity = m.power;
  m.fdr = (tp + fp) > 0 ? fp / (tp + fp) : 0.0;
  m.specificity = (tn + fp) > 0 ? tn / (tn + fp) : 1.0;
  return m;
}

}  // namespace mtclm
