#include "ueba/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ueba {

namespace {

void check_inputs(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("scores and labels disagree in length");
  if (scores.empty()) throw std::invalid_argument("empty metric input");
}

// (score, label) sorted by descending score; groups of equal scores are the
// threshold steps.
std::vector<std::pair<double, int>> sorted_desc(const std::vector<double>& scores,
                                                const std::vector<int>& labels) {
  std::vector<std::pair<double, int>> v(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) v[i] = {scores[i], labels[i]};
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  return v;
}

}  // namespace

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  check_inputs(scores, labels);
  double n_pos = 0.0, n_neg = 0.0;
  for (int l : labels) (l == 1 ? n_pos : n_neg) += 1.0;
  if (n_pos == 0.0 || n_neg == 0.0)
    throw std::invalid_argument("roc_auc needs both classes");

  // ascending scores; average ranks within tie groups
  std::vector<std::pair<double, int>> v(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) v[i] = {scores[i], labels[i]};
  std::sort(v.begin(), v.end());

  double rank_sum_pos = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j].first == v[i].first) ++j;
    double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (size_t k = i; k < j; ++k)
      if (v[k].second == 1) rank_sum_pos += avg_rank;
    i = j;
  }
  return (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double pr_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  check_inputs(scores, labels);
  double n_pos = 0.0;
  for (int l : labels) n_pos += (l == 1);
  if (n_pos == 0.0) throw std::invalid_argument("pr_auc needs positive labels");

  auto v = sorted_desc(scores, labels);
  double tp = 0.0, fp = 0.0, ap = 0.0, prev_recall = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j].first == v[i].first) ++j;
    for (size_t k = i; k < j; ++k) (v[k].second == 1 ? tp : fp) += 1.0;
    double recall = tp / n_pos;
    double precision = tp / (tp + fp);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return ap;
}

F1Point f1_optimal(const std::vector<double>& scores, const std::vector<int>& labels) {
  check_inputs(scores, labels);
  double n_pos = 0.0;
  for (int l : labels) n_pos += (l == 1);

  auto v = sorted_desc(scores, labels);
  F1Point best;
  bool have = false;
  double tp = 0.0, fp = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j].first == v[i].first) ++j;
    for (size_t k = i; k < j; ++k) (v[k].second == 1 ? tp : fp) += 1.0;
    double precision = tp / (tp + fp);
    double recall = n_pos > 0.0 ? tp / n_pos : 0.0;
    double f1 = (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall)
                                           : 0.0;
    // >= keeps the lowest threshold among ties (higher recall)
    if (!have || f1 >= best.f1) {
      best = {v[i].first, f1, precision, recall};
      have = true;
    }
    i = j;
  }
  return best;
}

std::vector<std::pair<double, double>> roc_curve(const std::vector<double>& scores,
                                                 const std::vector<int>& labels) {
  check_inputs(scores, labels);
  double n_pos = 0.0, n_neg = 0.0;
  for (int l : labels) (l == 1 ? n_pos : n_neg) += 1.0;

  std::vector<std::pair<double, double>> pts = {{0.0, 0.0}};
  auto v = sorted_desc(scores, labels);
  double tp = 0.0, fp = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j].first == v[i].first) ++j;
    for (size_t k = i; k < j; ++k) (v[k].second == 1 ? tp : fp) += 1.0;
    pts.emplace_back(n_neg > 0 ? fp / n_neg : 0.0, n_pos > 0 ? tp / n_pos : 0.0);
    i = j;
  }
  return pts;
}

std::vector<std::pair<double, double>> pr_curve(const std::vector<double>& scores,
                                                const std::vector<int>& labels) {
  check_inputs(scores, labels);
  double n_pos = 0.0;
  for (int l : labels) n_pos += (l == 1);

  std::vector<std::pair<double, double>> pts = {{0.0, 1.0}};
  auto v = sorted_desc(scores, labels);
  double tp = 0.0, fp = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j].first == v[i].first) ++j;
    for (size_t k = i; k < j; ++k) (v[k].second == 1 ? tp : fp) += 1.0;
    pts.emplace_back(n_pos > 0 ? tp / n_pos : 0.0, tp / (tp + fp));
    i = j;
  }
  return pts;
}

}  // namespace ueba
