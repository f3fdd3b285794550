#pragma once

#include <cstdint>
#include <vector>

#include "ueba/matrix.hpp"

namespace ueba {

// Ranking metrics for imbalanced binary detection. Scores are "higher means
// more likely positive"; all three handle tied scores exactly.

// Mann-Whitney rank statistic (ties contribute 1/2); identical to the
// trapezoidal area under the ROC curve.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Average precision: sum of precision * delta-recall over a descending-score
// sweep with tied scores grouped. No trapezoidal interpolation.
double pr_auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct F1Point {
  double threshold = 0.0;
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;

  bool operator==(const F1Point&) const = default;
};

// Scans every distinct score as a threshold (predict positive when score >=
// threshold) and returns the maximum-F1 point; ties break toward the lower
// threshold, i.e. higher recall.
F1Point f1_optimal(const std::vector<double>& scores, const std::vector<int>& labels);

// Curve points for plotting: ROC as (fpr, tpr), PR as (recall, precision),
// one point per distinct score plus the conventional endpoints.
std::vector<std::pair<double, double>> roc_curve(const std::vector<double>& scores,
                                                 const std::vector<int>& labels);
std::vector<std::pair<double, double>> pr_curve(const std::vector<double>& scores,
                                                const std::vector<int>& labels);

}  // namespace ueba
