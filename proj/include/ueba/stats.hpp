#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ueba {

// Divergences and entropies used by the anomaly / temporal features. All
// logarithms are natural. Inputs are count or weight vectors over a shared
// support chosen by the caller (union of observed categories for open
// vocabularies, fixed bin counts for hours / weekdays).

constexpr double kEps = 1e-9;       // guarded denominators
constexpr double kKlLambda = 1e-6;  // additive smoothing for KL

inline std::vector<double> normalize(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  std::vector<double> p(counts.size(), 0.0);
  if (total <= 0.0) return p;
  for (size_t i = 0; i < counts.size(); ++i) p[i] = counts[i] / total;
  return p;
}

// KL(P||Q) with add-lambda smoothing applied to the *normalized*
// distributions, then renormalized. Smoothing after normalization keeps
// KL(P,P) exactly zero while still tolerating zero-probability categories.
inline double kl_divergence(const std::vector<double>& p_counts,
                            const std::vector<double>& q_counts,
                            double lambda = kKlLambda) {
  size_t k = p_counts.size();
  if (k == 0 || q_counts.size() != k) return 0.0;
  std::vector<double> p = normalize(p_counts);
  std::vector<double> q = normalize(q_counts);
  double denom = 1.0 + lambda * static_cast<double>(k);
  double kl = 0.0;
  for (size_t i = 0; i < k; ++i) {
    double pi = (p[i] + lambda) / denom;
    double qi = (q[i] + lambda) / denom;
    kl += pi * std::log(pi / qi);
  }
  return kl < 0.0 ? 0.0 : kl;
}

// Jensen-Shannon divergence, unsmoothed (the mixture is positive wherever
// either side is). Symmetric, bounded by ln 2.
inline double js_divergence(const std::vector<double>& p_counts,
                            const std::vector<double>& q_counts) {
  size_t k = p_counts.size();
  if (k == 0 || q_counts.size() != k) return 0.0;
  std::vector<double> p = normalize(p_counts);
  std::vector<double> q = normalize(q_counts);
  double js = 0.0;
  for (size_t i = 0; i < k; ++i) {
    double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) js += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) js += 0.5 * q[i] * std::log(q[i] / m);
  }
  return js < 0.0 ? 0.0 : js;
}

// Shannon entropy (nats) of a count vector.
inline double shannon_entropy(const std::vector<double>& counts) {
  std::vector<double> p = normalize(counts);
  double h = 0.0;
  for (double pi : p)
    if (pi > 0.0) h -= pi * std::log(pi);
  return h < 0.0 ? 0.0 : h;
}

// Aligns two sparse count maps onto their union support (sorted key order so
// the result is deterministic), producing dense vectors for the above.
template <typename K>
void align_union(const std::map<K, double>& a, const std::map<K, double>& b,
                 std::vector<double>& out_a, std::vector<double>& out_b) {
  out_a.clear();
  out_b.clear();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out_a.push_back(ia->second);
      out_b.push_back(0.0);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out_a.push_back(0.0);
      out_b.push_back(ib->second);
      ++ib;
    } else {
      out_a.push_back(ia->second);
      out_b.push_back(ib->second);
      ++ia;
      ++ib;
    }
  }
}

template <typename K>
double kl_divergence_maps(const std::map<K, double>& p, const std::map<K, double>& q,
                          double lambda = kKlLambda) {
  std::vector<double> pv, qv;
  align_union(p, q, pv, qv);
  return kl_divergence(pv, qv, lambda);
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Population standard deviation.
inline double stddev(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

// Pearson correlation; 0 when either side has zero variance or n < 2.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace ueba
