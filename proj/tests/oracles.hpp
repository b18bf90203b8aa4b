#pragma once

// Brute-force reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "mosaic/snapshot.hpp"

namespace mosaic::oracle {

/// Calls fn(labels) for every set partition of n items (restricted growth strings).
inline void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> maxv(n + 1, 0);
  if (n == 0) {
    fn(a);
    return;
  }
  for (;;) {
    fn(a);
    std::size_t i = n - 1;
    while (i > 0 && a[i] == (i == 0 ? 0 : *std::max_element(a.begin(), a.begin() + i)) + 1) --i;
    if (i == 0) return;
    ++a[i];
    for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
  }
}

/// Modularity straight from the definition Q = 1/2m sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j).
inline double modularity_by_definition(const WeightedGraph& g, const std::vector<std::size_t>& c) {
  std::size_t n = g.node_count;
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges) a[e.u][e.v] = a[e.v][e.u] = e.weight;
  std::vector<double> k(n, 0.0);
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      m2 += a[i][j];
    }
  if (m2 == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += a[i][j] - k[i] * k[j] / m2;
  return q / m2;
}

struct BestPartition {
  double modularity = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> labels;
};

/// Exhaustive modularity maximum over all set partitions (n <= 10).
inline BestPartition exhaustive_modularity(const WeightedGraph& g) {
  BestPartition best;
  for_each_set_partition(g.node_count, [&](const std::vector<std::size_t>& c) {
    double q = modularity_by_definition(g, c);
    if (q > best.modularity + 1e-12) {
      best.modularity = q;
      best.labels = c;
    }
  });
  return best;
}

/// Two labelings describe the same partition.
template <class A, class B>
bool same_partition(const A& a, const B& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

/// One-sample Kolmogorov-Smirnov statistic against Uniform[lo, hi).
inline double ks_uniform_statistic(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = (xs[i] - lo) / (hi - lo);
    d = std::max({d, (static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic Kolmogorov p-value of statistic d over n samples.
inline double ks_p_value(double d, std::size_t n) {
  double sn = std::sqrt(static_cast<double>(n));
  double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) sum += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(sum, 0.0, 1.0);
}

/// Sum-normalized NMI from a weighted contingency table, textbook formula.
template <class A, class B>
double nmi_by_definition(const std::vector<A>& a, const std::vector<B>& b, const std::vector<double>& w) {
  std::map<A, double> pa;
  std::map<B, double> pb;
  std::map<std::pair<A, B>, double> pab;
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += w[i];
    pb[b[i]] += w[i];
    pab[{a[i], b[i]}] += w[i];
    total += w[i];
  }
  auto entropy = [&](const auto& m) {
    double h = 0.0;
    for (const auto& [k, x] : m)
      if (x > 0) h -= x / total * std::log(x / total);
    return h;
  };
  double ha = entropy(pa);
  double hb = entropy(pb);
  if (ha + hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [k, x] : pab)
    if (x > 0) mi += x / total * std::log(x * total / (pa[k.first] * pb[k.second]));
  return 2.0 * mi / (ha + hb);
}

}  // namespace mosaic::oracle
