#include "mosaic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mosaic/errors.hpp"

namespace mosaic {

double weighted_nmi(std::span<const Label> a, std::span<const Label> b, std::span<const double> weight) {
  if (a.size() != b.size() || a.size() != weight.size()) throw ParameterError("labelings cover different domains");
  std::map<std::pair<Label, Label>, double> joint;
  std::map<Label, double> pa;
  std::map<Label, double> pb;
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (weight[i] <= 0.0) continue;
    joint[{a[i], b[i]}] += weight[i];
    pa[a[i]] += weight[i];
    pb[b[i]] += weight[i];
    total += weight[i];
  }
  if (total <= 0.0) return 1.0;

  auto entropy = [total](const std::map<Label, double>& m) {
    double h = 0.0;
    for (const auto& [_, w] : m) {
      double p = w / total;
      h -= p * std::log(p);
    }
    return h;
  };
  double ha = entropy(pa);
  double hb = entropy(pb);
  if (ha + hb <= 1e-15) return 1.0;
  double mi = 0.0;
  for (const auto& [key, w] : joint) {
    double p = w / total;
    mi += p * std::log(p * total * total / (pa[key.first] * pb[key.second]));
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

double nmi(std::span<const Label> a, std::span<const Label> b) {
  std::vector<double> ones(a.size(), 1.0);
  if (a.size() != b.size()) throw ParameterError("labelings cover different domains");
  return weighted_nmi(a, b, ones);
}

namespace {

std::vector<double> merge_breakpoints(std::vector<double> a, std::span<const double> b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

double mosaic_nmi(const MosaicPartition& p1, const MosaicPartition& p2) {
  if (p1.node_count() != p2.node_count() || !(p1.domain() == p2.domain()))
    throw ParameterError("partitions cover different node sets or domains");
  auto cuts = merge_breakpoints(time_breakpoints(p1), time_breakpoints(p2));
  MembershipIndex i1(p1);
  MembershipIndex i2(p2);
  std::vector<Label> a;
  std::vector<Label> b;
  std::vector<double> w;
  for (NodeId v = 0; v < p1.node_count(); ++v) {
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      a.push_back(i1.at(v, cuts[s]));
      b.push_back(i2.at(v, cuts[s]));
      w.push_back(cuts[s + 1] - cuts[s]);
    }
  }
  return weighted_nmi(a, b, w);
}

double mosaic_nmi(const MosaicPartition& truth, const DynamicPartition& d, std::span<const double> boundaries) {
  if (truth.node_count() != d.node_count) throw ParameterError("partitions cover different node sets");
  if (boundaries.size() != d.window_count() + 1) throw ParameterError("boundaries do not match the window count");
  if (boundaries.front() != truth.domain().start || boundaries.back() != truth.domain().end)
    throw ParameterError("window grid does not span the partition domain");
  auto cuts = merge_breakpoints(time_breakpoints(truth), boundaries);
  MembershipIndex index(truth);
  std::vector<Label> a;
  std::vector<Label> b;
  std::vector<double> w;
  for (NodeId v = 0; v < truth.node_count(); ++v) {
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      a.push_back(index.at(v, cuts[s]));
      b.push_back(d.labels[window_index(boundaries, cuts[s])][v]);
      w.push_back(cuts[s + 1] - cuts[s]);
    }
  }
  return weighted_nmi(a, b, w);
}

double sm_p(const DynamicPartition& d) {
  if (d.window_count() < 2) throw ParameterError("partition smoothness needs at least two windows");
  double sum = 0.0;
  for (std::size_t w = 0; w + 1 < d.window_count(); ++w) sum += nmi(d.labels[w], d.labels[w + 1]);
  return sum / static_cast<double>(d.window_count() - 1);
}

double sm_n(const DynamicPartition& d) {
  if (d.window_count() < 2) throw ParameterError("node smoothness needs at least two windows");
  if (d.node_count == 0) return 1.0;
  double changed = 0.0;
  for (std::size_t w = 0; w + 1 < d.window_count(); ++w) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < d.node_count; ++v) n += d.labels[w][v] != d.labels[w + 1][v];
    changed += static_cast<double>(n) / static_cast<double>(d.node_count);
  }
  return 1.0 - changed / static_cast<double>(d.window_count() - 1);
}

double sm_l(const DynamicPartition& d) {
  if (d.window_count() < 1) throw ParameterError("label smoothness needs at least one window");
  if (d.node_count == 0) return 1.0;
  double sum = 0.0;
  for (std::size_t v = 0; v < d.node_count; ++v) {
    std::size_t runs = 1;
    for (std::size_t w = 1; w < d.window_count(); ++w) runs += d.labels[w][v] != d.labels[w - 1][v];
    sum += 1.0 / static_cast<double>(runs);
  }
  return sum / static_cast<double>(d.node_count);
}

ScoreReport score(const DynamicPartition& detected, const DynamicPartition& projected_truth,
                  const MosaicPartition& truth, std::span<const double> boundaries) {
  if (detected.window_count() != projected_truth.window_count())
    throw ParameterError("detected and ground-truth partitions have different window counts");
  ScoreReport r;
  for (std::size_t w = 0; w < detected.window_count(); ++w)
    r.per_window_nmi.push_back(nmi(detected.labels[w], projected_truth.labels[w]));
  if (!r.per_window_nmi.empty())
    r.mean_nmi = std::accumulate(r.per_window_nmi.begin(), r.per_window_nmi.end(), 0.0) /
                 static_cast<double>(r.per_window_nmi.size());
  r.mosaic_nmi = mosaic_nmi(truth, detected, boundaries);
  if (detected.window_count() >= 2) {
    r.sm_p = sm_p(detected);
    r.sm_n = sm_n(detected);
  } else {
    r.sm_p = 1.0;
    r.sm_n = 1.0;
  }
  r.sm_l = detected.window_count() >= 1 ? sm_l(detected) : 1.0;
  return r;
}

}  // namespace mosaic
