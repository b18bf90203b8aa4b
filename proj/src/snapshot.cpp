#include "mosaic/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mosaic/errors.hpp"

namespace mosaic {

WeightedGraph WeightedGraph::from_entries(std::size_t node_count, std::vector<WeightedEdge> entries) {
  for (auto& e : entries) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= node_count) throw DomainError("graph edge endpoint outside node set");
  }
  std::sort(entries.begin(), entries.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  WeightedGraph g{node_count, {}};
  for (const auto& e : entries) {
    if (e.u == e.v) continue;
    if (!g.edges.empty() && g.edges.back().u == e.u && g.edges.back().v == e.v)
      g.edges.back().weight += e.weight;
    else
      g.edges.push_back(e);
  }
  std::erase_if(g.edges, [](const WeightedEdge& e) { return !(e.weight > 0.0); });
  return g;
}

double WeightedGraph::total_weight() const noexcept {
  double w = 0.0;
  for (const auto& e : edges) w += e.weight;
  return w;
}

std::vector<double> WeightedGraph::strengths() const {
  std::vector<double> s(node_count, 0.0);
  for (const auto& e : edges) {
    s[e.u] += e.weight;
    s[e.v] += e.weight;
  }
  return s;
}

std::vector<double> window_boundaries(TimeInterval domain, double window) {
  if (!(window > 0.0) || !std::isfinite(window)) throw ParameterError("window size must be positive");
  auto count = static_cast<std::size_t>(std::ceil(domain.length() / window));
  std::vector<double> b;
  b.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) {
    double t = domain.start + static_cast<double>(i) * window;
    if (t >= domain.end) break;
    b.push_back(t);
  }
  b.push_back(domain.end);
  return b;
}

std::size_t window_index(std::span<const double> boundaries, double t) {
  auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
  auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - boundaries.begin() - 1, 0));
  return std::min(idx, boundaries.size() - 2);
}

SnapshotSequence aggregate(const LinkStream& ls, double window) {
  SnapshotSequence s;
  s.node_count = ls.node_count();
  s.boundaries = window_boundaries(ls.domain(), window);
  std::vector<std::map<std::pair<NodeId, NodeId>, double>> counts(s.boundaries.size() - 1);
  for (const auto& e : ls.edges()) counts[window_index(s.boundaries, e.t)][{e.u, e.v}] += 1.0;
  s.graphs.reserve(counts.size());
  for (const auto& c : counts) {
    WeightedGraph g{ls.node_count(), {}};
    g.edges.reserve(c.size());
    for (const auto& [key, w] : c) g.edges.push_back({key.first, key.second, w});
    s.graphs.push_back(std::move(g));
  }
  return s;
}

DynamicPartition project_ground_truth(const MosaicPartition& p, std::span<const double> boundaries) {
  if (boundaries.size() < 2) throw ParameterError("need at least one window");
  MembershipIndex index(p);
  DynamicPartition d{p.node_count(), {}};
  d.labels.assign(boundaries.size() - 1, std::vector<Label>(p.node_count(), kEmptyMosaic));

  struct Share {
    double time = 0.0;
    double first_start = 0.0;
  };
  for (NodeId v = 0; v < p.node_count(); ++v) {
    auto spans = index.spans(v);
    for (std::size_t w = 0; w + 1 < boundaries.size(); ++w) {
      TimeInterval win{boundaries[w], boundaries[w + 1]};
      std::map<MosaicId, Share> shares;
      double covered = 0.0;
      for (const auto& s : spans) {
        if (s.interval.start >= win.end) break;
        if (auto ov = s.interval.intersect(win)) {
          auto [it, fresh] = shares.try_emplace(s.id, Share{0.0, ov->start});
          it->second.time += ov->length();
          it->second.first_start = std::min(it->second.first_start, ov->start);
          covered += ov->length();
        }
      }
      // the empty community competes like any mosaic; its earliest presence
      // in the window is the first gap
      double gap = win.length() - covered;
      if (gap > 0.0) {
        double first_gap = win.start;
        for (const auto& s : spans) {
          if (s.interval.end <= first_gap) continue;
          if (s.interval.start > first_gap || s.interval.start >= win.end) break;
          first_gap = s.interval.end;
        }
        shares[kEmptyMosaic] = Share{gap, first_gap};
      }
      Label best = kEmptyMosaic;
      const Share* best_share = nullptr;
      for (const auto& [id, share] : shares) {
        bool better = !best_share || share.time > best_share->time ||
                      (share.time == best_share->time &&
                       (share.first_start < best_share->first_start ||
                        (share.first_start == best_share->first_start && id < best)));
        if (better) {
          best = id;
          best_share = &share;
        }
      }
      d.labels[w][v] = best;
    }
  }
  return d;
}

}  // namespace mosaic
