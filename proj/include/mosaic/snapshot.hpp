#pragma once

// Window aggregation of link streams and projection of ground truth onto
// the same window grid.

#include <cstdint>
#include <span>
#include <vector>

#include "mosaic/core.hpp"

namespace mosaic {

struct WeightedEdge {
  NodeId u;  // u < v
  NodeId v;
  double weight;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected weighted static graph on nodes 0..node_count-1. Edges are
/// unique, sorted by (u, v), with positive weight.
struct WeightedGraph {
  std::size_t node_count = 0;
  std::vector<WeightedEdge> edges;

  /// Sums parallel entries, drops non-positive weights, and sorts.
  static WeightedGraph from_entries(std::size_t node_count, std::vector<WeightedEdge> entries);
  double total_weight() const noexcept;
  /// Weighted degree per node.
  std::vector<double> strengths() const;
};

struct SnapshotSequence {
  std::size_t node_count = 0;
  std::vector<double> boundaries;  // t_0 < ... < t_m; window i is [t_i, t_{i+1})
  std::vector<WeightedGraph> graphs;

  std::size_t window_count() const noexcept { return graphs.size(); }
  TimeInterval window(std::size_t i) const { return {boundaries.at(i), boundaries.at(i + 1)}; }
};

using Label = std::int64_t;

/// labels[w][v] is node v's community label in window w. Labels are shared
/// across windows: equal labels in different windows denote the same
/// dynamic community.
struct DynamicPartition {
  std::size_t node_count = 0;
  std::vector<std::vector<Label>> labels;

  std::size_t window_count() const noexcept { return labels.size(); }
};

/// Window boundaries start, start + w, ...; the last window is cut at the
/// domain end and may be shorter. Throws ParameterError for w <= 0.
std::vector<double> window_boundaries(TimeInterval domain, double window);

/// Index of the window holding time t (clamped into range).
std::size_t window_index(std::span<const double> boundaries, double t);

/// One weighted graph per window; the weight of (u, v) is the number of
/// temporal edges between them inside the window.
SnapshotSequence aggregate(const LinkStream& ls, double window);

/// Label of a node in a window = id of the mosaic (or kEmptyMosaic) covering
/// the largest share of the window for that node. Ties go to the mosaic
/// starting first, then to the smaller id.
DynamicPartition project_ground_truth(const MosaicPartition& p, std::span<const double> boundaries);

}  // namespace mosaic
