#pragma once

// Two-phase Louvain modularity maximization on weighted undirected graphs.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mosaic/snapshot.hpp"

namespace mosaic {

struct LouvainOptions {
  std::uint64_t seed = 0;
  double resolution = 1.0;
  /// Starting community of each node (any integer labels); singletons when
  /// empty.
  std::vector<Label> initial;
};

struct LouvainResult {
  /// Dense community index per node, numbered by first occurrence.
  std::vector<std::size_t> community;
  std::size_t community_count = 0;
  /// Modularity of the starting partition, then after every level.
  std::vector<double> modularity_trace;

  double modularity() const { return modularity_trace.back(); }
};

/// Local moving in seeded random node order (a move must strictly improve
/// the gain, so ties keep the node in place), then aggregation, repeated
/// until a level changes nothing. Edgeless graphs return singletons.
LouvainResult louvain(const WeightedGraph& g, const LouvainOptions& options = {});

/// Newman-Girvan modularity of an arbitrary labeling. Zero for edgeless graphs.
double modularity(const WeightedGraph& g, std::span<const std::size_t> community, double resolution = 1.0);
double modularity(const WeightedGraph& g, std::span<const Label> labels, double resolution = 1.0);

/// Relabels to dense indices 0..k-1 in order of first occurrence.
std::vector<std::size_t> densify(std::span<const Label> labels);

}  // namespace mosaic
