#pragma once

// Snapshot-based dynamic community detection: per-window Louvain combined
// with one of four temporal smoothing strategies.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mosaic/snapshot.hpp"

namespace mosaic {

enum class Method { kNoSmoothing, kImplicitGlobal, kLabelSmoothing, kSmoothedGraph };

inline constexpr Method kAllMethods[] = {Method::kNoSmoothing, Method::kImplicitGlobal, Method::kLabelSmoothing,
                                         Method::kSmoothedGraph};

std::string to_string(Method m);
/// Accepts the snake_case names ("no_smoothing", ...). Throws ParameterError.
Method parse_method(const std::string& name);

struct DetectorConfig {
  Method method = Method::kNoSmoothing;
  double theta = 0.3;  // Jaccard matching threshold
  double rho = 0.9;    // weight of the current window in the smoothed graph
  std::uint64_t seed = 0;

  void validate() const;
};

/// |a ∩ b| / |a ∪ b| of two sorted node sets. Throws ParameterError when
/// both are empty.
double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

/// Sorted member lists of each dense community index.
std::vector<std::vector<NodeId>> group_members(std::span<const std::size_t> community, std::size_t count);

/// Labels for `current` communities: candidate pairs sharing at least one
/// node are accepted greedily by descending Jaccard (ties: smaller previous
/// label, then smaller smallest member) while the similarity is >= theta and
/// neither side is taken. Matched communities inherit the previous label;
/// the rest draw fresh labels from `next_label`.
std::vector<Label> match_communities(const std::vector<std::vector<NodeId>>& previous,
                                     std::span<const Label> previous_labels,
                                     const std::vector<std::vector<NodeId>>& current, double theta,
                                     Label& next_label);

DynamicPartition detect_no_smoothing(const SnapshotSequence& s, const DetectorConfig& cfg);
DynamicPartition detect_implicit_global(const SnapshotSequence& s, const DetectorConfig& cfg);
DynamicPartition detect_label_smoothing(const SnapshotSequence& s, const DetectorConfig& cfg);
DynamicPartition detect_smoothed_graph(const SnapshotSequence& s, const DetectorConfig& cfg);

/// Dispatches on cfg.method.
DynamicPartition detect(const SnapshotSequence& s, const DetectorConfig& cfg);

}  // namespace mosaic
