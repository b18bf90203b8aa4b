#pragma once

// Link streams and mosaic partitions.
//
// A link stream is a triple (V, E, T): nodes 0..n-1, instantaneous undirected
// edges (u, v, t), and a half-open time domain T = [start, end).  A mosaic is
// a community living on the rectangle members x interval of V x T.  A mosaic
// partition is a set of mosaics whose rectangles never intersect; whatever
// they leave uncovered is the empty community, which is never materialized.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace mosaic {

using NodeId = std::uint32_t;
using MosaicId = std::int64_t;

/// Label of the empty community (the uncovered part of V x T).
inline constexpr MosaicId kEmptyMosaic = -1;

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;

  TimeInterval() = default;
  /// Throws ParameterError unless start < end.
  TimeInterval(double start, double end);

  double length() const noexcept { return end - start; }
  bool contains(double t) const noexcept { return start <= t && t < end; }
  bool contains(const TimeInterval& other) const noexcept {
    return start <= other.start && other.end <= end;
  }
  bool overlaps(const TimeInterval& other) const noexcept {
    return start < other.end && other.start < end;
  }
  /// Intersection, or nullopt when it is empty.
  std::optional<TimeInterval> intersect(const TimeInterval& other) const;

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

struct TemporalEdge {
  NodeId u = 0;
  NodeId v = 0;
  double t = 0.0;

  TemporalEdge() = default;
  /// Stores endpoints with u < v. Throws ParameterError on a self-loop.
  TemporalEdge(NodeId a, NodeId b, double time);

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Canonical order: by time, then (u, v).
bool edge_less(const TemporalEdge& a, const TemporalEdge& b) noexcept;

class LinkStream {
 public:
  LinkStream() = default;
  /// Sorts edges canonically; throws DomainError when an edge endpoint or
  /// time falls outside the node set or domain.
  LinkStream(std::size_t node_count, TimeInterval domain, std::vector<TemporalEdge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  const TimeInterval& domain() const noexcept { return domain_; }
  std::span<const TemporalEdge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }

  friend bool operator==(const LinkStream&, const LinkStream&) = default;

 private:
  std::size_t node_count_ = 0;
  TimeInterval domain_{};
  std::vector<TemporalEdge> edges_;
};

struct Mosaic {
  MosaicId id = 0;
  std::vector<NodeId> members;  // sorted, unique
  TimeInterval interval;

  Mosaic() = default;
  /// Sorts and deduplicates members; throws ParameterError if none are given.
  Mosaic(MosaicId id, std::vector<NodeId> members, TimeInterval interval);

  std::size_t size() const noexcept { return members.size(); }
  bool has_member(NodeId node) const noexcept;

  friend bool operator==(const Mosaic&, const Mosaic&) = default;
};

class MosaicPartition {
 public:
  MosaicPartition() = default;
  /// Stores the mosaics as given. No validation: see validate_partition.
  MosaicPartition(std::size_t node_count, TimeInterval domain, std::vector<Mosaic> mosaics = {});

  std::size_t node_count() const noexcept { return node_count_; }
  const TimeInterval& domain() const noexcept { return domain_; }
  std::span<const Mosaic> mosaics() const noexcept { return mosaics_; }
  std::size_t size() const noexcept { return mosaics_.size(); }
  bool empty() const noexcept { return mosaics_.empty(); }

  /// Mosaic with the given id, or nullptr.
  const Mosaic* find(MosaicId id) const noexcept;

  friend bool operator==(const MosaicPartition&, const MosaicPartition&) = default;

 private:
  std::size_t node_count_ = 0;
  TimeInterval domain_{};
  std::vector<Mosaic> mosaics_;
};

struct Violation {
  enum class Kind { kOverlap, kOutOfDomain, kDuplicateId };
  Kind kind;
  MosaicId first;
  MosaicId second;  // equals `first` for single-mosaic violations
  std::string message;

  friend auto operator<=>(const Violation& a, const Violation& b) {
    return std::tie(a.kind, a.first, a.second) <=> std::tie(b.kind, b.first, b.second);
  }
  friend bool operator==(const Violation& a, const Violation& b) {
    return a.kind == b.kind && a.first == b.first && a.second == b.second;
  }
};

struct ValidationReport {
  std::vector<Violation> violations;  // sorted, one entry per offending pair
  std::vector<std::string> warnings;  // e.g. singleton mosaics

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

/// Checks ids are unique, every mosaic lies in V x T, and no two mosaic cells
/// intersect. The result does not depend on the order of the mosaic list.
ValidationReport validate_partition(const MosaicPartition& p);

/// Throws ValidationError carrying the report summary unless `p` is valid.
void require_valid(const MosaicPartition& p);

/// Id of the mosaic whose cell holds (node, t), or kEmptyMosaic.
/// Throws DomainError for a node or time outside the partition.
MosaicId membership(const MosaicPartition& p, NodeId node, double t);

/// Sorted distinct mosaic endpoints plus the domain endpoints. Between two
/// consecutive breakpoints the membership of every node is constant.
std::vector<double> time_breakpoints(const MosaicPartition& p);

/// Per-node sorted interval lists for repeated membership queries.
class MembershipIndex {
 public:
  explicit MembershipIndex(const MosaicPartition& p);

  MosaicId at(NodeId node, double t) const;

  struct Span {
    TimeInterval interval;
    MosaicId id;
  };
  /// Explicit mosaic cells of one node, sorted by start time.
  std::span<const Span> spans(NodeId node) const { return per_node_.at(node); }

 private:
  TimeInterval domain_;
  std::vector<std::vector<Span>> per_node_;
};

}  // namespace mosaic
