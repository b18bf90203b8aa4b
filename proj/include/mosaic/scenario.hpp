#pragma once

// Scenario generators: produce the ground-truth mosaic partition that edge
// generation later populates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mosaic/core.hpp"
#include "mosaic/random.hpp"

namespace mosaic {

enum class ScenarioKind { kExperimental, kSnapshots, kRandom };
enum class WindowMode { kFixed, kVarying };

struct MosaicSpec {
  std::vector<NodeId> members;
  TimeInterval interval;
};

struct ScenarioParams {
  ScenarioKind kind = ScenarioKind::kRandom;
  std::size_t k = 0;
  WindowMode window_mode = WindowMode::kFixed;
  double gamma = 0.0;
  std::size_t min_nodes = 2;
  /// Non-positive means "use the default": 5% of the domain length.
  double min_duration = 0.0;
  std::uint64_t seed = 0;
  /// Only read by the experimental generator.
  std::vector<MosaicSpec> specs;

  /// Throws ParameterError on out-of-range fields.
  void validate() const;
  double min_duration_for(const TimeInterval& domain) const;
};

std::string to_string(ScenarioKind kind);
std::string to_string(WindowMode mode);
ScenarioKind parse_scenario_kind(const std::string& s);
WindowMode parse_window_mode(const std::string& s);

/// Exactly the given mosaics (ids 0, 1, ... in input order). Throws
/// DomainError when a spec leaves V x T and ValidationError on overlaps.
MosaicPartition experimental_scenario(const std::vector<MosaicSpec>& specs, std::size_t node_count,
                                      TimeInterval domain);

/// Shuffles `nodes` and cuts them into consecutive chunks whose sizes are
/// drawn uniformly from [min_size, remaining]; a tail shorter than min_size is
/// merged into the previous chunk.
std::vector<std::vector<NodeId>> random_node_partition(std::vector<NodeId> nodes, std::size_t min_size, Rng& rng);

/// k time segments (equal, or cut at k-1 uniform points), each holding an
/// independent random partition of V into communities of at least two nodes.
MosaicPartition snapshot_scenario(std::size_t node_count, TimeInterval domain, std::size_t k, WindowMode mode,
                                  Rng& rng);

bool is_splittable(const Mosaic& m, std::size_t min_nodes, double min_duration);

/// Splits a mosaic into the 2 x 2 product of a random node bipartition and a
/// random time cut, both sides respecting the minimums. Sub-mosaics carry the
/// parent's id. Throws ParameterError when `m` is not splittable.
std::array<Mosaic, 4> split_mosaic(const Mosaic& m, std::size_t min_nodes, double min_duration, Rng& rng);

struct RandomScenario {
  MosaicPartition partition;
  std::size_t splits = 0;          // successful split operations
  std::size_t leaves = 0;          // leaf count before pruning (3 * splits + 1)
  std::size_t pruned = 0;          // leaves sent to the empty community
  std::vector<std::string> warnings;
};

/// Starts from the single mosaic V x T and performs k splits, each on a
/// uniformly chosen splittable leaf. Leaves are numbered in depth-first
/// order; leaves under the minimums are pruned into the empty community.
RandomScenario random_scenario(std::size_t node_count, TimeInterval domain, std::size_t k, std::size_t min_nodes,
                               double min_duration, Rng& rng);

/// Each mosaic independently joins the empty community with probability
/// gamma. Survivors are untouched.
MosaicPartition empty_mosaics(const MosaicPartition& p, double gamma, Rng& rng);

/// Runs the configured generator followed by emptying. The experimental
/// generator uses params.specs and ignores the RNG.
MosaicPartition generate_scenario(const ScenarioParams& params, std::size_t node_count, TimeInterval domain);

}  // namespace mosaic
