#pragma once

// Edge generation: backbone connectivity graphs per mosaic and per
// time-overlapping mosaic pair, Poisson activation times on every backbone
// edge, and optional uniform rewiring noise.

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mosaic/core.hpp"
#include "mosaic/random.hpp"

namespace mosaic {

/// Per-mosaic activation rate with a uniform fallback.
class MosaicRates {
 public:
  MosaicRates(double uniform = 0.0);  // NOLINT: implicit from a scalar rate

  void set(MosaicId id, double rate);
  double at(MosaicId id) const;
  double uniform() const noexcept { return uniform_; }
  const std::map<MosaicId, double>& overrides() const noexcept { return per_mosaic_; }

 private:
  double uniform_;
  std::map<MosaicId, double> per_mosaic_;
};

/// Symmetric per-pair activation rate with a uniform fallback.
class PairRates {
 public:
  PairRates(double uniform = 0.0);  // NOLINT: implicit from a scalar rate

  /// Throws ParameterError when (b, a) already holds a different rate.
  void set(MosaicId a, MosaicId b, double rate);
  double at(MosaicId a, MosaicId b) const;
  double uniform() const noexcept { return uniform_; }
  const std::map<std::pair<MosaicId, MosaicId>, double>& overrides() const noexcept { return per_pair_; }

 private:
  double uniform_;
  std::map<std::pair<MosaicId, MosaicId>, double> per_pair_;
};

struct EdgeGenParams {
  double alpha = 1.0;  // community density coefficient, (0, 1]
  double beta = 0.0;   // identifiability coefficient, [0, 1]
  MosaicRates lambda_in{0.0};
  PairRates lambda_ext{0.0};
  double eta = 0.0;  // rewiring probability
  std::uint64_t seed = 0;

  void validate() const;
};

/// Backbone edges belong to a context: one mosaic (first == second) or an
/// unordered mosaic pair (first < second).
struct Context {
  MosaicId first;
  MosaicId second;
  bool internal() const noexcept { return first == second; }
  friend bool operator==(const Context&, const Context&) = default;
};

struct BackboneEdge {
  NodeId u;
  NodeId v;
  Context context;
  TimeInterval window;
};

/// (n - 1)^(alpha - 1). Throws ParameterError for n < 2.
double internal_probability(std::size_t n, double alpha);

/// beta * (n1 + n2 - 1)^(alpha - 1).
double external_probability(std::size_t n1, std::size_t n2, double alpha, double beta);

/// Bernoulli(p) random graph. Identical sides give the C(n,2) internal pairs;
/// otherwise only the |a| * |b| cross pairs are sampled.
std::vector<BackboneEdge> backbone(std::span<const NodeId> side_a, std::span<const NodeId> side_b, double p,
                                   Context context, TimeInterval window, Rng& rng);

/// N ~ Poisson(|window| * rate) activation times, i.i.d. uniform over the
/// window, returned sorted.
std::vector<double> poisson_timestamps(TimeInterval window, double rate, Rng& rng);

/// Internal and external edges of every explicit mosaic (no rewiring). Each
/// context draws from its own substream of params.seed, so the result does
/// not depend on `threads`.
LinkStream generate_edges(const MosaicPartition& p, const EdgeGenParams& params, unsigned threads = 1);

/// Closed-form expectation of generate_edges' edge count.
double expected_edge_count(const MosaicPartition& p, const EdgeGenParams& params);

/// Each edge is redrawn with probability eta: a uniformly chosen ordered
/// mosaic pair with overlapping intervals (a mosaic may pair with itself),
/// endpoints from each side, and a time inside the overlap. Throws
/// GenerationError when a redraw is needed but no eligible pair exists.
LinkStream rewire(const LinkStream& ls, const MosaicPartition& p, double eta, Rng& rng);

/// Counts of edges whose endpoints share a mosaic at the edge time, edges
/// spanning two mosaics, and edges touching the empty community.
struct EdgeBreakdown {
  std::size_t internal = 0;
  std::size_t external = 0;
  std::size_t empty = 0;
};
EdgeBreakdown classify_edges(const LinkStream& ls, const MosaicPartition& p);

/// Full pipeline after the scenario: generate_edges, then rewire with a
/// substream of params.seed.
LinkStream generate_link_stream(const MosaicPartition& p, const EdgeGenParams& params, unsigned threads = 1);

}  // namespace mosaic
