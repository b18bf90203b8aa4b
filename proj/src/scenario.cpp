#include "mosaic/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mosaic/errors.hpp"

namespace mosaic {

void ScenarioParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  if (min_nodes < 2) throw ParameterError("min_nodes must be at least 2");
  if (!std::isfinite(min_duration)) throw ParameterError("min_duration must be finite");
  if (kind == ScenarioKind::kSnapshots && k < 1) throw ParameterError("snapshot scenario needs k >= 1");
}

double ScenarioParams::min_duration_for(const TimeInterval& domain) const {
  return min_duration > 0.0 ? min_duration : 0.05 * domain.length();
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kExperimental: return "experimental";
    case ScenarioKind::kSnapshots: return "snapshots";
    case ScenarioKind::kRandom: return "random";
  }
  return "?";
}

std::string to_string(WindowMode mode) { return mode == WindowMode::kFixed ? "fixed" : "varying"; }

ScenarioKind parse_scenario_kind(const std::string& s) {
  if (s == "experimental") return ScenarioKind::kExperimental;
  if (s == "snapshots" || s == "snapshot") return ScenarioKind::kSnapshots;
  if (s == "random") return ScenarioKind::kRandom;
  throw ParameterError("unknown scenario kind '" + s + "'");
}

WindowMode parse_window_mode(const std::string& s) {
  if (s == "fixed") return WindowMode::kFixed;
  if (s == "varying") return WindowMode::kVarying;
  throw ParameterError("unknown window mode '" + s + "'");
}

MosaicPartition experimental_scenario(const std::vector<MosaicSpec>& specs, std::size_t node_count,
                                      TimeInterval domain) {
  std::vector<Mosaic> mosaics;
  mosaics.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    if (!domain.contains(s.interval)) throw DomainError("spec " + std::to_string(i) + " interval outside domain");
    for (NodeId v : s.members) {
      if (v >= node_count) throw DomainError("spec " + std::to_string(i) + " names unknown node " + std::to_string(v));
    }
    mosaics.emplace_back(static_cast<MosaicId>(i), s.members, s.interval);
  }
  MosaicPartition p{node_count, domain, std::move(mosaics)};
  require_valid(p);
  return p;
}

std::vector<std::vector<NodeId>> random_node_partition(std::vector<NodeId> nodes, std::size_t min_size, Rng& rng) {
  if (min_size < 1) throw ParameterError("min_size must be positive");
  if (nodes.size() < min_size) {
    throw ParameterError("cannot partition " + std::to_string(nodes.size()) + " nodes into groups of at least " +
                         std::to_string(min_size));
  }
  shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<std::vector<NodeId>> groups;
  std::size_t pos = 0;
  while (pos < nodes.size()) {
    std::size_t remaining = nodes.size() - pos;
    if (remaining < min_size) {
      groups.back().insert(groups.back().end(), nodes.begin() + pos, nodes.end());
      break;
    }
    std::size_t size = uniform_int<std::size_t>(rng, min_size, remaining);
    groups.emplace_back(nodes.begin() + pos, nodes.begin() + pos + size);
    pos += size;
  }
  return groups;
}

MosaicPartition snapshot_scenario(std::size_t node_count, TimeInterval domain, std::size_t k, WindowMode mode,
                                  Rng& rng) {
  if (k < 1) throw ParameterError("snapshot scenario needs k >= 1");
  if (node_count < 2) throw ParameterError("snapshot scenario needs at least 2 nodes");

  std::vector<double> cuts{domain.start};
  if (mode == WindowMode::kFixed) {
    for (std::size_t i = 1; i < k; ++i)
      cuts.push_back(domain.start + domain.length() * static_cast<double>(i) / static_cast<double>(k));
  } else {
    for (std::size_t i = 1; i < k; ++i) cuts.push_back(uniform_real(rng, domain.start, domain.end));
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(domain.end);
  // Coincident varying cuts would produce empty segments; they contribute nothing.
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<NodeId> all(node_count);
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<Mosaic> mosaics;
  MosaicId next_id = 0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    TimeInterval segment{cuts[s], cuts[s + 1]};
    for (auto& group : random_node_partition(all, 2, rng)) mosaics.emplace_back(next_id++, std::move(group), segment);
  }
  return MosaicPartition{node_count, domain, std::move(mosaics)};
}

bool is_splittable(const Mosaic& m, std::size_t min_nodes, double min_duration) {
  return m.size() >= 2 * min_nodes && m.interval.length() >= 2 * min_duration;
}

std::array<Mosaic, 4> split_mosaic(const Mosaic& m, std::size_t min_nodes, double min_duration, Rng& rng) {
  if (!is_splittable(m, min_nodes, min_duration)) {
    throw ParameterError("mosaic " + std::to_string(m.id) + " (" + std::to_string(m.size()) +
                         " nodes) cannot be split under the size/duration minimums");
  }
  std::vector<NodeId> members = m.members;
  shuffle(members.begin(), members.end(), rng);
  std::size_t cut = uniform_int<std::size_t>(rng, min_nodes, members.size() - min_nodes);
  std::vector<NodeId> left(members.begin(), members.begin() + cut);
  std::vector<NodeId> right(members.begin() + cut, members.end());

  const auto& iv = m.interval;
  double lo = iv.start + min_duration;
  double hi = iv.end - min_duration;
  double t = lo;
  if (lo < hi) {
    do {
      t = uniform_real(rng, lo, hi);
    } while (t <= iv.start);
  }
  TimeInterval early{iv.start, t};
  TimeInterval late{t, iv.end};
  return {Mosaic{m.id, left, early}, Mosaic{m.id, left, late}, Mosaic{m.id, right, early},
          Mosaic{m.id, std::move(right), late}};
}

RandomScenario random_scenario(std::size_t node_count, TimeInterval domain, std::size_t k, std::size_t min_nodes,
                               double min_duration, Rng& rng) {
  if (node_count < 2) throw ParameterError("random scenario needs at least 2 nodes");
  RandomScenario out;
  std::vector<NodeId> all(node_count);
  std::iota(all.begin(), all.end(), NodeId{0});

  // Leaves kept in depth-first order: a split leaf is replaced in place by its children.
  std::vector<Mosaic> leaves{Mosaic{0, std::move(all), domain}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < leaves.size(); ++j)
      if (is_splittable(leaves[j], min_nodes, min_duration)) candidates.push_back(j);
    if (candidates.empty()) {
      out.warnings.push_back("no splittable mosaic left; skipped " + std::to_string(k - i) + " of " +
                             std::to_string(k) + " splits");
      break;
    }
    std::size_t pick = candidates[uniform_int<std::size_t>(rng, 0, candidates.size() - 1)];
    auto children = split_mosaic(leaves[pick], min_nodes, min_duration, rng);
    leaves[pick] = std::move(children[0]);
    leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(pick) + 1, std::make_move_iterator(children.begin() + 1),
                  std::make_move_iterator(children.end()));
    ++out.splits;
  }
  out.leaves = leaves.size();

  std::vector<Mosaic> kept;
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    auto& leaf = leaves[j];
    leaf.id = static_cast<MosaicId>(j);
    if (leaf.size() < min_nodes || leaf.interval.length() < min_duration) {
      ++out.pruned;
      continue;
    }
    kept.push_back(std::move(leaf));
  }
  out.partition = MosaicPartition{node_count, domain, std::move(kept)};
  return out;
}

MosaicPartition empty_mosaics(const MosaicPartition& p, double gamma, Rng& rng) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  std::vector<Mosaic> kept;
  for (const auto& m : p.mosaics())
    if (!bernoulli(rng, gamma)) kept.push_back(m);
  return MosaicPartition{p.node_count(), p.domain(), std::move(kept)};
}

MosaicPartition generate_scenario(const ScenarioParams& params, std::size_t node_count, TimeInterval domain) {
  params.validate();
  Rng scenario_rng = make_rng(derive_seed(params.seed, 1));
  Rng emptying_rng = make_rng(derive_seed(params.seed, 2));
  MosaicPartition base;
  switch (params.kind) {
    case ScenarioKind::kExperimental:
      base = experimental_scenario(params.specs, node_count, domain);
      break;
    case ScenarioKind::kSnapshots:
      base = snapshot_scenario(node_count, domain, params.k, params.window_mode, scenario_rng);
      break;
    case ScenarioKind::kRandom:
      base = random_scenario(node_count, domain, params.k, params.min_nodes, params.min_duration_for(domain),
                             scenario_rng)
                 .partition;
      break;
  }
  return empty_mosaics(base, params.gamma, emptying_rng);
}

}  // namespace mosaic
