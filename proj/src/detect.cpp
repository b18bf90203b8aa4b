#include "mosaic/detect.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "mosaic/errors.hpp"
#include "mosaic/louvain.hpp"
#include "mosaic/random.hpp"

namespace mosaic {

std::string to_string(Method m) {
  switch (m) {
    case Method::kNoSmoothing: return "no_smoothing";
    case Method::kImplicitGlobal: return "implicit_global";
    case Method::kLabelSmoothing: return "label_smoothing";
    case Method::kSmoothedGraph: return "smoothed_graph";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : kAllMethods)
    if (to_string(m) == name) return m;
  throw ParameterError("unknown detection method '" + name + "'");
}

void DetectorConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError("theta must lie in [0, 1]");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in [0, 1]");
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  if (a.empty() && b.empty()) throw ParameterError("jaccard similarity of two empty sets is undefined");
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::vector<std::vector<NodeId>> group_members(std::span<const std::size_t> community, std::size_t count) {
  std::vector<std::vector<NodeId>> groups(count);
  for (std::size_t v = 0; v < community.size(); ++v) groups.at(community[v]).push_back(static_cast<NodeId>(v));
  return groups;
}

std::vector<Label> match_communities(const std::vector<std::vector<NodeId>>& previous,
                                     std::span<const Label> previous_labels,
                                     const std::vector<std::vector<NodeId>>& current, double theta,
                                     Label& next_label) {
  std::map<NodeId, std::size_t> prev_of;
  for (std::size_t p = 0; p < previous.size(); ++p)
    for (NodeId v : previous[p]) prev_of[v] = p;

  struct Candidate {
    double similarity;
    Label prev_label;
    NodeId cur_first;
    std::size_t prev;
    std::size_t cur;
  };
  std::vector<Candidate> candidates;
  for (std::size_t c = 0; c < current.size(); ++c) {
    std::map<std::size_t, bool> seen;
    for (NodeId v : current[c]) {
      auto it = prev_of.find(v);
      if (it == prev_of.end() || !seen.try_emplace(it->second, true).second) continue;
      double sim = jaccard(previous[it->second], current[c]);
      if (sim >= theta) candidates.push_back({sim, previous_labels[it->second], current[c].front(), it->second, c});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return std::tie(a.prev_label, a.cur_first) < std::tie(b.prev_label, b.cur_first);
  });

  std::vector<Label> labels(current.size(), 0);
  std::vector<bool> cur_taken(current.size(), false);
  std::vector<bool> prev_taken(previous.size(), false);
  for (const auto& cand : candidates) {
    if (cur_taken[cand.cur] || prev_taken[cand.prev]) continue;
    cur_taken[cand.cur] = true;
    prev_taken[cand.prev] = true;
    labels[cand.cur] = cand.prev_label;
  }
  for (std::size_t c = 0; c < current.size(); ++c)
    if (!cur_taken[c]) labels[c] = next_label++;
  return labels;
}

namespace {

struct WindowCommunities {
  std::vector<std::vector<NodeId>> groups;
  std::vector<Label> labels;  // per group
};

WindowCommunities run_louvain(const WeightedGraph& g, std::uint64_t seed, std::vector<Label> initial = {}) {
  auto res = louvain(g, {seed, 1.0, std::move(initial)});
  return {group_members(res.community, res.community_count), {}};
}

std::vector<Label> to_node_labels(const WindowCommunities& wc, std::size_t node_count) {
  std::vector<Label> out(node_count, 0);
  for (std::size_t c = 0; c < wc.groups.size(); ++c)
    for (NodeId v : wc.groups[c]) out[v] = wc.labels[c];
  return out;
}

std::uint64_t window_seed(const DetectorConfig& cfg, std::size_t w) { return derive_seed(cfg.seed, w); }

// Greedy one-to-one transfer of previous labels by overlap size, counting
// only nodes present in the current window.
std::vector<Label> carry_labels(const std::vector<std::vector<NodeId>>& groups, std::span<const Label> prev_node_labels,
                                std::span<const double> strength, Label& next_label) {
  struct Candidate {
    std::size_t overlap;
    Label label;
    std::size_t group;
  };
  std::vector<Candidate> candidates;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    std::map<Label, std::size_t> counts;
    for (NodeId v : groups[c])
      if (strength[v] > 0.0) ++counts[prev_node_labels[v]];
    for (const auto& [label, n] : counts) candidates.push_back({n, label, c});
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return std::tie(a.label, groups[a.group].front()) < std::tie(b.label, groups[b.group].front());
  });
  std::vector<Label> labels(groups.size(), 0);
  std::vector<bool> done(groups.size(), false);
  std::map<Label, bool> used;
  for (const auto& cand : candidates) {
    if (done[cand.group] || used.contains(cand.label)) continue;
    done[cand.group] = true;
    used[cand.label] = true;
    labels[cand.group] = cand.label;
  }
  for (std::size_t c = 0; c < groups.size(); ++c)
    if (!done[c]) labels[c] = next_label++;
  return labels;
}

DynamicPartition matched_sequence(const SnapshotSequence& s, const DetectorConfig& cfg,
                                  const std::vector<std::vector<std::vector<NodeId>>>& per_window) {
  DynamicPartition d{s.node_count, {}};
  Label next_label = 0;
  WindowCommunities prev;
  for (std::size_t w = 0; w < per_window.size(); ++w) {
    WindowCommunities cur{per_window[w], {}};
    if (w == 0) {
      for (std::size_t c = 0; c < cur.groups.size(); ++c) cur.labels.push_back(next_label++);
    } else {
      cur.labels = match_communities(prev.groups, prev.labels, cur.groups, cfg.theta, next_label);
    }
    d.labels.push_back(to_node_labels(cur, s.node_count));
    prev = std::move(cur);
  }
  return d;
}

}  // namespace

DynamicPartition detect_no_smoothing(const SnapshotSequence& s, const DetectorConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<std::vector<NodeId>>> per_window;
  for (std::size_t w = 0; w < s.window_count(); ++w)
    per_window.push_back(run_louvain(s.graphs[w], window_seed(cfg, w)).groups);
  return matched_sequence(s, cfg, per_window);
}

DynamicPartition detect_implicit_global(const SnapshotSequence& s, const DetectorConfig& cfg) {
  cfg.validate();
  DynamicPartition d{s.node_count, {}};
  Label next_label = 0;
  for (std::size_t w = 0; w < s.window_count(); ++w) {
    const auto& g = s.graphs[w];
    WindowCommunities cur;
    if (w == 0) {
      cur = run_louvain(g, window_seed(cfg, w));
      for (std::size_t c = 0; c < cur.groups.size(); ++c) cur.labels.push_back(next_label++);
    } else {
      const auto& prev = d.labels.back();
      auto strength = g.strengths();
      // present nodes keep their previous community as seed; absent ones start alone
      std::vector<Label> seed(s.node_count);
      Label lone = prev.empty() ? 0 : *std::max_element(prev.begin(), prev.end()) + 1;
      for (std::size_t v = 0; v < s.node_count; ++v) seed[v] = strength[v] > 0.0 ? prev[v] : lone++;
      cur = run_louvain(g, window_seed(cfg, w), std::move(seed));
      cur.labels = carry_labels(cur.groups, prev, strength, next_label);
    }
    d.labels.push_back(to_node_labels(cur, s.node_count));
  }
  return d;
}

DynamicPartition detect_label_smoothing(const SnapshotSequence& s, const DetectorConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<std::vector<NodeId>>> per_window;
  std::vector<std::size_t> offset{0};
  for (std::size_t w = 0; w < s.window_count(); ++w) {
    per_window.push_back(run_louvain(s.graphs[w], window_seed(cfg, w)).groups);
    offset.push_back(offset.back() + per_window.back().size());
  }

  // survival graph: one vertex per (window, community)
  std::vector<WeightedEdge> entries;
  for (std::size_t w = 0; w + 1 < per_window.size(); ++w) {
    std::map<NodeId, std::size_t> prev_of;
    for (std::size_t p = 0; p < per_window[w].size(); ++p)
      for (NodeId v : per_window[w][p]) prev_of[v] = p;
    for (std::size_t c = 0; c < per_window[w + 1].size(); ++c) {
      std::map<std::size_t, bool> seen;
      for (NodeId v : per_window[w + 1][c]) {
        std::size_t p = prev_of.at(v);
        if (!seen.try_emplace(p, true).second) continue;
        double sim = jaccard(per_window[w][p], per_window[w + 1][c]);
        if (sim >= cfg.theta && sim > 0.0) {
          entries.push_back({static_cast<NodeId>(offset[w] + p), static_cast<NodeId>(offset[w + 1] + c), sim});
        }
      }
    }
  }
  auto survival = WeightedGraph::from_entries(offset.back(), std::move(entries));
  auto dynamic = louvain(survival, {derive_seed(cfg.seed, s.window_count()), 1.0, {}});

  DynamicPartition d{s.node_count, {}};
  for (std::size_t w = 0; w < per_window.size(); ++w) {
    std::vector<Label> labels(s.node_count, 0);
    for (std::size_t c = 0; c < per_window[w].size(); ++c)
      for (NodeId v : per_window[w][c]) labels[v] = static_cast<Label>(dynamic.community[offset[w] + c]);
    d.labels.push_back(std::move(labels));
  }
  return d;
}

DynamicPartition detect_smoothed_graph(const SnapshotSequence& s, const DetectorConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<std::vector<NodeId>>> per_window;
  for (std::size_t w = 0; w < s.window_count(); ++w) {
    const auto& g = s.graphs[w];
    if (w == 0) {
      per_window.push_back(run_louvain(g, window_seed(cfg, w)).groups);
      continue;
    }
    // rho * A / max(A) + (1 - rho) * C, scaled by max(A) so that rho = 1
    // reproduces A exactly
    double max_w = 0.0;
    for (const auto& e : g.edges) max_w = std::max(max_w, e.weight);
    double scale = max_w > 0.0 ? max_w : 1.0;
    std::vector<WeightedEdge> entries;
    if (cfg.rho > 0.0)
      for (const auto& e : g.edges) entries.push_back({e.u, e.v, cfg.rho * e.weight});
    if (cfg.rho < 1.0) {
      for (const auto& group : per_window.back())
        for (std::size_t i = 0; i < group.size(); ++i)
          for (std::size_t j = i + 1; j < group.size(); ++j)
            entries.push_back({group[i], group[j], (1.0 - cfg.rho) * scale});
    }
    auto blended = WeightedGraph::from_entries(s.node_count, std::move(entries));
    per_window.push_back(run_louvain(blended, window_seed(cfg, w)).groups);
  }
  return matched_sequence(s, cfg, per_window);
}

DynamicPartition detect(const SnapshotSequence& s, const DetectorConfig& cfg) {
  switch (cfg.method) {
    case Method::kNoSmoothing: return detect_no_smoothing(s, cfg);
    case Method::kImplicitGlobal: return detect_implicit_global(s, cfg);
    case Method::kLabelSmoothing: return detect_label_smoothing(s, cfg);
    case Method::kSmoothedGraph: return detect_smoothed_graph(s, cfg);
  }
  throw ParameterError("unknown detection method");
}

}  // namespace mosaic
