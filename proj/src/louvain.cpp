#include "mosaic/louvain.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "mosaic/errors.hpp"
#include "mosaic/random.hpp"

namespace mosaic {

namespace {

// Level graph in CSR form. loop[i] holds twice the internal weight of the
// community node i stands for, so that strength[i] = loop[i] + sum of
// neighbor weights.
struct Level {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> targets;
  std::vector<double> weights;
  std::vector<double> loop;
  std::vector<double> strength;
};

Level from_graph(const WeightedGraph& g) {
  Level lv;
  lv.n = g.node_count;
  std::vector<std::size_t> degree(lv.n, 0);
  for (const auto& e : g.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  lv.offsets.assign(lv.n + 1, 0);
  for (std::size_t i = 0; i < lv.n; ++i) lv.offsets[i + 1] = lv.offsets[i] + degree[i];
  lv.targets.resize(lv.offsets.back());
  lv.weights.resize(lv.offsets.back());
  std::vector<std::size_t> fill(lv.offsets.begin(), lv.offsets.end() - 1);
  for (const auto& e : g.edges) {
    lv.targets[fill[e.u]] = e.v;
    lv.weights[fill[e.u]++] = e.weight;
    lv.targets[fill[e.v]] = e.u;
    lv.weights[fill[e.v]++] = e.weight;
  }
  lv.loop.assign(lv.n, 0.0);
  lv.strength = g.strengths();
  return lv;
}

Level aggregate_level(const Level& lv, std::span<const std::size_t> comm, std::size_t k) {
  Level out;
  out.n = k;
  out.loop.assign(k, 0.0);
  out.strength.assign(k, 0.0);
  std::vector<std::unordered_map<std::size_t, double>> adj(k);
  for (std::size_t i = 0; i < lv.n; ++i) {
    std::size_t ci = comm[i];
    out.loop[ci] += lv.loop[i];
    out.strength[ci] += lv.strength[i];
    for (std::size_t p = lv.offsets[i]; p < lv.offsets[i + 1]; ++p) {
      std::size_t cj = comm[lv.targets[p]];
      if (ci == cj)
        out.loop[ci] += lv.weights[p];  // seen from both endpoints: adds 2w
      else
        adj[ci][cj] += lv.weights[p];
    }
  }
  out.offsets.assign(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) out.offsets[c + 1] = out.offsets[c] + adj[c].size();
  out.targets.reserve(out.offsets.back());
  out.weights.reserve(out.offsets.back());
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::pair<std::size_t, double>> row(adj[c].begin(), adj[c].end());
    std::sort(row.begin(), row.end());
    for (const auto& [t, w] : row) {
      out.targets.push_back(t);
      out.weights.push_back(w);
    }
  }
  return out;
}

double level_modularity(const Level& lv, std::span<const std::size_t> comm, double m2, double resolution) {
  if (m2 <= 0.0) return 0.0;
  std::size_t k = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
  std::vector<double> in(k, 0.0);
  std::vector<double> tot(k, 0.0);
  for (std::size_t i = 0; i < lv.n; ++i) {
    in[comm[i]] += lv.loop[i];
    tot[comm[i]] += lv.strength[i];
    for (std::size_t p = lv.offsets[i]; p < lv.offsets[i + 1]; ++p)
      if (comm[lv.targets[p]] == comm[i]) in[comm[i]] += lv.weights[p];
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) q += in[c] / m2 - resolution * (tot[c] / m2) * (tot[c] / m2);
  return q;
}

// Renumbers comm in place to 0..k-1 by first occurrence; returns k.
std::size_t renumber(std::vector<std::size_t>& comm) {
  std::unordered_map<std::size_t, std::size_t> map;
  for (auto& c : comm) c = map.try_emplace(c, map.size()).first->second;
  return map.size();
}

// One local-moving phase. Returns true if any node moved.
bool local_moving(const Level& lv, std::vector<std::size_t>& comm, double m2, double resolution, Rng& rng) {
  std::vector<double> tot(lv.n, 0.0);
  for (std::size_t i = 0; i < lv.n; ++i) tot[comm[i]] += lv.strength[i];

  std::vector<std::size_t> order(lv.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> link(lv.n, 0.0);
  std::vector<std::size_t> touched;
  bool any = false;
  constexpr double kEps = 1e-12;

  for (;;) {
    shuffle(order.begin(), order.end(), rng);
    std::size_t moves = 0;
    for (std::size_t i : order) {
      std::size_t own = comm[i];
      double ki = lv.strength[i];
      for (std::size_t p = lv.offsets[i]; p < lv.offsets[i + 1]; ++p) {
        std::size_t c = comm[lv.targets[p]];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += lv.weights[p];
      }
      tot[own] -= ki;
      double best_gain = link[own] - resolution * tot[own] * ki / m2;
      std::size_t best = own;
      for (std::size_t c : touched) {
        if (c == own) continue;
        double gain = link[c] - resolution * tot[c] * ki / m2;
        if (gain > best_gain + kEps) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += ki;
      if (best != own) {
        comm[i] = best;
        ++moves;
      }
      for (std::size_t c : touched) link[c] = 0.0;
      link[own] = 0.0;
      touched.clear();
    }
    if (moves == 0) break;
    any = true;
  }
  return any;
}

}  // namespace

std::vector<std::size_t> densify(std::span<const Label> labels) {
  std::unordered_map<Label, std::size_t> map;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = map.try_emplace(labels[i], map.size()).first->second;
  return out;
}

double modularity(const WeightedGraph& g, std::span<const std::size_t> community, double resolution) {
  if (community.size() != g.node_count) throw ParameterError("labeling size differs from node count");
  Level lv = from_graph(g);
  std::vector<std::size_t> comm(community.begin(), community.end());
  renumber(comm);
  return level_modularity(lv, comm, 2.0 * g.total_weight(), resolution);
}

double modularity(const WeightedGraph& g, std::span<const Label> labels, double resolution) {
  auto dense = densify(labels);
  return modularity(g, std::span<const std::size_t>(dense), resolution);
}

LouvainResult louvain(const WeightedGraph& g, const LouvainOptions& options) {
  const std::size_t n = g.node_count;
  LouvainResult result;
  std::vector<std::size_t> node_comm(n);
  if (options.initial.empty()) {
    std::iota(node_comm.begin(), node_comm.end(), std::size_t{0});
  } else {
    if (options.initial.size() != n) throw ParameterError("initial labeling size differs from node count");
    node_comm = densify(options.initial);
  }

  Level lv = from_graph(g);
  const double m2 = 2.0 * g.total_weight();
  // level node holding each original node
  std::vector<std::size_t> node_level(n);
  std::iota(node_level.begin(), node_level.end(), std::size_t{0});
  std::vector<std::size_t> comm = node_comm;
  renumber(comm);
  result.modularity_trace.push_back(level_modularity(lv, comm, m2, options.resolution));

  if (m2 > 0.0) {
    Rng rng = make_rng(options.seed);
    for (;;) {
      bool moved = local_moving(lv, comm, m2, options.resolution, rng);
      std::size_t k = renumber(comm);
      for (auto& c : node_level) c = comm[c];
      result.modularity_trace.push_back(level_modularity(lv, comm, m2, options.resolution));
      if (!moved && k == lv.n) break;
      lv = aggregate_level(lv, comm, k);
      comm.resize(k);
      std::iota(comm.begin(), comm.end(), std::size_t{0});
    }
  } else {
    node_level = comm;
  }
  result.community_count = renumber(node_level);
  result.community = std::move(node_level);
  return result;
}

}  // namespace mosaic
