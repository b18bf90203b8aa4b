#include "mosaic/edgegen.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mosaic/errors.hpp"

namespace mosaic {

namespace {

constexpr std::uint64_t kEdgeStream = 0x65646765;    // "edge"
constexpr std::uint64_t kRewireStream = 0x72657769;  // "rewi"

void check_rate(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw ParameterError("rates must be finite and non-negative");
}

std::pair<MosaicId, MosaicId> pair_key(MosaicId a, MosaicId b) { return std::minmax(a, b); }

}  // namespace

MosaicRates::MosaicRates(double uniform) : uniform_(uniform) { check_rate(uniform); }

void MosaicRates::set(MosaicId id, double rate) {
  check_rate(rate);
  per_mosaic_[id] = rate;
}

double MosaicRates::at(MosaicId id) const {
  auto it = per_mosaic_.find(id);
  return it == per_mosaic_.end() ? uniform_ : it->second;
}

PairRates::PairRates(double uniform) : uniform_(uniform) { check_rate(uniform); }

void PairRates::set(MosaicId a, MosaicId b, double rate) {
  check_rate(rate);
  auto key = pair_key(a, b);
  auto it = per_pair_.find(key);
  if (it != per_pair_.end() && it->second != rate) {
    throw ParameterError("asymmetric external rate for mosaics " + std::to_string(a) + " and " + std::to_string(b));
  }
  per_pair_[key] = rate;
}

double PairRates::at(MosaicId a, MosaicId b) const {
  auto it = per_pair_.find(pair_key(a, b));
  return it == per_pair_.end() ? uniform_ : it->second;
}

void EdgeGenParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in [0, 1]");
}

double internal_probability(std::size_t n, double alpha) {
  if (n < 2) throw ParameterError("internal probability needs a community of at least 2 nodes");
  return std::pow(static_cast<double>(n - 1), alpha - 1.0);
}

double external_probability(std::size_t n1, std::size_t n2, double alpha, double beta) {
  if (n1 < 1 || n2 < 1) throw ParameterError("external probability needs non-empty communities");
  if (beta == 0.0) return 0.0;
  return beta * std::pow(static_cast<double>(n1 + n2 - 1), alpha - 1.0);
}

std::vector<BackboneEdge> backbone(std::span<const NodeId> side_a, std::span<const NodeId> side_b, double p,
                                   Context context, TimeInterval window, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("backbone probability must lie in [0, 1]");
  std::vector<BackboneEdge> out;
  if (p == 0.0) return out;
  bool internal = std::equal(side_a.begin(), side_a.end(), side_b.begin(), side_b.end());
  for (std::size_t i = 0; i < side_a.size(); ++i) {
    for (std::size_t j = internal ? i + 1 : 0; j < side_b.size(); ++j) {
      if (side_a[i] == side_b[j]) continue;
      if (bernoulli(rng, p)) out.push_back({side_a[i], side_b[j], context, window});
    }
  }
  return out;
}

std::vector<double> poisson_timestamps(TimeInterval window, double rate, Rng& rng) {
  check_rate(rate);
  auto n = poisson(rng, window.length() * rate);
  std::vector<double> times(n);
  for (auto& t : times) t = uniform_real(rng, window.start, window.end);
  std::sort(times.begin(), times.end());
  return times;
}

namespace {

struct Job {
  const Mosaic* a;
  const Mosaic* b;
  TimeInterval window;
};

std::vector<Job> build_jobs(const MosaicPartition& p) {
  std::vector<Job> jobs;
  auto ms = p.mosaics();
  for (const auto& m : ms) jobs.push_back({&m, &m, m.interval});
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (auto overlap = ms[i].interval.intersect(ms[j].interval)) {
        const Mosaic* a = &ms[i];
        const Mosaic* b = &ms[j];
        if (b->id < a->id) std::swap(a, b);
        jobs.push_back({a, b, *overlap});
      }
    }
  }
  return jobs;
}

void run_job(const Job& job, const EdgeGenParams& params, std::vector<TemporalEdge>& out) {
  Context ctx{job.a->id, job.b->id};
  bool internal = job.a == job.b;
  double prob;
  double rate;
  if (internal) {
    if (job.a->size() < 2) return;
    prob = internal_probability(job.a->size(), params.alpha);
    rate = params.lambda_in.at(ctx.first);
  } else {
    prob = external_probability(job.a->size(), job.b->size(), params.alpha, params.beta);
    rate = params.lambda_ext.at(ctx.first, ctx.second);
  }
  if (prob == 0.0 || rate == 0.0) return;
  Rng rng = make_rng(derive_seed(derive_seed(params.seed, kEdgeStream), static_cast<std::uint64_t>(ctx.first),
                                 static_cast<std::uint64_t>(ctx.second)));
  for (const auto& e : backbone(job.a->members, job.b->members, prob, ctx, job.window, rng)) {
    for (double t : poisson_timestamps(e.window, rate, rng)) out.emplace_back(e.u, e.v, t);
  }
}

}  // namespace

LinkStream generate_edges(const MosaicPartition& p, const EdgeGenParams& params, unsigned threads) {
  params.validate();
  auto jobs = build_jobs(p);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));

  std::vector<std::vector<TemporalEdge>> parts(threads);
  if (threads == 1) {
    for (const auto& job : jobs) run_job(job, params, parts[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += threads) run_job(jobs[i], params, parts[w]);
      });
    }
  }
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<TemporalEdge> edges;
  edges.reserve(total);
  for (auto& part : parts) edges.insert(edges.end(), part.begin(), part.end());
  return LinkStream{p.node_count(), p.domain(), std::move(edges)};
}

double expected_edge_count(const MosaicPartition& p, const EdgeGenParams& params) {
  params.validate();
  double total = 0.0;
  for (const auto& job : build_jobs(p)) {
    if (job.a == job.b) {
      double n = static_cast<double>(job.a->size());
      if (n < 2) continue;
      total += n * (n - 1) / 2.0 * internal_probability(job.a->size(), params.alpha) * job.window.length() *
               params.lambda_in.at(job.a->id);
    } else {
      total += static_cast<double>(job.a->size() * job.b->size()) *
               external_probability(job.a->size(), job.b->size(), params.alpha, params.beta) * job.window.length() *
               params.lambda_ext.at(job.a->id, job.b->id);
    }
  }
  return total;
}

LinkStream rewire(const LinkStream& ls, const MosaicPartition& p, double eta, Rng& rng) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in [0, 1]");
  if (eta == 0.0 || ls.size() == 0) return ls;

  struct Cell {
    const Mosaic* a;
    const Mosaic* b;
    TimeInterval window;
  };
  std::vector<Cell> cells;
  auto ms = p.mosaics();
  for (const auto& a : ms) {
    for (const auto& b : ms) {
      // need some u in a, v in b with u != v
      if (a.size() == 1 && b.size() == 1 && a.members[0] == b.members[0]) continue;
      if (auto overlap = a.interval.intersect(b.interval)) cells.push_back({&a, &b, *overlap});
    }
  }

  std::vector<TemporalEdge> out;
  out.reserve(ls.size());
  for (const auto& e : ls.edges()) {
    if (!bernoulli(rng, eta)) {
      out.push_back(e);
      continue;
    }
    if (cells.empty()) throw GenerationError("rewiring needs at least one mosaic pair with overlapping intervals");
    const auto& cell = cells[uniform_int<std::size_t>(rng, 0, cells.size() - 1)];
    NodeId u = 0;
    NodeId v = 0;
    do {
      u = cell.a->members[uniform_int<std::size_t>(rng, 0, cell.a->size() - 1)];
      v = cell.b->members[uniform_int<std::size_t>(rng, 0, cell.b->size() - 1)];
    } while (u == v);
    out.emplace_back(u, v, uniform_real(rng, cell.window.start, cell.window.end));
  }
  return LinkStream{ls.node_count(), ls.domain(), std::move(out)};
}

EdgeBreakdown classify_edges(const LinkStream& ls, const MosaicPartition& p) {
  MembershipIndex index(p);
  EdgeBreakdown out;
  for (const auto& e : ls.edges()) {
    MosaicId a = index.at(e.u, e.t);
    MosaicId b = index.at(e.v, e.t);
    if (a == kEmptyMosaic || b == kEmptyMosaic)
      ++out.empty;
    else if (a == b)
      ++out.internal;
    else
      ++out.external;
  }
  return out;
}

LinkStream generate_link_stream(const MosaicPartition& p, const EdgeGenParams& params, unsigned threads) {
  auto ls = generate_edges(p, params, threads);
  if (params.eta == 0.0) return ls;
  Rng rng = make_rng(derive_seed(params.seed, kRewireStream));
  return rewire(ls, p, params.eta, rng);
}

}  // namespace mosaic
