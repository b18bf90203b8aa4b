#include "mosaic/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "mosaic/errors.hpp"

namespace mosaic {

TimeInterval::TimeInterval(double s, double e) : start(s), end(e) {
  if (!(s < e) || !std::isfinite(s) || !std::isfinite(e)) {
    std::ostringstream os;
    os << "invalid time interval [" << s << ", " << e << ")";
    throw ParameterError(os.str());
  }
}

std::optional<TimeInterval> TimeInterval::intersect(const TimeInterval& other) const {
  double s = std::max(start, other.start);
  double e = std::min(end, other.end);
  if (!(s < e)) return std::nullopt;
  return TimeInterval{s, e};
}

TemporalEdge::TemporalEdge(NodeId a, NodeId b, double time) : u(std::min(a, b)), v(std::max(a, b)), t(time) {
  if (a == b) throw ParameterError("self-loop on node " + std::to_string(a));
}

bool edge_less(const TemporalEdge& a, const TemporalEdge& b) noexcept {
  if (a.t != b.t) return a.t < b.t;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

LinkStream::LinkStream(std::size_t node_count, TimeInterval domain, std::vector<TemporalEdge> edges)
    : node_count_(node_count), domain_(domain), edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (e.v >= node_count_) {
      throw DomainError("edge endpoint " + std::to_string(e.v) + " outside node set of size " +
                        std::to_string(node_count_));
    }
    if (!domain_.contains(e.t)) {
      std::ostringstream os;
      os << "edge time " << e.t << " outside domain [" << domain_.start << ", " << domain_.end << ")";
      throw DomainError(os.str());
    }
  }
  std::sort(edges_.begin(), edges_.end(), edge_less);
}

Mosaic::Mosaic(MosaicId i, std::vector<NodeId> m, TimeInterval iv) : id(i), members(std::move(m)), interval(iv) {
  if (members.empty()) throw ParameterError("mosaic " + std::to_string(id) + " has no members");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool Mosaic::has_member(NodeId node) const noexcept {
  return std::binary_search(members.begin(), members.end(), node);
}

MosaicPartition::MosaicPartition(std::size_t node_count, TimeInterval domain, std::vector<Mosaic> mosaics)
    : node_count_(node_count), domain_(domain), mosaics_(std::move(mosaics)) {}

const Mosaic* MosaicPartition::find(MosaicId id) const noexcept {
  for (const auto& m : mosaics_)
    if (m.id == id) return &m;
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (ok()) {
    os << "ok";
  } else {
    os << violations.size() << " violation(s)";
    for (const auto& v : violations) os << "\n  " << v.message;
  }
  for (const auto& w : warnings) os << "\n  warning: " << w;
  return os.str();
}

ValidationReport validate_partition(const MosaicPartition& p) {
  ValidationReport report;
  const auto& dom = p.domain();

  std::map<MosaicId, int> id_count;
  for (const auto& m : p.mosaics()) ++id_count[m.id];
  for (const auto& [id, n] : id_count) {
    if (n > 1) {
      report.violations.push_back({Violation::Kind::kDuplicateId, id, id,
                                   "mosaic id " + std::to_string(id) + " used " + std::to_string(n) + " times"});
    }
  }

  struct Cell {
    TimeInterval interval;
    MosaicId id;
  };
  std::vector<std::vector<Cell>> per_node(p.node_count());
  std::set<MosaicId> out_of_domain;
  for (const auto& m : p.mosaics()) {
    bool bad = !dom.contains(m.interval);
    for (NodeId v : m.members) {
      if (v >= p.node_count()) {
        bad = true;
        continue;
      }
      per_node[v].push_back({m.interval, m.id});
    }
    if (bad) out_of_domain.insert(m.id);
    if (m.members.size() == 1) report.warnings.push_back("mosaic " + std::to_string(m.id) + " is a singleton");
  }
  for (MosaicId id : out_of_domain) {
    report.violations.push_back(
        {Violation::Kind::kOutOfDomain, id, id, "mosaic " + std::to_string(id) + " lies outside V x T"});
  }

  // pair -> (witness node, overlap)
  std::map<std::pair<MosaicId, MosaicId>, std::pair<NodeId, TimeInterval>> overlaps;
  for (NodeId v = 0; v < per_node.size(); ++v) {
    auto& cells = per_node[v];
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
      return std::tie(a.interval.start, a.id) < std::tie(b.interval.start, b.id);
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size() && cells[j].interval.start < cells[i].interval.end; ++j) {
        auto key = std::minmax(cells[i].id, cells[j].id);
        if (!overlaps.contains(key)) overlaps.emplace(key, std::pair{v, *cells[i].interval.intersect(cells[j].interval)});
      }
    }
  }
  for (const auto& [key, witness] : overlaps) {
    std::ostringstream os;
    os << "mosaics " << key.first << " and " << key.second << " overlap at node " << witness.first << " on ["
       << witness.second.start << ", " << witness.second.end << ")";
    report.violations.push_back({Violation::Kind::kOverlap, key.first, key.second, os.str()});
  }

  std::sort(report.violations.begin(), report.violations.end());
  std::sort(report.warnings.begin(), report.warnings.end());
  return report;
}

void require_valid(const MosaicPartition& p) {
  auto report = validate_partition(p);
  if (!report.ok()) throw ValidationError(report.summary());
}

namespace {

void check_query(std::size_t node_count, const TimeInterval& dom, NodeId node, double t) {
  if (node >= node_count) throw DomainError("node " + std::to_string(node) + " outside node set");
  if (!dom.contains(t)) {
    std::ostringstream os;
    os << "time " << t << " outside domain [" << dom.start << ", " << dom.end << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

MosaicId membership(const MosaicPartition& p, NodeId node, double t) {
  check_query(p.node_count(), p.domain(), node, t);
  for (const auto& m : p.mosaics())
    if (m.interval.contains(t) && m.has_member(node)) return m.id;
  return kEmptyMosaic;
}

std::vector<double> time_breakpoints(const MosaicPartition& p) {
  std::vector<double> out{p.domain().start, p.domain().end};
  for (const auto& m : p.mosaics()) {
    out.push_back(m.interval.start);
    out.push_back(m.interval.end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MembershipIndex::MembershipIndex(const MosaicPartition& p) : domain_(p.domain()), per_node_(p.node_count()) {
  for (const auto& m : p.mosaics())
    for (NodeId v : m.members)
      if (v < per_node_.size()) per_node_[v].push_back({m.interval, m.id});
  for (auto& spans : per_node_) {
    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.interval.start < b.interval.start; });
  }
}

MosaicId MembershipIndex::at(NodeId node, double t) const {
  check_query(per_node_.size(), domain_, node, t);
  const auto& spans = per_node_[node];
  auto it = std::upper_bound(spans.begin(), spans.end(), t,
                             [](double x, const Span& s) { return x < s.interval.start; });
  if (it == spans.begin()) return kEmptyMosaic;
  --it;
  return it->interval.contains(t) ? it->id : kEmptyMosaic;
}

}  // namespace mosaic
