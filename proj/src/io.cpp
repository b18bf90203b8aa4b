#include "mosaic/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "mosaic/errors.hpp"

namespace mosaic {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

template <class T>
bool parse_field(std::string_view s, T& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

void write_edges_csv(std::ostream& os, const LinkStream& ls) {
  os << "u,v,t\n";
  for (const auto& e : ls.edges()) os << e.u << ',' << e.v << ',' << format_double(e.t) << '\n';
}

std::vector<TemporalEdge> read_edges_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw ParseError("empty edges file, expected header 'u,v,t'", 1);
  ++lineno;
  if (line != "u,v,t") throw ParseError("expected header 'u,v,t'", lineno);
  std::vector<TemporalEdge> edges;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split(line, ',');
    NodeId u = 0;
    NodeId v = 0;
    double t = 0.0;
    if (fields.size() != 3 || !parse_field(fields[0], u) || !parse_field(fields[1], v) || !parse_field(fields[2], t)) {
      throw ParseError("malformed edge '" + line + "'", lineno);
    }
    if (u == v) throw ParseError("self-loop on node " + std::to_string(u), lineno);
    edges.emplace_back(u, v, t);
  }
  return edges;
}

json partition_to_json(const MosaicPartition& p) {
  json mosaics = json::array();
  for (const auto& m : p.mosaics()) {
    mosaics.push_back({{"id", m.id}, {"nodes", m.members}, {"t_start", m.interval.start}, {"t_end", m.interval.end}});
  }
  return {{"nodes", p.node_count()},
          {"t_start", p.domain().start},
          {"t_end", p.domain().end},
          {"mosaics", std::move(mosaics)}};
}

MosaicPartition partition_from_json(const json& j) {
  try {
    auto n = j.at("nodes").get<std::size_t>();
    TimeInterval domain{j.at("t_start").get<double>(), j.at("t_end").get<double>()};
    std::vector<Mosaic> mosaics;
    for (const auto& m : j.at("mosaics")) {
      mosaics.emplace_back(m.at("id").get<MosaicId>(), m.at("nodes").get<std::vector<NodeId>>(),
                           TimeInterval{m.at("t_start").get<double>(), m.at("t_end").get<double>()});
    }
    return MosaicPartition{n, domain, std::move(mosaics)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("ground truth: ") + e.what());
  } catch (const ParameterError& e) {
    throw ParseError(std::string("ground truth: ") + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_truth(std::ostream& os, const MosaicPartition& p) { os << dump_json(partition_to_json(p)); }

MosaicPartition read_truth(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("ground truth is not valid JSON: ") + e.what());
  }
  return partition_from_json(j);
}

void write_snapshots_csv(std::ostream& os, const SnapshotSequence& s) {
  os << "window,t_start,t_end,u,v,weight\n";
  for (std::size_t w = 0; w < s.window_count(); ++w) {
    auto ts = format_double(s.boundaries[w]);
    auto te = format_double(s.boundaries[w + 1]);
    for (const auto& e : s.graphs[w].edges)
      os << w << ',' << ts << ',' << te << ',' << e.u << ',' << e.v << ',' << format_double(e.weight) << '\n';
  }
}

void write_partition_csv(std::ostream& os, const DynamicPartition& d) {
  os << "window,node,label\n";
  for (std::size_t w = 0; w < d.window_count(); ++w)
    for (std::size_t v = 0; v < d.node_count; ++v) os << w << ',' << v << ',' << d.labels[w][v] << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

}  // namespace mosaic
