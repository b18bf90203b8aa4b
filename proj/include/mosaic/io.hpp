#pragma once

// File formats. All text output is UTF-8 with LF line endings.
//
//   edges      CSV "u,v,t", u < v, sorted by (t, u, v), t in shortest
//              round-trip decimal form
//   truth      JSON {nodes, t_start, t_end, mosaics: [{id, nodes, t_start, t_end}]}
//   snapshots  CSV "window,t_start,t_end,u,v,weight"
//   partition  CSV "window,node,label"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mosaic/core.hpp"
#include "mosaic/snapshot.hpp"

namespace mosaic {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

void write_edges_csv(std::ostream& os, const LinkStream& ls);
/// Parses an edges file. Throws ParseError naming the offending line.
std::vector<TemporalEdge> read_edges_csv(std::istream& is);

nlohmann::json partition_to_json(const MosaicPartition& p);
/// Throws ParseError on missing or mistyped fields.
MosaicPartition partition_from_json(const nlohmann::json& j);

void write_truth(std::ostream& os, const MosaicPartition& p);
MosaicPartition read_truth(std::istream& is);

void write_snapshots_csv(std::ostream& os, const SnapshotSequence& s);
void write_partition_csv(std::ostream& os, const DynamicPartition& d);

/// Pretty-printed JSON document followed by a newline.
std::string dump_json(const nlohmann::json& j);

/// Whole-file helpers; throw IoError on failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mosaic
