#pragma once

#include <iosfwd>
#include <string>

#include "hsc/hypergraph.hpp"

namespace hsc {

/// Edge-list text format:
///   first line "n d"; then one edge per line "i1 i2 ... id w" with
///   1-based ids and w a decimal in [0,1]. A trailing "x" instead of a
///   weight records an explicit erasure (stored unobserved). Lines
///   starting with '#' are comments; unlisted edges have weight 0.
WeightedHypergraph parse_hypergraph(std::istream& in);
WeightedHypergraph parse_hypergraph_file(const std::string& path);

/// Edges emitted in lexicographic order; byte-identical across runs.
void serialize_hypergraph(const WeightedHypergraph& h, std::ostream& out);
std::string serialize_hypergraph(const WeightedHypergraph& h);

/// Partition format: one line per node, "i label".
Partition parse_partition(std::istream& in);
Partition parse_partition_file(const std::string& path);
void serialize_partition(const Partition& p, std::ostream& out);

} // namespace hsc
