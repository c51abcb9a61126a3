#pragma once

#include "regracut/graph.hpp"
#include "regracut/partition.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace regracut {

using AnyGraph = std::variant<ColoredGraph, Digraph>;

// Text formats, LF line endings, 0-indexed vertices, u < v on every line:
//
//   rgraph <r> <n>            digraph <n>
//   <u> <v> <color>           <u> <v> <none|bi|fwd|back>
//
// One line per unordered pair, pairs in lexicographic order when written.

void write_rgraph(std::ostream & out, const ColoredGraph & g);
void write_digraph(std::ostream & out, const Digraph & g);
void write_graph(std::ostream & out, const AnyGraph & g);

/// Parses either format, dispatching on the header word. Throws ParseError
/// for malformed text and the graph constructors' errors for incomplete
/// colorings.
AnyGraph read_graph(std::istream & in);

std::string to_text(const AnyGraph & g);
AnyGraph graph_from_text(const std::string & text);

AnyGraph load_graph(const std::filesystem::path & path);
void save_graph(const std::filesystem::path & path, const AnyGraph & g);

/// Partition files hold a JSON array of arrays of vertex indices.
std::vector<VertexSet> parse_vertex_sets(const std::string & json_text);
std::string vertex_sets_to_json(const std::vector<VertexSet> & sets);
std::vector<VertexSet> load_vertex_sets(const std::filesystem::path & path);

std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, const std::string & content);

} // namespace regracut
