#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypersub/hypergraph.hpp"

namespace hypersub {

// Text format: one hyperedge per line, whitespace-separated vertex tokens.
// Lines whose first non-blank character is '#' and blank lines are skipped.
// Tokens are mapped to dense ids in order of first appearance.
struct EdgeListData {
    Hypergraph graph;
    std::vector<std::string> vertex_names;  // id -> token
    std::size_t lines_read = 0;             // edge lines, before dedup
    std::size_t duplicate_edges = 0;        // lines equal (as sets) to an earlier line
};

// Throws InputError naming the line when a line repeats a token.
EdgeListData read_edge_list(std::istream& in);
EdgeListData read_edge_list_file(const std::string& path);

// Writes vertex ids, or tokens when `names` is non-empty.
void write_edge_list(std::ostream& out, const Hypergraph& h,
                     const std::vector<std::string>& names = {});
void write_edge_list_file(const std::string& path, const Hypergraph& h,
                          const std::vector<std::string>& names = {});

}  // namespace hypersub
