#include "hypersub/edge_list.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "hypersub/error.hpp"

namespace hypersub {

EdgeListData read_edge_list(std::istream& in) {
    EdgeListData data;
    std::unordered_map<std::string, Vertex> ids;
    std::vector<std::vector<Vertex>> edges;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r\f\v");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream tokens(line);
        std::vector<Vertex> edge;
        std::string tok;
        while (tokens >> tok) {
            auto [it, inserted] = ids.try_emplace(tok, static_cast<Vertex>(ids.size()));
            if (inserted) data.vertex_names.push_back(tok);
            edge.push_back(it->second);
        }
        std::vector<Vertex> sorted = edge;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end())
            throw InputError("line " + std::to_string(line_no) + ": token '" +
                             data.vertex_names[*dup] + "' repeated within an edge");
        edges.push_back(std::move(sorted));
    }

    data.graph = Hypergraph(ids.size());
    for (const auto& e : edges) {
        ++data.lines_read;
        if (!data.graph.add_edge(e)) ++data.duplicate_edges;
    }
    return data;
}

EdgeListData read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open edge list '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Hypergraph& h,
                     const std::vector<std::string>& names) {
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        bool first = true;
        for (Vertex v : h.edge(e)) {
            if (!first) out << ' ';
            first = false;
            if (names.empty())
                out << v;
            else
                out << names[v];
        }
        out << '\n';
    }
}

void write_edge_list_file(const std::string& path, const Hypergraph& h,
                          const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    write_edge_list(out, h, names);
}

}  // namespace hypersub
