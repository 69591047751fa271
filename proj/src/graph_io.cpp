#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "betti/complex.hpp"
#include "betti/error.hpp"
#include "betti/graph.hpp"

namespace betti {

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) {
        throw InputError("simplex must be nonempty");
    }
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i - 1] >= vertices_[i]) {
            throw InputError("simplex vertices must be strictly increasing: " + to_string());
        }
    }
}

Simplex Simplex::canonical(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return Simplex(std::move(vertices));
}

bool Simplex::contains_vertex(Vertex v) const noexcept {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Simplex Simplex::without(std::size_t pos) const {
    std::vector<Vertex> out;
    out.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i != pos) out.push_back(vertices_[i]);
    }
    return Simplex(std::move(out));
}

std::string Simplex::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(vertices_[i]);
    }
    return s + "}";
}

Exchange exchange_vertex(std::span<const Vertex> sigma, std::size_t out_pos, Vertex in_vertex) {
    std::vector<Vertex> tau;
    tau.reserve(sigma.size());
    std::uint32_t in_pos = 0;
    bool placed = false;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (i == out_pos) continue;
        if (!placed && in_vertex < sigma[i]) {
            in_pos = static_cast<std::uint32_t>(tau.size());
            tau.push_back(in_vertex);
            placed = true;
        }
        tau.push_back(sigma[i]);
    }
    if (!placed) {
        in_pos = static_cast<std::uint32_t>(tau.size());
        tau.push_back(in_vertex);
    }
    return {Simplex(std::move(tau)), in_pos};
}

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) {
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

// ------------------------------------------------------------------ Graph

Graph::Graph(std::size_t n) : rows_(n, Row(n)) {}

void Graph::check_vertex(Vertex v) const {
    if (v >= rows_.size()) {
        throw InputError("vertex " + std::to_string(v) + " out of range for n=" +
                         std::to_string(rows_.size()));
    }
}

bool Graph::add_edge_if_absent(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw InputError("self-loop at vertex " + std::to_string(u));
    }
    if (rows_[u].test(v)) return false;
    rows_[u].set(v);
    rows_[v].set(u);
    ++edges_;
    return true;
}

void Graph::add_edge(Vertex u, Vertex v) {
    if (!add_edge_if_absent(u, v)) {
        throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return rows_[u].test(v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < rows_.size(); ++u) {
        for (auto v = rows_[u].find_next(u); v != Row::npos; v = rows_[u].find_next(v)) {
            out.emplace_back(u, static_cast<Vertex>(v));
        }
    }
    return out;
}

Graph generate_complete_partite(int k, int m) {
    if (k < 0 || m < 1) {
        throw InputError("complete partite graph needs k >= 0 and m >= 1");
    }
    const auto parts = static_cast<Vertex>(k + 1);
    const auto n = static_cast<Vertex>(m) * parts;
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (u % parts != v % parts) g.add_edge(u, v);
        }
    }
    return g;
}

Graph generate_disjoint_cliques(int m, int k) {
    if (k < 0 || m < 1) {
        throw InputError("disjoint cliques need m >= 1 and k >= 0");
    }
    const auto block = static_cast<Vertex>(k + 1);
    Graph g(static_cast<std::size_t>(m) * block);
    for (Vertex c = 0; c < static_cast<Vertex>(m); ++c) {
        for (Vertex i = 0; i < block; ++i) {
            for (Vertex j = i + 1; j < block; ++j) g.add_edge(c * block + i, c * block + j);
        }
    }
    return g;
}

// -------------------------------------------------------------------- I/O

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        return true;
    }
    return false;
}

std::vector<long long> parse_ints(const std::string& line, std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<long long> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) {
            throw InputError("line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
        }
        out.push_back(value);
    }
    return out;
}

std::size_t read_header(std::istream& in, std::size_t& lineno) {
    std::string line;
    if (!next_content_line(in, line, lineno)) {
        throw InputError("empty input: expected vertex count on the first line");
    }
    auto header = parse_ints(line, lineno);
    if (header.size() != 1 || header[0] < 0) {
        throw InputError("line " + std::to_string(lineno) + ": expected a single vertex count");
    }
    return static_cast<std::size_t>(header[0]);
}

Vertex as_vertex(long long v, std::size_t n, std::size_t lineno) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw InputError("line " + std::to_string(lineno) + ": vertex " + std::to_string(v) +
                         " out of range for n=" + std::to_string(n));
    }
    return static_cast<Vertex>(v);
}

}  // namespace

Graph read_graph(std::istream& in) {
    std::size_t lineno = 0;
    const std::size_t n = read_header(in, lineno);
    Graph g(n);
    std::string line;
    while (next_content_line(in, line, lineno)) {
        auto vals = parse_ints(line, lineno);
        if (vals.size() != 2) {
            throw InputError("line " + std::to_string(lineno) + ": expected 'u v'");
        }
        const Vertex u = as_vertex(vals[0], n, lineno);
        const Vertex v = as_vertex(vals[1], n, lineno);
        try {
            g.add_edge(u, v);
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

ExplicitComplex read_explicit_complex(std::istream& in) {
    std::size_t lineno = 0;
    const std::size_t n = read_header(in, lineno);
    std::vector<Simplex> generators;
    std::string line;
    while (next_content_line(in, line, lineno)) {
        auto vals = parse_ints(line, lineno);
        std::vector<Vertex> vs;
        vs.reserve(vals.size());
        for (long long v : vals) vs.push_back(as_vertex(v, n, lineno));
        try {
            generators.emplace_back(std::move(vs));
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return ExplicitComplex(n, generators);
}

}  // namespace betti
