#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "betti/simplex.hpp"

namespace betti {

/// Undirected simple graph on vertices [0, n) with one adjacency bitset per
/// vertex.
class Graph {
public:
    using Row = boost::dynamic_bitset<std::uint64_t>;

    explicit Graph(std::size_t n = 0);

    std::size_t vertex_count() const noexcept { return rows_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    /// Throws InputError on self-loops, out-of-range ids and duplicate edges.
    void add_edge(Vertex u, Vertex v);
    /// Adds the edge unless it is already present. Returns whether it was new.
    bool add_edge_if_absent(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;
    const Row& row(Vertex v) const { return rows_[v]; }

    /// Edges as (u, v) with u < v in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    bool operator==(const Graph& other) const { return rows_ == other.rows_; }

private:
    void check_vertex(Vertex v) const;

    std::vector<Row> rows_;
    std::size_t edges_ = 0;
};

/// (k+1) parts of m vertices each; vertex v lies in part v mod (k+1) and every
/// cross-part pair is an edge.
Graph generate_complete_partite(int k, int m);

/// m disjoint copies of K_{k+1}; component c holds vertices [c(k+1), (c+1)(k+1)).
Graph generate_disjoint_cliques(int m, int k);

/// Plain-text edge list: first line `n`, then one `u v` pair per line.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace betti
