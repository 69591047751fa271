#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "betti/graph.hpp"
#include "betti/simplex.hpp"

namespace betti {

enum class ComplexKind { clique, explicit_family };

/// The sorted list S_k of all k-simplices of a complex. Positions follow
/// lexicographic order of the vertex lists.
class SimplexIndex {
public:
    SimplexIndex() = default;
    SimplexIndex(int k, std::vector<Simplex> items);

    int dimension() const noexcept { return k_; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const Simplex& operator[](std::size_t i) const { return items_[i]; }
    const std::vector<Simplex>& items() const noexcept { return items_; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    std::optional<std::size_t> position(std::span<const Vertex> s) const;
    std::optional<std::size_t> position(const Simplex& s) const { return position(s.vertices()); }

private:
    int k_ = 0;
    std::vector<Simplex> items_;
};

/// One edge of the simplex graph seen from sigma: drop sigma[out_pos], add
/// `in_vertex`.
struct NeighborMove {
    std::uint32_t out_pos;
    Vertex in_vertex;
};

/// Everything the walk needs to know about the column of sigma.
struct LocalScan {
    std::size_t up_degree = 0;
    std::vector<NeighborMove> moves;

    std::size_t degree() const noexcept { return moves.size(); }
};

/// Simplicial complex on vertices [0, n). Immutable after construction.
class Complex {
public:
    virtual ~Complex() = default;

    virtual std::size_t vertex_count() const noexcept = 0;
    virtual ComplexKind kind() const noexcept = 0;

    /// Membership of a sorted vertex list. Throws InputError on ids >= n.
    virtual bool contains(std::span<const Vertex> vs) const = 0;
    bool contains(const Simplex& s) const { return contains(s.vertices()); }

    /// All k-simplices in lexicographic order (empty when none exist).
    virtual SimplexIndex enumerate(int k) const = 0;

    /// Up-degree and simplex-graph moves of a member simplex. The default
    /// uses membership queries only; clique complexes override it with
    /// bitset arithmetic. Moves are ordered by (in_vertex, out_pos).
    virtual void scan_local(std::span<const Vertex> sigma, LocalScan& out) const;

protected:
    void check_range(std::span<const Vertex> vs) const;
};

/// Clique complex of a graph. Membership is evaluated on demand from the
/// adjacency bitsets.
class CliqueComplex final : public Complex {
public:
    explicit CliqueComplex(Graph g) : graph_(std::move(g)) {}

    std::size_t vertex_count() const noexcept override { return graph_.vertex_count(); }
    ComplexKind kind() const noexcept override { return ComplexKind::clique; }
    bool contains(std::span<const Vertex> vs) const override;
    using Complex::contains;
    SimplexIndex enumerate(int k) const override;
    void scan_local(std::span<const Vertex> sigma, LocalScan& out) const override;

    const Graph& graph() const noexcept { return graph_; }

private:
    Graph graph_;
};

/// Complex given by its maximal simplices; every face is stored at
/// construction so membership is a hash lookup.
class ExplicitComplex final : public Complex {
public:
    /// Generators need not be maximal or distinct. Throws InputError if a
    /// vertex id is >= n or a generator has more than `max_generator_size`
    /// vertices.
    ExplicitComplex(std::size_t n, const std::vector<Simplex>& generators,
                    std::size_t max_generator_size = 20);

    std::size_t vertex_count() const noexcept override { return n_; }
    ComplexKind kind() const noexcept override { return ComplexKind::explicit_family; }
    bool contains(std::span<const Vertex> vs) const override;
    using Complex::contains;
    SimplexIndex enumerate(int k) const override;

    /// Largest simplex dimension present, or -1 for the void complex.
    int top_dimension() const noexcept { return static_cast<int>(by_dimension_.size()) - 1; }
    std::size_t simplex_count() const noexcept { return members_.size(); }

private:
    struct Hash {
        std::size_t operator()(const std::vector<Vertex>& v) const noexcept;
    };

    std::size_t n_;
    std::unordered_set<std::vector<Vertex>, Hash> members_;
    std::vector<std::vector<Simplex>> by_dimension_;
};

SimplexIndex enumerate_k_simplices(const Complex& complex, int k);

/// d_up(sigma): number of (k+1)-simplices containing sigma. Throws InputError
/// if sigma is not in the complex.
std::size_t up_degree(const Complex& complex, const Simplex& sigma);

struct SimplexNeighbor {
    Simplex tau;
    std::uint32_t out_pos;  ///< position of the dropped vertex in sigma
    std::uint32_t in_pos;   ///< position of the added vertex in tau
    bool operator==(const SimplexNeighbor&) const = default;
};

/// Neighbors of sigma in the simplex graph G(S_k), sorted by tau. Throws
/// InputError if sigma is not in the complex.
std::vector<SimplexNeighbor> simplex_graph_neighbors(const Complex& complex, const Simplex& sigma);

/// Local scan with membership validation of sigma.
LocalScan checked_scan(const Complex& complex, std::span<const Vertex> sigma);

/// Maximal simplices file: first line `n`, then one sorted simplex per line.
ExplicitComplex read_explicit_complex(std::istream& in);

}  // namespace betti
