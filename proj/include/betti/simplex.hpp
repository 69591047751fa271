#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace betti {

using Vertex = std::uint32_t;

/// A simplex as a strictly increasing, nonempty list of vertex ids.
class Simplex {
public:
    Simplex() = default;

    /// Validates ordering; throws InputError if the list is empty, unsorted or
    /// contains duplicates.
    explicit Simplex(std::vector<Vertex> vertices);
    Simplex(std::initializer_list<Vertex> vertices)
        : Simplex(std::vector<Vertex>(vertices)) {}

    /// Sorts and deduplicates instead of rejecting.
    static Simplex canonical(std::vector<Vertex> vertices);

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    Vertex operator[](std::size_t i) const noexcept { return vertices_[i]; }
    Vertex back() const noexcept { return vertices_.back(); }
    bool contains_vertex(Vertex v) const noexcept;

    /// Facet obtained by dropping the vertex at position `pos`.
    Simplex without(std::size_t pos) const;

    std::string to_string() const;

    auto operator<=>(const Simplex&) const = default;
    bool operator==(const Simplex&) const = default;

private:
    std::vector<Vertex> vertices_;
};

/// Result of swapping one vertex of a simplex for an outside vertex.
struct Exchange {
    Simplex tau;
    std::uint32_t in_pos;
};

/// Replaces the vertex at `out_pos` with `in_vertex` (which must not already
/// be present) and reports where the new vertex landed.
Exchange exchange_vertex(std::span<const Vertex> sigma, std::size_t out_pos, Vertex in_vertex);

/// Size of the intersection of two sorted vertex lists.
std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b);

}  // namespace betti
