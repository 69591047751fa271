#pragma once

#include <array>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "betti/complex.hpp"
#include "betti/graph.hpp"
#include "reference.hpp"

namespace fixtures {

struct Fixture {
    std::string name;
    std::shared_ptr<const betti::Complex> complex;
    ref::Family family;
    int k;  ///< dimension of interest
};

inline ref::Family family_of(const betti::Graph& g) { return ref::clique_family(g.vertex_count(), g.edges()); }

inline Fixture from_graph(std::string name, betti::Graph g, int k) {
    auto fam = family_of(g);
    return {std::move(name), std::make_shared<betti::CliqueComplex>(std::move(g)), std::move(fam), k};
}

inline Fixture from_generators(std::string name, std::size_t n, const std::vector<ref::Set>& gens, int k) {
    std::vector<betti::Simplex> simplices;
    for (const auto& g : gens) simplices.emplace_back(g);
    return {std::move(name), std::make_shared<betti::ExplicitComplex>(n, simplices), ref::closure_family(n, gens), k};
}

inline betti::Graph graph_from_edges(std::size_t n, const std::vector<std::pair<betti::Vertex, betti::Vertex>>& edges) {
    betti::Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Fixture hollow_triangle() { return from_generators("hollow triangle", 3, {{0, 1}, {0, 2}, {1, 2}}, 1); }
inline Fixture k3() { return from_graph("K3", graph_from_edges(3, {{0, 1}, {0, 2}, {1, 2}}), 1); }
/// C4 = K_{2,2} with parts {0,2} and {1,3}.
inline Fixture c4() { return from_graph("C4", betti::generate_complete_partite(1, 2), 1); }
inline Fixture octahedron() { return from_graph("octahedron", betti::generate_complete_partite(2, 2), 2); }
inline Fixture two_triangles() { return from_graph("two triangles", betti::generate_disjoint_cliques(2, 2), 2); }
inline Fixture partite_k2_m3() { return from_graph("K_{3,3,3}", betti::generate_complete_partite(2, 3), 2); }

inline std::vector<Fixture> all_fixtures() {
    return {hollow_triangle(), k3(), c4(), octahedron(), two_triangles(), partite_k2_m3(),
            from_graph("matching", betti::generate_disjoint_cliques(3, 1), 1),
            from_graph("K4", betti::generate_disjoint_cliques(1, 3), 1),
            from_generators("two tetrahedra sharing an edge", 6, {{0, 1, 2, 3}, {0, 1, 4, 5}, {2, 4}}, 1),
            from_generators("bowtie of hollow triangles", 5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}, 1)};
}

/// G(n, p) drawn with a test-local generator.
inline betti::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    betti::Graph g(n);
    for (betti::Vertex u = 0; u < n; ++u) {
        for (betti::Vertex v = u + 1; v < n; ++v) {
            if (coin(rng)) g.add_edge(u, v);
        }
    }
    return g;
}

/// Downward closure of a few random generators of size 2..max_size.
inline Fixture random_explicit(std::size_t n, std::size_t generators, std::size_t max_size, int k, std::mt19937_64& rng) {
    std::vector<ref::Set> gens;
    std::uniform_int_distribution<std::size_t> size_dist(2, max_size);
    for (std::size_t i = 0; i < generators; ++i) {
        std::vector<std::uint32_t> all(n);
        for (std::uint32_t v = 0; v < n; ++v) all[v] = v;
        std::shuffle(all.begin(), all.end(), rng);
        ref::Set g(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size_dist(rng)));
        std::sort(g.begin(), g.end());
        gens.push_back(g);
    }
    return from_generators("random explicit", n, gens, k);
}

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

/// Runs a shell command and captures stdout.
inline CommandResult run(const std::string& cmd) {
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace fixtures
