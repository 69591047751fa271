#include "betti/complex.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <string>

#include "betti/error.hpp"

namespace betti {

// ------------------------------------------------------------ SimplexIndex

SimplexIndex::SimplexIndex(int k, std::vector<Simplex> items) : k_(k), items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
}

std::optional<std::size_t> SimplexIndex::position(std::span<const Vertex> s) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), s, [](const Simplex& a, std::span<const Vertex> b) {
        return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(), b.begin(), b.end());
    });
    if (it == items_.end() || !std::equal(it->vertices().begin(), it->vertices().end(), s.begin(), s.end())) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - items_.begin());
}

// ----------------------------------------------------------------- Complex

void Complex::check_range(std::span<const Vertex> vs) const {
    const auto n = vertex_count();
    for (Vertex v : vs) {
        if (v >= n) {
            throw InputError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
        }
    }
}

void Complex::scan_local(std::span<const Vertex> sigma, LocalScan& out) const {
    out.up_degree = 0;
    out.moves.clear();
    std::vector<Vertex> buffer;
    buffer.reserve(sigma.size() + 1);
    const auto n = static_cast<Vertex>(vertex_count());
    for (Vertex x = 0; x < n; ++x) {
        if (std::binary_search(sigma.begin(), sigma.end(), x)) continue;
        buffer.assign(sigma.begin(), sigma.end());
        buffer.insert(std::upper_bound(buffer.begin(), buffer.end(), x), x);
        if (contains(buffer)) {
            ++out.up_degree;
            continue;
        }
        for (std::uint32_t pos = 0; pos < sigma.size(); ++pos) {
            buffer.assign(sigma.begin(), sigma.end());
            buffer.erase(buffer.begin() + pos);
            buffer.insert(std::upper_bound(buffer.begin(), buffer.end(), x), x);
            if (contains(buffer)) out.moves.push_back({pos, x});
        }
    }
}

// ----------------------------------------------------------- CliqueComplex

bool CliqueComplex::contains(std::span<const Vertex> vs) const {
    check_range(vs);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& row = graph_.row(vs[i]);
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (!row.test(vs[j])) return false;
        }
    }
    return !vs.empty();
}

namespace {

void extend_cliques(const Graph& g, std::size_t target, std::vector<Vertex>& current, Graph::Row remaining,
                    std::vector<Simplex>& out) {
    if (current.size() == target) {
        out.emplace_back(current);
        return;
    }
    for (auto v = remaining.find_first(); v != Graph::Row::npos; v = remaining.find_next(v)) {
        remaining.reset(v);
        // Later candidates see even fewer vertices above them.
        if (current.size() + 1 + remaining.count() < target) break;
        current.push_back(static_cast<Vertex>(v));
        extend_cliques(g, target, current, remaining & g.row(static_cast<Vertex>(v)), out);
        current.pop_back();
    }
}

}  // namespace

SimplexIndex CliqueComplex::enumerate(int k) const {
    if (k < 0) throw InputError("dimension must be nonnegative");
    std::vector<Simplex> out;
    const std::size_t n = graph_.vertex_count();
    const auto target = static_cast<std::size_t>(k) + 1;
    if (target <= n) {
        std::vector<Vertex> current;
        current.reserve(target);
        Graph::Row all(n);
        all.set();
        extend_cliques(graph_, target, current, all, out);
    }
    return SimplexIndex(k, std::move(out));
}

void CliqueComplex::scan_local(std::span<const Vertex> sigma, LocalScan& out) const {
    out.up_degree = 0;
    out.moves.clear();
    const auto n = static_cast<Vertex>(graph_.vertex_count());
    const std::size_t size = sigma.size();
    for (Vertex x = 0; x < n; ++x) {
        const auto& row = graph_.row(x);
        std::size_t adjacent = 0;
        std::uint32_t missing = 0;
        bool member = false;
        for (std::uint32_t i = 0; i < size; ++i) {
            if (sigma[i] == x) {
                member = true;
                break;
            }
            if (row.test(sigma[i])) {
                ++adjacent;
            } else {
                missing = i;
            }
        }
        if (member) continue;
        if (adjacent == size) {
            ++out.up_degree;
        } else if (adjacent + 1 == size) {
            out.moves.push_back({missing, x});
        }
    }
}

// --------------------------------------------------------- ExplicitComplex

std::size_t ExplicitComplex::Hash::operator()(const std::vector<Vertex>& v) const noexcept {
    return boost::hash_range(v.begin(), v.end());
}

ExplicitComplex::ExplicitComplex(std::size_t n, const std::vector<Simplex>& generators,
                                 std::size_t max_generator_size)
    : n_(n) {
    std::vector<Vertex> subset;
    for (const auto& g : generators) {
        check_range(g.vertices());
        const std::size_t s = g.size();
        if (s > max_generator_size) {
            throw InputError("generator " + g.to_string() + " has " + std::to_string(s) +
                             " vertices; downward closure limited to " + std::to_string(max_generator_size));
        }
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
            subset.clear();
            for (std::size_t i = 0; i < s; ++i) {
                if (mask & (std::uint64_t{1} << i)) subset.push_back(g[i]);
            }
            members_.insert(subset);
        }
    }
    for (const auto& m : members_) {
        const std::size_t dim = m.size() - 1;
        if (by_dimension_.size() <= dim) by_dimension_.resize(dim + 1);
        by_dimension_[dim].emplace_back(m);
    }
    for (auto& level : by_dimension_) std::sort(level.begin(), level.end());
}

bool ExplicitComplex::contains(std::span<const Vertex> vs) const {
    check_range(vs);
    return members_.count(std::vector<Vertex>(vs.begin(), vs.end())) != 0;
}

SimplexIndex ExplicitComplex::enumerate(int k) const {
    if (k < 0) throw InputError("dimension must be nonnegative");
    if (k > top_dimension()) return SimplexIndex(k, {});
    return SimplexIndex(k, by_dimension_[static_cast<std::size_t>(k)]);
}

// ---------------------------------------------------------- free functions

SimplexIndex enumerate_k_simplices(const Complex& complex, int k) { return complex.enumerate(k); }

LocalScan checked_scan(const Complex& complex, std::span<const Vertex> sigma) {
    if (sigma.empty() || !complex.contains(sigma)) {
        throw InputError("simplex is not a member of the complex");
    }
    LocalScan scan;
    complex.scan_local(sigma, scan);
    return scan;
}

std::size_t up_degree(const Complex& complex, const Simplex& sigma) {
    return checked_scan(complex, sigma.vertices()).up_degree;
}

std::vector<SimplexNeighbor> simplex_graph_neighbors(const Complex& complex, const Simplex& sigma) {
    const LocalScan scan = checked_scan(complex, sigma.vertices());
    std::vector<SimplexNeighbor> out;
    out.reserve(scan.moves.size());
    for (const auto& mv : scan.moves) {
        auto ex = exchange_vertex(sigma.vertices(), mv.out_pos, mv.in_vertex);
        out.push_back({std::move(ex.tau), mv.out_pos, ex.in_pos});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.tau < b.tau; });
    return out;
}

}  // namespace betti
