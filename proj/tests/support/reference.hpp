// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's laplacian, walk or oracle code.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace ref {

using Q = boost::multiprecision::cpp_rational;
using Set = std::vector<std::uint32_t>;
using Matrix = std::vector<std::vector<Q>>;
using IntMatrix = std::vector<std::vector<long long>>;

/// A complex stored as the full set of its simplices.
struct Family {
    std::size_t n = 0;
    std::set<Set> simplices;

    bool has(const Set& s) const { return simplices.count(s) != 0; }

    std::vector<Set> level(int k) const {
        std::vector<Set> out;
        for (const auto& s : simplices) {
            if (s.size() == static_cast<std::size_t>(k) + 1) out.push_back(s);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline void for_each_subset(std::size_t n, std::size_t size, const std::function<void(const Set&)>& fn) {
    Set cur;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t start) {
        if (cur.size() == size) {
            fn(cur);
            return;
        }
        for (std::uint32_t v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

/// Clique complex by testing every vertex subset.
inline Family clique_family(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [u, v] : edges) adj[u][v] = adj[v][u] = true;
    Family f{n, {}};
    for (std::size_t size = 1; size <= n; ++size) {
        bool any = false;
        for_each_subset(n, size, [&](const Set& s) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    if (!adj[s[i]][s[j]]) return;
                }
            }
            f.simplices.insert(s);
            any = true;
        });
        if (!any) break;
    }
    return f;
}

/// Downward closure of a list of generators.
inline Family closure_family(std::size_t n, const std::vector<Set>& generators) {
    Family f{n, {}};
    for (const auto& g : generators) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.size()); ++mask) {
            Set s;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (mask >> i & 1) s.push_back(g[i]);
            }
            f.simplices.insert(s);
        }
    }
    return f;
}

/// Boundary d_k with (-1)^(j+1) on the facet that drops position j.
inline IntMatrix boundary(const Family& f, int k) {
    const auto rows = f.level(k - 1);
    const auto cols = f.level(k);
    IntMatrix b(rows.size(), std::vector<long long>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t j = 0; j < cols[c].size(); ++j) {
            Set face = cols[c];
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
            const auto r = std::lower_bound(rows.begin(), rows.end(), face) - rows.begin();
            b[static_cast<std::size_t>(r)][c] = (j % 2 == 1) ? 1 : -1;
        }
    }
    return b;
}

inline IntMatrix transpose(const IntMatrix& a, std::size_t rows_if_empty = 0) {
    const std::size_t r = a.size();
    const std::size_t c = r ? a[0].size() : rows_if_empty;
    IntMatrix t(c, std::vector<long long>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
    }
    return t;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner, std::size_t rows, std::size_t cols) {
    IntMatrix out(rows, std::vector<long long>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t t = 0; t < inner; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    }
    return out;
}

/// Delta_k = d_k^T d_k + d_{k+1} d_{k+1}^T by direct multiplication.
inline IntMatrix laplacian(const Family& f, int k) {
    const std::size_t s = f.level(k).size();
    const std::size_t below = f.level(k - 1).size();
    const std::size_t above = f.level(k + 1).size();
    const IntMatrix dk = boundary(f, k);        // below x s
    const IntMatrix dk1 = boundary(f, k + 1);   // s x above
    const IntMatrix lower = multiply(transpose(dk, s), dk, below, s, s);
    IntMatrix upper(s, std::vector<long long>(s, 0));
    if (above > 0) upper = multiply(dk1, transpose(dk1, above), above, s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) upper[i][j] += lower[i][j];
    }
    return upper;
}

/// H = I - Delta/n as exact rationals.
inline Matrix h_matrix(const Family& f, int k) {
    const IntMatrix lap = laplacian(f, k);
    const std::size_t s = lap.size();
    Matrix h(s, std::vector<Q>(s, Q(0)));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) h[i][j] = Q(i == j ? 1 : 0) - Q(lap[i][j], static_cast<long long>(f.n));
    }
    return h;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t s = a.size();
    Matrix out(s, std::vector<Q>(s, Q(0)));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t t = 0; t < s; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < s; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    }
    return out;
}

inline Q trace(const Matrix& a) {
    Q t = 0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

inline Matrix power(const Matrix& a, int l) {
    Matrix p = a;
    for (int i = 1; i < l; ++i) p = multiply(p, a);
    return p;
}

inline Q column_abs_sum(const Matrix& a, std::size_t c) {
    Q s = 0;
    for (std::size_t r = 0; r < a.size(); ++r) s += abs(a[r][c]);
    return s;
}

/// tr(H^l)/|S_k|.
inline Q normalized_trace(const Family& f, int k, int l) {
    const Matrix h = h_matrix(f, k);
    return trace(power(h, l)) / static_cast<long long>(h.size());
}

/// E[f^2] summed over every path with probabilities |H_ts|/||H s||_1, using
/// the assembled H only.
inline Q second_moment_by_paths(const Family& f, int k, int l) {
    const Matrix h = h_matrix(f, k);
    const std::size_t s = h.size();
    std::vector<Q> norm(s);
    for (std::size_t c = 0; c < s; ++c) norm[c] = column_abs_sum(h, c);
    Q total = 0;
    std::function<void(std::size_t, std::size_t, int, Q, Q)> rec = [&](std::size_t start, std::size_t cur, int step,
                                                                      Q prob, Q f2) {
        if (step == l) {
            if (cur == start) total += prob * f2;
            return;
        }
        if (norm[cur] == 0) return;
        for (std::size_t nxt = 0; nxt < s; ++nxt) {
            if (h[nxt][cur] == 0) continue;
            rec(start, nxt, step + 1, prob * abs(h[nxt][cur]) / norm[cur], f2 * norm[cur] * norm[cur]);
        }
    };
    for (std::size_t i = 0; i < s; ++i) rec(i, i, 0, Q(1), Q(1));
    return total / static_cast<long long>(s);
}

/// Rank by Gaussian elimination over the rationals.
inline std::size_t rank(const IntMatrix& m) {
    if (m.empty() || m[0].empty()) return 0;
    Matrix a(m.size(), std::vector<Q>(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[0].size(); ++j) a[i][j] = m[i][j];
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < a[0].size() && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Q factor = a[i][c] / a[r][c];
            for (std::size_t j = c; j < a[0].size(); ++j) a[i][j] -= factor * a[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t betti(const Family& f, int k) {
    return f.level(k).size() - rank(boundary(f, k)) - rank(boundary(f, k + 1));
}

/// Simplex-graph neighbors straight from the definition.
inline std::vector<Set> neighbors(const Family& f, const Set& sigma) {
    std::vector<Set> out;
    for (const auto& tau : f.level(static_cast<int>(sigma.size()) - 1)) {
        Set inter, uni;
        std::set_intersection(sigma.begin(), sigma.end(), tau.begin(), tau.end(), std::back_inserter(inter));
        std::set_union(sigma.begin(), sigma.end(), tau.begin(), tau.end(), std::back_inserter(uni));
        if (inter.size() + 1 == sigma.size() && !f.has(uni)) out.push_back(tau);
    }
    return out;
}

inline std::size_t up_degree(const Family& f, const Set& sigma) {
    std::size_t d = 0;
    for (std::uint32_t x = 0; x < f.n; ++x) {
        if (std::binary_search(sigma.begin(), sigma.end(), x)) continue;
        Set s = sigma;
        s.insert(std::upper_bound(s.begin(), s.end(), x), x);
        if (f.has(s)) ++d;
    }
    return d;
}

inline long long binomial(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    long long out = 1;
    for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

}  // namespace ref
