#include "betti/laplacian.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <string>

#include "betti/error.hpp"

namespace betti {

namespace {

void require_k_simplex(const Complex& complex, const Simplex& s, std::size_t size) {
    if (s.size() != size) {
        throw InputError("simplices " + s.to_string() + " must all have dimension " + std::to_string(size - 1));
    }
    if (!complex.contains(s)) {
        throw InputError("simplex " + s.to_string() + " is not in the complex");
    }
}

void require_positive_dimension(const Simplex& s) {
    if (s.dimension() < 1) {
        throw InputError("Laplacian entries are defined for k > 0");
    }
}

// Position within `a` of the single vertex not present in `b` (|a \ b| = 1).
std::uint32_t extra_position(std::span<const Vertex> a, std::span<const Vertex> b) {
    for (std::uint32_t i = 0; i < a.size(); ++i) {
        if (!std::binary_search(b.begin(), b.end(), a[i])) return i;
    }
    return static_cast<std::uint32_t>(a.size());
}

void check_guard(std::size_t size, std::size_t guard) {
    if (size > guard) {
        throw ResourceError("dense assembly needs |S_k| = " + std::to_string(size) + " <= guard " +
                            std::to_string(guard));
    }
}

}  // namespace

LocalCounts local_counts(const Complex& complex, const Simplex& sigma) {
    const LocalScan scan = checked_scan(complex, sigma.vertices());
    return {scan.degree(), scan.up_degree};
}

std::int64_t scaled_column_norm(std::size_t n, int k, const LocalCounts& counts) {
    return static_cast<std::int64_t>(n) + static_cast<std::int64_t>(counts.degree) -
           static_cast<std::int64_t>(counts.up_degree) - k - 1;
}

std::int64_t laplacian_entry(const Complex& complex, const Simplex& sigma, const Simplex& tau) {
    require_positive_dimension(sigma);
    require_k_simplex(complex, sigma, sigma.size());
    require_k_simplex(complex, tau, sigma.size());
    const int k = sigma.dimension();
    if (sigma == tau) {
        return static_cast<std::int64_t>(up_degree(complex, sigma)) + k + 1;
    }
    if (intersection_size(sigma.vertices(), tau.vertices()) != static_cast<std::size_t>(k)) return 0;

    std::vector<Vertex> joined;
    std::set_union(sigma.vertices().begin(), sigma.vertices().end(), tau.vertices().begin(), tau.vertices().end(),
                   std::back_inserter(joined));
    if (complex.contains(joined)) return 0;
    return laplacian_sign(extra_position(sigma.vertices(), tau.vertices()),
                          extra_position(tau.vertices(), sigma.vertices()));
}

Rational h_entry(const Complex& complex, const Simplex& sigma, const Simplex& tau) {
    const auto n = static_cast<std::int64_t>(complex.vertex_count());
    const std::int64_t delta = laplacian_entry(complex, sigma, tau);
    return Rational(sigma == tau ? n - delta : -delta, n);
}

Rational column_one_norm(const Complex& complex, const Simplex& sigma) {
    const auto n = complex.vertex_count();
    return Rational(scaled_column_norm(n, sigma.dimension(), local_counts(complex, sigma)),
                    static_cast<std::int64_t>(n));
}

// ------------------------------------------------------------------ boundary

DenseMatrix<std::int64_t> BoundaryMatrix::to_dense() const {
    DenseMatrix<std::int64_t> out(rows.size(), cols.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (auto [r, coeff] : columns[c]) out(r, c) = coeff;
    }
    return out;
}

BoundaryMatrix boundary_matrix([[maybe_unused]] const Complex& complex, const SimplexIndex& rows,
                               const SimplexIndex& cols) {
    if (cols.dimension() < 1 || rows.dimension() != cols.dimension() - 1) {
        throw InputError("boundary map needs k >= 1 and rows at dimension k-1");
    }
    BoundaryMatrix b{rows, cols, {}};
    b.columns.resize(cols.size());
    std::vector<Vertex> face;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto sigma = cols[c].vertices();
        for (std::size_t j = 0; j < sigma.size(); ++j) {
            face.assign(sigma.begin(), sigma.end());
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
            auto r = rows.position(face);
            if (!r) {
                throw InputError("complex is not closed under faces at " + cols[c].to_string());
            }
            b.columns[c].emplace_back(*r, (j % 2 == 1) ? 1 : -1);
        }
    }
    return b;
}

BoundaryMatrix boundary_matrix(const Complex& complex, int k) {
    if (k < 1) throw InputError("boundary map needs k >= 1");
    return boundary_matrix(complex, complex.enumerate(k - 1), complex.enumerate(k));
}

DenseMatrix<std::int64_t> assemble_laplacian_dense(const Complex& complex, const SimplexIndex& index,
                                                   std::size_t guard) {
    const int k = index.dimension();
    if (k < 1) throw InputError("Laplacian assembly needs k >= 1");
    check_guard(index.size(), guard);
    const std::size_t m = index.size();
    DenseMatrix<std::int64_t> lap(m, m);

    // Lower term: columns of d_k sharing a facet row.
    const auto lower = boundary_matrix(complex, complex.enumerate(k - 1), index);
    std::vector<std::vector<std::pair<std::size_t, int>>> by_row(lower.rows.size());
    for (std::size_t c = 0; c < m; ++c) {
        for (auto [r, s] : lower.columns[c]) by_row[r].emplace_back(c, s);
    }
    for (const auto& row : by_row) {
        for (auto [a, sa] : row) {
            for (auto [b, sb] : row) lap(a, b) += sa * sb;
        }
    }

    // Upper term: rows of d_{k+1} sharing a coface column.
    const auto upper = boundary_matrix(complex, index, complex.enumerate(k + 1));
    for (const auto& col : upper.columns) {
        for (auto [a, sa] : col) {
            for (auto [b, sb] : col) lap(a, b) += sa * sb;
        }
    }
    return lap;
}

DenseMatrix<std::int64_t> assemble_laplacian_dense(const Complex& complex, int k, std::size_t guard) {
    if (k < 1) throw InputError("Laplacian assembly needs k >= 1");
    return assemble_laplacian_dense(complex, complex.enumerate(k), guard);
}

DenseMatrix<std::int64_t> assemble_scaled_h(const Complex& complex, const SimplexIndex& index, std::size_t guard) {
    auto h = assemble_laplacian_dense(complex, index, guard);
    const auto n = static_cast<std::int64_t>(complex.vertex_count());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = (i == j ? n : 0) - h(i, j);
    }
    return h;
}

std::string format_decimal(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix<std::int64_t>& numerators, std::int64_t denominator) {
    for (std::size_t i = 0; i < numerators.rows(); ++i) {
        for (std::size_t j = 0; j < numerators.cols(); ++j) {
            if (j) out << ',';
            out << format_decimal(static_cast<double>(numerators(i, j)) / static_cast<double>(denominator));
        }
        out << '\n';
    }
}

}  // namespace betti
