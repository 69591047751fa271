#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "betti/complex.hpp"

namespace betti {

using Rational = boost::rational<std::int64_t>;

inline constexpr std::size_t kDefaultDenseGuard = 4096;

/// Row-major dense matrix.
template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& data() const noexcept { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Degree in the simplex graph together with the up-degree.
struct LocalCounts {
    std::size_t degree = 0;
    std::size_t up_degree = 0;
};

LocalCounts local_counts(const Complex& complex, const Simplex& sigma);

/// Sign of the (sigma, tau) Laplacian entry for simplex-graph neighbors, from
/// the positions of the exchanged vertices. The boundary convention puts
/// (-1)^(j+1) on the facet that drops position j, so the shared facet
/// contributes (-1)^(j_sigma + j_tau).
constexpr int laplacian_sign(std::uint32_t out_pos, std::uint32_t in_pos) noexcept {
    return ((out_pos + in_pos) % 2 == 0) ? 1 : -1;
}

/// Sign of the matching off-diagonal entry of H = I - Delta/n.
constexpr int h_sign(std::uint32_t out_pos, std::uint32_t in_pos) noexcept {
    return -laplacian_sign(out_pos, in_pos);
}

/// (Delta_k)_{sigma,tau} from the combinatorial formula. Requires k > 0 and
/// both arguments to be k-simplices of the complex.
std::int64_t laplacian_entry(const Complex& complex, const Simplex& sigma, const Simplex& tau);

/// (I - Delta_k / n)_{sigma,tau}.
Rational h_entry(const Complex& complex, const Simplex& sigma, const Simplex& tau);

/// ||H|sigma>||_1 = 1 + (deg - d_up - k - 1)/n, from a local scan.
Rational column_one_norm(const Complex& complex, const Simplex& sigma);

/// Integer numerator n*||H|sigma>||_1 = n + deg - d_up - k - 1.
std::int64_t scaled_column_norm(std::size_t n, int k, const LocalCounts& counts);

/// Sparse boundary map from k-chains to (k-1)-chains.
struct BoundaryMatrix {
    SimplexIndex rows;  ///< S_{k-1}
    SimplexIndex cols;  ///< S_k
    /// columns[c] lists (row, coefficient) with coefficient (-1)^(j+1) for the
    /// facet dropping position j, in increasing j.
    std::vector<std::vector<std::pair<std::size_t, int>>> columns;

    DenseMatrix<std::int64_t> to_dense() const;
};

/// Boundary map at dimension k >= 1. For k above the top dimension the result
/// has no columns.
BoundaryMatrix boundary_matrix(const Complex& complex, int k);
BoundaryMatrix boundary_matrix(const Complex& complex, const SimplexIndex& rows, const SimplexIndex& cols);

/// Delta_k = d_k^T d_k + d_{k+1} d_{k+1}^T over the integers, indexed by S_k.
/// Throws ResourceError if |S_k| exceeds `guard`.
DenseMatrix<std::int64_t> assemble_laplacian_dense(const Complex& complex, int k,
                                                   std::size_t guard = kDefaultDenseGuard);
DenseMatrix<std::int64_t> assemble_laplacian_dense(const Complex& complex, const SimplexIndex& index,
                                                   std::size_t guard = kDefaultDenseGuard);

/// n*H = n*I - Delta_k (exact integers; divide by n for H).
DenseMatrix<std::int64_t> assemble_scaled_h(const Complex& complex, const SimplexIndex& index,
                                            std::size_t guard = kDefaultDenseGuard);

/// Writes matrix/denominator row-major as CSV, 17 significant digits.
void write_matrix_csv(std::ostream& out, const DenseMatrix<std::int64_t>& numerators, std::int64_t denominator = 1);

/// Decimal rendering with 17 significant digits.
std::string format_decimal(double value);

}  // namespace betti
