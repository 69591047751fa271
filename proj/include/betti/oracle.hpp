#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "betti/complex.hpp"
#include "betti/laplacian.hpp"

namespace betti {

using ExactRational = boost::multiprecision::cpp_rational;

/// Above this |S_k| the trace and moment powers switch to doubles.
inline constexpr std::size_t kExactSizeLimit = 512;

/// A quantity known in floating point and, when it was affordable, exactly.
struct OracleValue {
    double value = 0.0;
    std::optional<ExactRational> exact;
};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
std::size_t exact_rank(const DenseMatrix<std::int64_t>& m);
std::size_t exact_rank(const BoundaryMatrix& b);

/// beta_k = |S_k| - rank d_k - rank d_{k+1}, for k >= 1.
std::size_t exact_betti(const Complex& complex, int k, std::size_t guard = kDefaultDenseGuard);

/// tr(H^l)/|S_k| for l = 1..max_length.
std::vector<OracleValue> normalized_trace_series(const Complex& complex, int k, int max_length,
                                                 std::size_t guard = kDefaultDenseGuard,
                                                 std::size_t exact_limit = kExactSizeLimit);
OracleValue exact_normalized_trace(const Complex& complex, int k, int length,
                                   std::size_t guard = kDefaultDenseGuard);

/// E[f^2] = tr(Q^l)/|S_k| for l = 1..max_length, where
/// Q_{tau,sigma} = ||H|sigma>||_1 |H_{tau,sigma}|.
///
/// A path sigma_0..sigma_l has probability
///   (1/|S_k|) prod_i |H_{sigma_{i+1},sigma_i}| / ||H|sigma_i>||_1
/// and, when closed, f^2 = prod_i ||H|sigma_i>||_1^2. Their product is
/// (1/|S_k|) prod_i ||H|sigma_i>||_1 |H_{sigma_{i+1},sigma_i}|, and summing
/// over closed paths gives the diagonal of Q^l.
std::vector<OracleValue> second_moment_series(const Complex& complex, int k, int max_length,
                                              std::size_t guard = kDefaultDenseGuard,
                                              std::size_t exact_limit = kExactSizeLimit);
OracleValue exact_second_moment(const Complex& complex, int k, int length, std::size_t guard = kDefaultDenseGuard);

struct PathMoments {
    ExactRational mean;           ///< E[f]
    ExactRational second_moment;  ///< E[f^2]
};

/// E[f] and E[f^2] by summing over every path of the kernel. Throws
/// ResourceError beyond `max_simplices` or `max_length`.
PathMoments enumerate_path_moments(const Complex& complex, int k, int length, std::size_t max_simplices = 6,
                                   int max_length = 4);

struct MomentBounds {
    int length = 0;
    ExactRational lower_exact;
    ExactRational upper_exact;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<OracleValue> exact_second_moment;
    std::size_t max_up_degree = 0;
    std::size_t min_degree = 0;  ///< delta(S_k)
    std::size_t max_degree = 0;  ///< Delta(S_k)
    double cap_general = 0.0;    ///< (k+2)^(2l)
    double cap_clique = 0.0;     ///< 4^l (1-(k+1)/n)^(2l)
    double growth_upper = 0.0;   ///< (1 + Delta/n)^(2l)
    double growth_lower = 0.0;   ///< (1 + delta/n)^l
};

/// lower = (1 - (d_up+k+1)/n)^l mean ||H|sigma>||_1^l with d_up the largest
/// up-degree, upper = mean ||H|sigma>||_1^(2l). With `with_exact` the exact
/// second moment is attached when |S_k| is within `guard`.
MomentBounds variance_bounds(const Complex& complex, int k, int length, bool with_exact = true,
                             std::size_t guard = kDefaultDenseGuard);

struct SpectralSummary {
    std::vector<double> eigenvalues;  ///< ascending
    double tolerance = 0.0;
    std::size_t nullity = 0;
    std::optional<double> gap;        ///< smallest eigenvalue above tolerance
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Throws NumericError if the off-diagonal norm is still above `tol` after
/// `max_sweeps`.
std::vector<double> symmetric_eigenvalues(DenseMatrix<double> a, double tol = 1e-10, int max_sweeps = 100);

SpectralSummary spectral_summary(const Complex& complex, int k, std::size_t guard = kDefaultDenseGuard);

struct OracleLengthRow {
    int length = 0;
    OracleValue normalized_trace;
    OracleValue second_moment;
    MomentBounds bounds;
};

struct OracleReport {
    std::size_t n = 0;
    int k = 0;
    std::size_t simplex_count = 0;
    std::size_t betti = 0;
    double normalized_betti = 0.0;
    SpectralSummary spectrum;
    std::vector<OracleLengthRow> rows;
};

OracleReport oracle_report(const Complex& complex, int k, std::span<const int> lengths,
                           std::size_t guard = kDefaultDenseGuard);

double to_double(const ExactRational& r);

}  // namespace betti
