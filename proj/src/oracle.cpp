#include "betti/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "betti/error.hpp"
#include "betti/walk.hpp"

namespace betti {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
__extension__ typedef __int128 Int128;

double to_double(const ExactRational& r) { return r.convert_to<double>(); }

// ------------------------------------------------------------------- rank

namespace {

// (a*b - c*d) / p, reporting overflow for the 64-bit instantiation.
bool bareiss_update(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p,
                    std::int64_t& out) {
    std::int64_t ab = 0, cd = 0, diff = 0;
    if (__builtin_mul_overflow(a, b, &ab) || __builtin_mul_overflow(c, d, &cd) || __builtin_sub_overflow(ab, cd, &diff)) {
        return false;
    }
    out = diff / p;
    return true;
}

bool bareiss_update(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d, const BigInt& p, BigInt& out) {
    out = (a * b - c * d) / p;
    return true;
}

template <typename T>
std::optional<std::size_t> bareiss_rank(std::vector<T> a, std::size_t rows, std::size_t cols) {
    T prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        const T piv = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const T lead = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                if (!bareiss_update(piv, a[i * cols + j], lead, a[r * cols + j], prev, a[i * cols + j])) {
                    return std::nullopt;
                }
            }
            a[i * cols + c] = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

}  // namespace

std::size_t exact_rank(const DenseMatrix<std::int64_t>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (auto r = bareiss_rank<std::int64_t>(m.data(), m.rows(), m.cols())) return *r;
    std::vector<BigInt> big(m.data().begin(), m.data().end());
    return *bareiss_rank<BigInt>(std::move(big), m.rows(), m.cols());
}

std::size_t exact_rank(const BoundaryMatrix& b) { return exact_rank(b.to_dense()); }

std::size_t exact_betti(const Complex& complex, int k, std::size_t guard) {
    if (k < 1) throw InputError("Betti numbers are computed for k >= 1");
    const BoundaryMatrix lower = boundary_matrix(complex, k);
    const BoundaryMatrix upper = boundary_matrix(complex, k + 1);
    const std::size_t largest = std::max({lower.rows.size(), lower.cols.size(), upper.cols.size()});
    if (largest > guard) {
        throw ResourceError("boundary matrices around dimension " + std::to_string(k) + " have " +
                            std::to_string(largest) + " rows or columns; guard is " + std::to_string(guard));
    }
    return lower.cols.size() - exact_rank(lower) - exact_rank(upper);
}

// ------------------------------------------------------ traces of powers

namespace {

struct SparseColumns {
    std::size_t size = 0;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cols;
    std::int64_t max_abs_col_sum = 0;
};

SparseColumns sparse_columns(const DenseMatrix<std::int64_t>& m) {
    SparseColumns out;
    out.size = m.cols();
    out.cols.resize(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::int64_t sum = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (m(r, c) != 0) {
                out.cols[c].emplace_back(r, m(r, c));
                sum += std::abs(m(r, c));
            }
        }
        out.max_abs_col_sum = std::max(out.max_abs_col_sum, sum);
    }
    return out;
}

/// tr(M^l) for l = 1..max_len, entries of M scaled by `scale`.
template <typename T>
std::vector<T> power_traces(const SparseColumns& m, int max_len, const T& scale) {
    const std::size_t s = m.size;
    std::vector<T> p(s * s, T(0));
    std::vector<T> next(s * s, T(0));
    for (std::size_t c = 0; c < s; ++c) {
        for (const auto& [r, v] : m.cols[c]) p[r * s + c] = T(v) * scale;
    }
    std::vector<T> traces;
    auto push_trace = [&] {
        T t(0);
        for (std::size_t i = 0; i < s; ++i) t += p[i * s + i];
        traces.push_back(t);
    };
    push_trace();
    for (int len = 2; len <= max_len; ++len) {
        for (std::size_t i = 0; i < s; ++i) {
            const T* row = &p[i * s];
            for (std::size_t c = 0; c < s; ++c) {
                T acc(0);
                for (const auto& [r, v] : m.cols[c]) acc += row[r] * (T(v) * scale);
                next[i * s + c] = acc;
            }
        }
        std::swap(p, next);
        push_trace();
    }
    return traces;
}

/// Exact tr(M^l) / (denominator^l * count) with a double fallback above
/// `exact_limit`. `denominator` is the integer scale that turns M into the
/// matrix of interest.
std::vector<OracleValue> normalized_power_traces(const DenseMatrix<std::int64_t>& m, std::int64_t denominator,
                                                 int max_len, std::size_t exact_limit) {
    const SparseColumns sparse = sparse_columns(m);
    const std::size_t s = sparse.size;
    std::vector<OracleValue> out(static_cast<std::size_t>(max_len));
    if (s > exact_limit) {
        const auto traces = power_traces<double>(sparse, max_len, 1.0 / static_cast<double>(denominator));
        for (int l = 0; l < max_len; ++l) out[l].value = traces[l] / static_cast<double>(s);
        return out;
    }
    std::vector<BigInt> numerators;
    const double bits = max_len * std::log2(std::max<double>(2.0, static_cast<double>(sparse.max_abs_col_sum))) +
                        std::log2(static_cast<double>(s) + 1.0);
    if (bits < 126.0) {
        for (const auto& t : power_traces<Int128>(sparse, max_len, 1)) numerators.emplace_back(t);
    } else {
        numerators = power_traces<BigInt>(sparse, max_len, BigInt(1));
    }
    BigInt den = s;
    for (int l = 0; l < max_len; ++l) {
        den *= denominator;
        out[l].exact = ExactRational(numerators[l], den);
        out[l].value = to_double(*out[l].exact);
    }
    return out;
}

void check_series_args(int k, int max_length) {
    if (k < 1) throw InputError("k must be >= 1");
    if (max_length < 1) throw InputError("path length must be >= 1");
}

SimplexIndex nonempty_index(const Complex& complex, int k) {
    SimplexIndex index = complex.enumerate(k);
    if (index.empty()) throw InputError("the complex has no " + std::to_string(k) + "-simplices");
    return index;
}

}  // namespace

std::vector<OracleValue> normalized_trace_series(const Complex& complex, int k, int max_length, std::size_t guard,
                                                 std::size_t exact_limit) {
    check_series_args(k, max_length);
    const SimplexIndex index = nonempty_index(complex, k);
    const auto a = assemble_scaled_h(complex, index, guard);
    return normalized_power_traces(a, static_cast<std::int64_t>(complex.vertex_count()), max_length, exact_limit);
}

OracleValue exact_normalized_trace(const Complex& complex, int k, int length, std::size_t guard) {
    return normalized_trace_series(complex, k, length, guard).back();
}

std::vector<OracleValue> second_moment_series(const Complex& complex, int k, int max_length, std::size_t guard,
                                              std::size_t exact_limit) {
    check_series_args(k, max_length);
    const SimplexIndex index = nonempty_index(complex, k);
    // n^2 Q = |nH| diag(column sums of |nH|).
    auto q = assemble_scaled_h(complex, index, guard);
    const std::size_t s = q.cols();
    for (std::size_t c = 0; c < s; ++c) {
        std::int64_t sum = 0;
        for (std::size_t r = 0; r < s; ++r) sum += std::abs(q(r, c));
        for (std::size_t r = 0; r < s; ++r) q(r, c) = std::abs(q(r, c)) * sum;
    }
    const auto n = static_cast<std::int64_t>(complex.vertex_count());
    return normalized_power_traces(q, n * n, max_length, exact_limit);
}

OracleValue exact_second_moment(const Complex& complex, int k, int length, std::size_t guard) {
    return second_moment_series(complex, k, length, guard).back();
}

// ------------------------------------------------------ path enumeration

namespace {

struct PathEnumerator {
    const Complex& complex;
    const SimplexIndex& index;
    int length;
    std::vector<std::optional<TransitionProfile>> profiles;

    ExactRational to_exact(const Rational& r) const { return ExactRational(r.numerator(), r.denominator()); }

    void walk(std::size_t start, std::size_t current, int step, const ExactRational& signed_weight,
              const ExactRational& square_weight, PathMoments& acc) const {
        if (step == length) {
            if (current == start) {
                acc.mean += signed_weight;
                acc.second_moment += square_weight;
            }
            return;
        }
        const auto& prof = profiles[current];
        if (!prof) return;
        const ExactRational norm = to_exact(prof->column_norm);
        const ExactRational stay = to_exact(prof->stay_prob) * norm;  // |H_{sigma,sigma}|
        if (stay != 0) walk(start, current, step + 1, signed_weight * stay, square_weight * stay * norm, acc);
        const ExactRational move = to_exact(prof->move_prob_each) * norm;  // |H_{tau,sigma}|
        for (const auto& nb : prof->neighbors) {
            const std::size_t next = *index.position(nb.tau);
            walk(start, next, step + 1, signed_weight * move * nb.sign, square_weight * move * norm, acc);
        }
    }
};

}  // namespace

PathMoments enumerate_path_moments(const Complex& complex, int k, int length, std::size_t max_simplices,
                                   int max_length) {
    check_series_args(k, length);
    const SimplexIndex index = nonempty_index(complex, k);
    if (index.size() > max_simplices || length > max_length) {
        throw ResourceError("path enumeration limited to " + std::to_string(max_simplices) + " simplices and length " +
                            std::to_string(max_length));
    }
    PathEnumerator e{complex, index, length, {}};
    for (const auto& s : index) e.profiles.push_back(transition_profile(complex, s));
    PathMoments acc{0, 0};
    for (std::size_t i = 0; i < index.size(); ++i) e.walk(i, i, 0, ExactRational(1), ExactRational(1), acc);
    acc.mean /= index.size();
    acc.second_moment /= index.size();
    return acc;
}

// ----------------------------------------------------------- bounds

MomentBounds variance_bounds(const Complex& complex, int k, int length, bool with_exact, std::size_t guard) {
    check_series_args(k, length);
    const SimplexIndex index = nonempty_index(complex, k);
    const std::size_t n = complex.vertex_count();
    const auto l = static_cast<unsigned>(length);

    MomentBounds b;
    b.length = length;
    b.min_degree = std::numeric_limits<std::size_t>::max();
    BigInt sum_l = 0;
    BigInt sum_2l = 0;
    LocalScan scan;
    for (const auto& s : index) {
        complex.scan_local(s.vertices(), scan);
        const BigInt norm = scaled_column_norm(n, k, {scan.degree(), scan.up_degree});
        sum_l += mp::pow(norm, l);
        sum_2l += mp::pow(norm, 2 * l);
        b.max_up_degree = std::max(b.max_up_degree, scan.up_degree);
        b.min_degree = std::min(b.min_degree, scan.degree());
        b.max_degree = std::max(b.max_degree, scan.degree());
    }
    const BigInt big_n = n;
    const BigInt count = index.size();
    const BigInt stay = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(b.max_up_degree) - k - 1;
    b.lower_exact = ExactRational(mp::pow(stay, l) * sum_l, mp::pow(big_n, 2 * l) * count);
    b.upper_exact = ExactRational(sum_2l, mp::pow(big_n, 2 * l) * count);
    b.lower = to_double(b.lower_exact);
    b.upper = to_double(b.upper_exact);

    const double nd = static_cast<double>(n);
    const double shrink = 1.0 - (k + 1) / nd;
    b.cap_general = std::pow(k + 2.0, 2.0 * length);
    b.cap_clique = std::pow(4.0, length) * std::pow(shrink, 2.0 * length);
    b.growth_upper = std::pow(1.0 + static_cast<double>(b.max_degree) / nd, 2.0 * length);
    b.growth_lower = std::pow(1.0 + static_cast<double>(b.min_degree) / nd, length);

    if (with_exact && index.size() <= guard) b.exact_second_moment = exact_second_moment(complex, k, length, guard);
    return b;
}

// --------------------------------------------------------------- spectrum

std::vector<double> symmetric_eigenvalues(DenseMatrix<double> a, double tol, int max_sweeps) {
    const std::size_t s = a.rows();
    auto off_norm = [&] {
        double sum = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                if (i != j) sum += a(i, j) * a(i, j);
            }
        }
        return std::sqrt(sum);
    };
    int sweep = 0;
    while (off_norm() > tol) {
        if (sweep++ == max_sweeps) {
            throw NumericError("Jacobi iteration did not converge after " + std::to_string(max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < s; ++p) {
            for (std::size_t q = p + 1; q < s; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double sn = t * c;
                for (std::size_t r = 0; r < s; ++r) {
                    const double arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - sn * arq;
                    a(r, q) = sn * arp + c * arq;
                }
                for (std::size_t r = 0; r < s; ++r) {
                    const double apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - sn * aqr;
                    a(q, r) = sn * apr + c * aqr;
                }
            }
        }
    }
    std::vector<double> eig(s);
    for (std::size_t i = 0; i < s; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

SpectralSummary spectral_summary(const Complex& complex, int k, std::size_t guard) {
    if (k < 1) throw InputError("k must be >= 1");
    const auto lap = assemble_laplacian_dense(complex, k, guard);
    DenseMatrix<double> a(lap.rows(), lap.cols());
    for (std::size_t i = 0; i < lap.rows(); ++i) {
        for (std::size_t j = 0; j < lap.cols(); ++j) a(i, j) = static_cast<double>(lap(i, j));
    }
    SpectralSummary out;
    out.eigenvalues = symmetric_eigenvalues(std::move(a));
    out.tolerance = 1e-8 * static_cast<double>(complex.vertex_count());
    for (double e : out.eigenvalues) {
        if (e < out.tolerance) {
            ++out.nullity;
        } else if (!out.gap) {
            out.gap = e;
        }
    }
    return out;
}

// ----------------------------------------------------------------- report

OracleReport oracle_report(const Complex& complex, int k, std::span<const int> lengths, std::size_t guard) {
    const SimplexIndex index = nonempty_index(complex, k);
    OracleReport r;
    r.n = complex.vertex_count();
    r.k = k;
    r.simplex_count = index.size();
    r.betti = exact_betti(complex, k, guard);
    r.normalized_betti = static_cast<double>(r.betti) / static_cast<double>(r.simplex_count);
    r.spectrum = spectral_summary(complex, k, guard);
    if (lengths.empty()) return r;
    const int max_len = *std::max_element(lengths.begin(), lengths.end());
    const auto traces = normalized_trace_series(complex, k, max_len, guard);
    const auto moments = second_moment_series(complex, k, max_len, guard);
    for (int l : lengths) {
        OracleLengthRow row;
        row.length = l;
        row.normalized_trace = traces[static_cast<std::size_t>(l - 1)];
        row.second_moment = moments[static_cast<std::size_t>(l - 1)];
        row.bounds = variance_bounds(complex, k, l, false, guard);
        row.bounds.exact_second_moment = row.second_moment;
        r.rows.push_back(std::move(row));
    }
    return r;
}

}  // namespace betti
