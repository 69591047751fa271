#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betti/graph.hpp"
#include "betti/rng.hpp"

namespace betti {

struct ErConfig {
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// (k+1) parts of n/(k+1) vertices; vertex v lies in part v mod (k+1).
struct PartiteErConfig {
    std::size_t n = 0;
    int k = 1;
    double p = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// G(n, p): pairs (u, v), u < v, visited in lexicographic order, each kept
/// with probability p.
Graph gen_gnp(const ErConfig& cfg);
Graph gen_gnp(std::size_t n, double p, Rng& rng);

/// Cross-part pairs kept with probability p; same-part pairs never drawn.
Graph gen_partite(const PartiteErConfig& cfg);
Graph gen_partite(std::size_t n, int k, double p, Rng& rng);

struct HistogramBin {
    long long lo = 0;  ///< inclusive
    long long hi = 0;  ///< inclusive
    std::uint64_t observed = 0;
    double expected = 0.0;
};

struct DegreeDiagnostics {
    std::string quantity;  ///< "degree" or "deg_minus_updeg"
    std::string test;      ///< "pearson", "rao-scott-2" or "cluster-z"
    std::size_t n = 0;
    int k = 0;
    double p = 0.0;
    bool vacuous = false;
    std::size_t graphs = 0;
    std::uint64_t sample_count = 0;
    std::map<long long, std::uint64_t> histogram;
    /// Reference expected counts per value (same total mass as the histogram).
    std::map<long long, double> expected;

    std::size_t trials = 0;     ///< n - k - 1
    double reference_mean = 0;  ///< d or mu
    double empirical_mean = 0;
    double standard_error = 0;

    std::vector<HistogramBin> bins;  ///< merged bins used by the chi-square
    std::optional<double> statistic;
    std::optional<double> dof;
    std::optional<double> p_value;

    /// degree: smallest observed degree and whether it is >= d/2.
    std::optional<long long> min_value;
    std::optional<bool> min_at_least_half_mean;
    /// Pooled runs: fraction of graphs whose minimum degree is >= d/2.
    std::optional<double> event_fraction;
    /// deg_minus_updeg: window and fraction of samples within it of mu.
    std::optional<double> window;
    std::optional<double> within_window;
};

/// d = (n-k-1) p^k.
double clique_degree_mean(std::size_t n, int k, double p);
/// mu = (n-k-1) p^k ((k+1) - (k+2) p).
double deg_minus_updeg_mean(std::size_t n, int k, double p);
/// Default window n / sqrt(ln n).
double default_window(std::size_t n);

/// Simplex-graph degrees of the (k+1)-cliques of one graph against
/// Binom(n-k-1, p^k). Every clique is used when there are at most
/// `max_samples`; otherwise a uniform subset of that size. The Pearson test
/// here ignores within-graph dependence and is descriptive only.
DegreeDiagnostics clique_degree_diagnostics(const Graph& graph, int k, double p, std::size_t max_samples, Rng& rng);

/// deg(sigma) - d_up(sigma) of the (k+1)-cliques of one graph.
DegreeDiagnostics deg_minus_updeg_diagnostics(const Graph& graph, int k, double p, std::size_t max_samples, Rng& rng,
                                              std::optional<double> window = std::nullopt);

struct PoolConfig {
    std::size_t graphs = 200;
    std::size_t max_samples_per_graph = 1u << 20;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Degrees pooled over independent draws of G_{n,k,p}. Each graph is one
/// cluster; the chi-square is second-order Rao-Scott corrected for the
/// within-graph dependence.
DegreeDiagnostics pooled_clique_degree_diagnostics(std::size_t n, int k, double p, const PoolConfig& pool);

/// deg - d_up pooled over independent draws of G_{n,p}; the mean is tested
/// against mu with a cluster-robust standard error.
DegreeDiagnostics pooled_deg_minus_updeg_diagnostics(std::size_t n, int k, double p, const PoolConfig& pool,
                                                     std::optional<double> window = std::nullopt);

enum class Regime { easy, hard, neither };

struct RegimeReport {
    std::size_t n = 0;
    int k = 0;
    double p = 0.0;
    int length = 0;
    double p_pow_k = 0.0;
    double n_over_log_n = 0.0;
    double n_over_log2_n = 0.0;
    double k_root = 0.0;          ///< k^(-1/k)
    double hard_lower = 0.0;      ///< (1 + p^k)^l
    double easy_cap = 0.0;        ///< 2.5^l
    bool dimension_sublinear = false;  ///< k <= n / ln n
    bool dimension_small = false;      ///< k <= n / ln^2 n
    bool p_large = false;              ///< p^k >= 1/4
    bool p_small = false;              ///< (k+1) p^k <= 0.1
    Regime regime = Regime::neither;
};

RegimeReport regime_report(std::size_t n, int k, double p, int length);
std::string regime_name(Regime r);

/// value,observed,expected rows of the histogram.
void write_diagnostics_csv(std::ostream& out, const DegreeDiagnostics& d);

}  // namespace betti
