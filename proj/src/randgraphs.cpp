#include "betti/randgraphs.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "betti/complex.hpp"
#include "betti/error.hpp"
#include "betti/laplacian.hpp"

namespace betti {

// ------------------------------------------------------------- generators

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
}

}  // namespace

void ErConfig::validate() const { check_probability(p); }

void PartiteErConfig::validate() const {
    check_probability(p);
    if (k < 0) throw InputError("k must be >= 0");
    if (n % static_cast<std::size_t>(k + 1) != 0) {
        throw InputError("n=" + std::to_string(n) + " is not divisible into " + std::to_string(k + 1) + " equal parts");
    }
}

Graph gen_gnp(std::size_t n, double p, Rng& rng) {
    ErConfig{n, p, 0}.validate();
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng)) g.add_edge(u, v);
        }
    }
    return g;
}

Graph gen_gnp(const ErConfig& cfg) {
    Rng rng = make_stream(cfg.seed, Stream::graph);
    return gen_gnp(cfg.n, cfg.p, rng);
}

Graph gen_partite(std::size_t n, int k, double p, Rng& rng) {
    PartiteErConfig{n, k, p, 0}.validate();
    const auto parts = static_cast<Vertex>(k + 1);
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (u % parts != v % parts && coin(rng)) g.add_edge(u, v);
        }
    }
    return g;
}

Graph gen_partite(const PartiteErConfig& cfg) {
    Rng rng = make_stream(cfg.seed, Stream::graph);
    return gen_partite(cfg.n, cfg.k, cfg.p, rng);
}

// ------------------------------------------------------------ references

double clique_degree_mean(std::size_t n, int k, double p) {
    return static_cast<double>(n - static_cast<std::size_t>(k) - 1) * std::pow(p, k);
}

double deg_minus_updeg_mean(std::size_t n, int k, double p) {
    return clique_degree_mean(n, k, p) * ((k + 1) - (k + 2) * p);
}

double default_window(std::size_t n) {
    return static_cast<double>(n) / std::sqrt(std::log(static_cast<double>(n)));
}

namespace {

/// Reference pmf over a contiguous value range starting at `offset`.
struct Reference {
    long long offset = 0;
    std::vector<double> pmf;
};

Reference binomial_reference(std::size_t trials, double q) {
    Reference r;
    r.pmf.resize(trials + 1);
    if (q <= 0.0 || q >= 1.0) {
        r.pmf[q >= 1.0 ? trials : 0] = 1.0;
        return r;
    }
    boost::math::binomial_distribution<double> dist(static_cast<double>(trials), q);
    for (std::size_t v = 0; v <= trials; ++v) r.pmf[v] = boost::math::pdf(dist, static_cast<double>(v));
    return r;
}

/// Sum of `trials` independent steps in {-1, 0, +1}.
Reference trinomial_sum_reference(std::size_t trials, double up, double down) {
    const double stay = std::max(0.0, 1.0 - up - down);
    std::vector<double> cur(2 * trials + 1, 0.0), next(cur.size());
    cur[trials] = 1.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] == 0.0) continue;
            next[i] += cur[i] * stay;
            if (i + 1 < cur.size()) next[i + 1] += cur[i] * up;
            if (i > 0) next[i - 1] += cur[i] * down;
        }
        std::swap(cur, next);
    }
    return {-static_cast<long long>(trials), std::move(cur)};
}

/// Consecutive reference values grouped left to right until each group
/// expects at least `min_expected` samples; a short final group joins the
/// previous one.
std::vector<HistogramBin> merge_bins(const Reference& ref, double total, double min_expected = 5.0) {
    std::vector<HistogramBin> bins;
    HistogramBin cur;
    bool open = false;
    for (std::size_t i = 0; i < ref.pmf.size(); ++i) {
        const long long v = ref.offset + static_cast<long long>(i);
        if (!open) {
            cur = {v, v, 0, 0.0};
            open = true;
        }
        cur.hi = v;
        cur.expected += ref.pmf[i] * total;
        if (cur.expected >= min_expected) {
            bins.push_back(cur);
            open = false;
        }
    }
    if (open) {
        if (bins.empty()) {
            bins.push_back(cur);
        } else {
            bins.back().hi = cur.hi;
            bins.back().expected += cur.expected;
        }
    }
    return bins;
}

std::size_t bin_of(const std::vector<HistogramBin>& bins, long long v) {
    for (std::size_t b = 0; b < bins.size(); ++b) {
        if (v <= bins[b].hi) return b;
    }
    return bins.size() - 1;
}

double chi_square_sf(double stat, double dof) {
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(dof), stat));
}

double normal_two_sided(double z) {
    return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(), std::abs(z)));
}

struct CliqueSamples {
    std::vector<long long> degree;
    std::vector<long long> deg_minus_up;
};

CliqueSamples sample_cliques(const Graph& graph, int k, std::size_t max_samples, Rng& rng) {
    if (k < 1) throw InputError("k must be >= 1");
    const CliqueComplex complex(graph);
    const SimplexIndex index = complex.enumerate(k);
    std::vector<std::size_t> chosen(index.size());
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    if (chosen.size() > max_samples) {
        std::vector<std::size_t> subset;
        subset.reserve(max_samples);
        std::sample(chosen.begin(), chosen.end(), std::back_inserter(subset), max_samples, rng);
        chosen = std::move(subset);
    }
    CliqueSamples out;
    LocalScan scan;
    for (std::size_t i : chosen) {
        complex.scan_local(index[i].vertices(), scan);
        out.degree.push_back(static_cast<long long>(scan.degree()));
        out.deg_minus_up.push_back(static_cast<long long>(scan.degree()) - static_cast<long long>(scan.up_degree));
    }
    return out;
}

DegreeDiagnostics base_diagnostics(const char* quantity, std::size_t n, int k, double p) {
    if (k < 1) throw InputError("k must be >= 1");
    if (n < static_cast<std::size_t>(k) + 1) throw InputError("need n >= k + 1");
    check_probability(p);
    DegreeDiagnostics d;
    d.quantity = quantity;
    d.n = n;
    d.k = k;
    d.p = p;
    d.trials = n - static_cast<std::size_t>(k) - 1;
    return d;
}

Reference reference_for(const DegreeDiagnostics& d) {
    const double pk = std::pow(d.p, d.k);
    if (d.quantity == "degree") return binomial_reference(d.trials, pk);
    return trinomial_sum_reference(d.trials, (d.k + 1) * pk * (1.0 - d.p), pk * d.p);
}

/// Histogram, expected counts, bins and mean; tests are added by callers.
void summarize(DegreeDiagnostics& d, const std::vector<long long>& values) {
    d.sample_count = values.size();
    d.vacuous = values.empty();
    for (long long v : values) ++d.histogram[v];
    if (d.vacuous) return;
    const Reference ref = reference_for(d);
    const double total = static_cast<double>(values.size());
    for (std::size_t i = 0; i < ref.pmf.size(); ++i) {
        d.expected[ref.offset + static_cast<long long>(i)] = ref.pmf[i] * total;
    }
    d.bins = merge_bins(ref, total);
    for (const auto& [v, c] : d.histogram) d.bins[bin_of(d.bins, v)].observed += c;
    double sum = 0.0;
    for (long long v : values) sum += static_cast<double>(v);
    d.empirical_mean = sum / total;
}

double pearson_statistic(const std::vector<HistogramBin>& bins) {
    double stat = 0.0;
    for (const auto& b : bins) {
        const double diff = static_cast<double>(b.observed) - b.expected;
        stat += diff * diff / b.expected;
    }
    return stat;
}

void pearson_test(DegreeDiagnostics& d) {
    d.test = "pearson";
    if (d.bins.size() < 2) return;
    d.statistic = pearson_statistic(d.bins);
    d.dof = static_cast<double>(d.bins.size() - 1);
    d.p_value = chi_square_sf(*d.statistic, *d.dof);
}

void window_fraction(DegreeDiagnostics& d, const std::vector<long long>& values, std::optional<double> window) {
    d.window = window.value_or(default_window(d.n));
    if (values.empty()) return;
    std::size_t inside = 0;
    for (long long v : values) {
        if (std::abs(static_cast<double>(v) - d.reference_mean) <= *d.window) ++inside;
    }
    d.within_window = static_cast<double>(inside) / static_cast<double>(values.size());
}

template <typename Fn>
void for_each_graph(std::size_t count, unsigned workers, Fn fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t g = 0; g < count; ++g) fn(g);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) {
        threads.emplace_back([&] {
            for (std::size_t g = next++; g < count; g = next++) fn(g);
        });
    }
}

}  // namespace

// ---------------------------------------------------------- single graph

DegreeDiagnostics clique_degree_diagnostics(const Graph& graph, int k, double p, std::size_t max_samples, Rng& rng) {
    DegreeDiagnostics d = base_diagnostics("degree", graph.vertex_count(), k, p);
    d.graphs = 1;
    d.reference_mean = clique_degree_mean(d.n, k, p);
    const CliqueSamples s = sample_cliques(graph, k, max_samples, rng);
    summarize(d, s.degree);
    if (d.vacuous) return d;
    pearson_test(d);
    d.min_value = *std::min_element(s.degree.begin(), s.degree.end());
    d.min_at_least_half_mean = static_cast<double>(*d.min_value) >= d.reference_mean / 2.0;
    double ss = 0.0;
    for (long long v : s.degree) ss += (static_cast<double>(v) - d.empirical_mean) * (static_cast<double>(v) - d.empirical_mean);
    if (s.degree.size() > 1) {
        d.standard_error = std::sqrt(ss / static_cast<double>(s.degree.size() - 1) / static_cast<double>(s.degree.size()));
    }
    return d;
}

DegreeDiagnostics deg_minus_updeg_diagnostics(const Graph& graph, int k, double p, std::size_t max_samples, Rng& rng,
                                              std::optional<double> window) {
    DegreeDiagnostics d = base_diagnostics("deg_minus_updeg", graph.vertex_count(), k, p);
    d.graphs = 1;
    d.reference_mean = deg_minus_updeg_mean(d.n, k, p);
    const CliqueSamples s = sample_cliques(graph, k, max_samples, rng);
    summarize(d, s.deg_minus_up);
    window_fraction(d, s.deg_minus_up, window);
    if (d.vacuous) return d;
    d.test = "iid-z";
    double ss = 0.0;
    for (long long v : s.deg_minus_up) {
        ss += (static_cast<double>(v) - d.empirical_mean) * (static_cast<double>(v) - d.empirical_mean);
    }
    const auto m = static_cast<double>(s.deg_minus_up.size());
    if (m > 1) d.standard_error = std::sqrt(ss / (m - 1) / m);
    if (d.standard_error > 0) {
        d.statistic = (d.empirical_mean - d.reference_mean) / d.standard_error;
        d.p_value = normal_two_sided(*d.statistic);
    }
    return d;
}

// ----------------------------------------------------------------- pooled

DegreeDiagnostics pooled_clique_degree_diagnostics(std::size_t n, int k, double p, const PoolConfig& pool) {
    DegreeDiagnostics d = base_diagnostics("degree", n, k, p);
    PartiteErConfig{n, k, p, pool.seed}.validate();
    d.graphs = pool.graphs;
    d.reference_mean = clique_degree_mean(n, k, p);

    std::vector<std::vector<long long>> per_graph(pool.graphs);
    for_each_graph(pool.graphs, pool.workers, [&](std::size_t g) {
        Rng graph_rng = make_stream(pool.seed, Stream::graph, g);
        Rng sample_rng = make_stream(pool.seed, Stream::diagnostics, g);
        per_graph[g] = sample_cliques(gen_partite(n, k, p, graph_rng), k, pool.max_samples_per_graph, sample_rng).degree;
    });
    std::vector<long long> all;
    std::size_t nonempty = 0, with_event = 0;
    for (const auto& v : per_graph) {
        all.insert(all.end(), v.begin(), v.end());
        if (v.empty()) continue;
        ++nonempty;
        if (static_cast<double>(*std::min_element(v.begin(), v.end())) >= d.reference_mean / 2.0) ++with_event;
    }
    summarize(d, all);
    if (d.vacuous) return d;
    d.min_value = *std::min_element(all.begin(), all.end());
    d.min_at_least_half_mean = with_event == nonempty;
    d.event_fraction = static_cast<double>(with_event) / static_cast<double>(nonempty);
    d.test = "rao-scott-2";

    const std::size_t bins = d.bins.size();
    const double total = static_cast<double>(all.size());
    const auto groups = static_cast<double>(pool.graphs);
    // Cluster-robust standard error of the pooled mean.
    double se2 = 0.0;
    for (const auto& v : per_graph) {
        double sum = 0.0;
        for (long long x : v) sum += static_cast<double>(x);
        const double r = sum - d.empirical_mean * static_cast<double>(v.size());
        se2 += r * r;
    }
    if (groups > 1) d.standard_error = std::sqrt(groups / (groups - 1) * se2) / total;
    if (bins < 2) return d;

    // Second-order Rao-Scott correction of the Pearson statistic. The
    // covariance of the pooled bin proportions is estimated from per-graph
    // bin counts by linearizing the ratio estimator.
    const std::size_t q = bins - 1;
    std::vector<double> p_hat(bins), p0(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        p_hat[b] = static_cast<double>(d.bins[b].observed) / total;
        p0[b] = d.bins[b].expected / total;
    }
    std::vector<double> v(q * q, 0.0);
    std::vector<double> z(q);
    for (const auto& values : per_graph) {
        std::vector<double> counts(bins, 0.0);
        for (long long x : values) counts[bin_of(d.bins, x)] += 1.0;
        const auto m = static_cast<double>(values.size());
        for (std::size_t i = 0; i < q; ++i) z[i] = (counts[i] - p_hat[i] * m) / total;
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = 0; j < q; ++j) v[i * q + j] += z[i] * z[j];
        }
    }
    for (double& x : v) x *= groups / (groups - 1);
    // D = N P0^{-1} V with P0^{-1} = diag(1/p0) + 11^T / p0_last.
    std::vector<double> dm(q * q, 0.0);
    for (std::size_t j = 0; j < q; ++j) {
        double col = 0.0;
        for (std::size_t r = 0; r < q; ++r) col += v[r * q + j];
        for (std::size_t i = 0; i < q; ++i) dm[i * q + j] = total * (v[i * q + j] / p0[i] + col / p0[q]);
    }
    double tr = 0.0, tr2 = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        tr += dm[i * q + i];
        for (std::size_t j = 0; j < q; ++j) tr2 += dm[i * q + j] * dm[j * q + i];
    }
    const double mean_eig = tr / static_cast<double>(q);
    const double pearson = pearson_statistic(d.bins);
    if (!(mean_eig > 0.0)) {
        d.statistic = pearson;
        d.dof = static_cast<double>(q);
        d.p_value = chi_square_sf(pearson, static_cast<double>(q));
        return d;
    }
    const double a2 = std::max(0.0, (tr2 / static_cast<double>(q) - mean_eig * mean_eig) / (mean_eig * mean_eig));
    d.statistic = pearson / (mean_eig * (1.0 + a2));
    d.dof = static_cast<double>(q) / (1.0 + a2);
    d.p_value = chi_square_sf(*d.statistic, *d.dof);
    return d;
}

DegreeDiagnostics pooled_deg_minus_updeg_diagnostics(std::size_t n, int k, double p, const PoolConfig& pool,
                                                     std::optional<double> window) {
    DegreeDiagnostics d = base_diagnostics("deg_minus_updeg", n, k, p);
    d.graphs = pool.graphs;
    d.reference_mean = deg_minus_updeg_mean(n, k, p);

    std::vector<std::vector<long long>> per_graph(pool.graphs);
    for_each_graph(pool.graphs, pool.workers, [&](std::size_t g) {
        Rng graph_rng = make_stream(pool.seed, Stream::graph, g);
        Rng sample_rng = make_stream(pool.seed, Stream::diagnostics, g);
        per_graph[g] = sample_cliques(gen_gnp(n, p, graph_rng), k, pool.max_samples_per_graph, sample_rng).deg_minus_up;
    });
    std::vector<long long> all;
    for (const auto& v : per_graph) all.insert(all.end(), v.begin(), v.end());
    summarize(d, all);
    window_fraction(d, all, window);
    if (d.vacuous) return d;
    d.test = "cluster-z";

    const double total = static_cast<double>(all.size());
    const auto groups = static_cast<double>(pool.graphs);
    double se2 = 0.0;
    for (const auto& v : per_graph) {
        double sum = 0.0;
        for (long long x : v) sum += static_cast<double>(x);
        const double r = sum - d.empirical_mean * static_cast<double>(v.size());
        se2 += r * r;
    }
    if (groups > 1) d.standard_error = std::sqrt(groups / (groups - 1) * se2) / total;
    const double diff = d.empirical_mean - d.reference_mean;
    if (d.standard_error > 0.0) {
        d.statistic = diff / d.standard_error;
        d.p_value = normal_two_sided(*d.statistic);
    } else {
        d.statistic = 0.0;
        d.p_value = std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(d.reference_mean)) ? 1.0 : 0.0;
    }
    return d;
}

// ------------------------------------------------------------------ regime

RegimeReport regime_report(std::size_t n, int k, double p, int length) {
    if (k < 1) throw InputError("k must be >= 1");
    if (n < 2) throw InputError("n must be >= 2");
    check_probability(p);
    RegimeReport r;
    r.n = n;
    r.k = k;
    r.p = p;
    r.length = length;
    const double ln = std::log(static_cast<double>(n));
    r.p_pow_k = std::pow(p, k);
    r.n_over_log_n = static_cast<double>(n) / ln;
    r.n_over_log2_n = static_cast<double>(n) / (ln * ln);
    r.k_root = std::pow(static_cast<double>(k), -1.0 / k);
    r.hard_lower = std::pow(1.0 + r.p_pow_k, length);
    r.easy_cap = std::pow(2.5, length);
    r.dimension_sublinear = k <= r.n_over_log_n;
    r.dimension_small = k <= r.n_over_log2_n;
    r.p_large = r.p_pow_k >= 0.25;
    r.p_small = (k + 1) * r.p_pow_k <= 0.1;
    if (r.p_large && r.dimension_sublinear) {
        r.regime = Regime::hard;
    } else if (r.p_small && r.dimension_small) {
        r.regime = Regime::easy;
    }
    return r;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::easy: return "EASY";
        case Regime::hard: return "HARD";
        case Regime::neither: break;
    }
    return "NEITHER";
}

void write_diagnostics_csv(std::ostream& out, const DegreeDiagnostics& d) {
    out << "value,observed,expected\n";
    std::map<long long, std::pair<std::uint64_t, double>> rows;
    for (const auto& [v, e] : d.expected) rows[v].second = e;
    for (const auto& [v, c] : d.histogram) rows[v].first = c;
    for (const auto& [v, row] : rows) out << v << ',' << row.first << ',' << format_decimal(row.second) << '\n';
}

}  // namespace betti
