#include "betti/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "betti/error.hpp"

namespace betti {

std::string_view algorithm_name(Algorithm a) noexcept {
    return a == Algorithm::cbne ? "cbne" : "cbne-var";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "cbne") return Algorithm::cbne;
    if (name == "cbne-var") return Algorithm::cbne_var;
    throw InputError("unknown algorithm '" + std::string(name) + "' (expected cbne or cbne-var)");
}

void EstimateConfig::validate() const {
    if (k < 1) throw InputError("k must be >= 1");
    if (length < 1) throw InputError("path length must be >= 1");
    if (!(eps > 0.0 && eps <= 1.0)) throw InputError("eps must lie in (0, 1]");
    if (!(eta > 0.0 && eta < 1.0)) throw InputError("eta must lie in (0, 1)");
    if (workers < 1) throw InputError("workers must be >= 1");
    if (!(budget >= 1.0)) throw InputError("budget must be >= 1");
}

// ------------------------------------------------------------ RunningStats

void RunningStats::push(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double total = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    count_ += other.count_;
}

double RunningStats::variance() const noexcept {
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

// ------------------------------------------------------------ sample counts

double norm_bound(const Complex& complex) noexcept {
    return complex.kind() == ComplexKind::clique ? 2.0 : static_cast<double>(complex.vertex_count());
}

std::uint64_t sample_count(double real_count, std::string_view phase, double budget) {
    if (!std::isfinite(real_count) || real_count > budget) {
        throw SampleBudgetExceeded(std::string(phase), real_count, budget);
    }
    const double nearest = std::round(real_count);
    double count = std::ceil(real_count);
    if (std::abs(real_count - nearest) <= 1e-9 * std::max(1.0, real_count)) count = nearest;
    if (count > budget) throw SampleBudgetExceeded(std::string(phase), count, budget);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(count));
}

std::uint64_t sample_count_cbne(const EstimateConfig& cfg, double c) {
    const double x = std::log(2.0 / cfg.eta) / (cfg.eps * cfg.eps) * std::pow(c, 2.0 * cfg.length);
    return sample_count(x, "path", cfg.budget);
}

std::uint64_t cbne_var_simplex_count(const EstimateConfig& cfg, double c) {
    const double x = std::pow(c, 4.0 * cfg.length / 3.0) * std::pow(cfg.eps, -4.0 / 3.0) * std::pow(cfg.eta, -2.0 / 3.0);
    return sample_count(x, "simplex", cfg.budget);
}

std::uint64_t cbne_var_path_count(const EstimateConfig& cfg, double c, double v_hat, std::uint64_t n_simplex_samples) {
    const double padding = std::pow(c, 2.0 * cfg.length) / std::sqrt(static_cast<double>(n_simplex_samples));
    const double x = (v_hat + padding) / (cfg.eta * cfg.eps * cfg.eps);
    return sample_count(x, "path", cfg.budget);
}

// ------------------------------------------------------------ parallel draws

namespace {

struct WorkerOutput {
    RunningStats stats;
    std::vector<double> samples;
};

/// Splits [0, total) into contiguous chunks, one per worker, and merges the
/// per-worker statistics in worker order.
template <typename Body>
WorkerOutput run_chunked(std::uint64_t total, unsigned workers, bool record, Body body) {
    std::vector<WorkerOutput> outputs(workers);
    auto run = [&](unsigned w) {
        const std::uint64_t begin = total * w / workers;
        const std::uint64_t end = total * (w + 1) / workers;
        if (record) outputs[w].samples.reserve(end - begin);
        body(w, end - begin, outputs[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    }
    WorkerOutput merged;
    for (auto& out : outputs) {
        merged.stats.merge(out.stats);
        merged.samples.insert(merged.samples.end(), out.samples.begin(), out.samples.end());
    }
    return merged;
}

WorkerOutput draw_paths(const Complex& complex, const EstimateConfig& cfg, const SimplexIndex& index,
                        std::uint64_t n_paths) {
    return run_chunked(n_paths, cfg.workers, cfg.record_samples,
                       [&](unsigned w, std::uint64_t count, WorkerOutput& out) {
                           Rng rng = make_stream(cfg.seed, Stream::paths, w);
                           PathSampler sampler(complex, cfg.k, cfg.length);
                           for (std::uint64_t i = 0; i < count; ++i) {
                               const auto& start = index[uniform_below(rng, index.size())];
                               const bool traced = w == 0 && cfg.trace && i < cfg.trace_paths;
                               const double f = sampler.sample(start.vertices(), rng, traced ? &cfg.trace : nullptr);
                               out.stats.push(f);
                               if (cfg.record_samples) out.samples.push_back(f);
                           }
                       });
}

const SimplexIndex& require_nonempty(const SimplexIndex& index, int k) {
    if (index.empty()) {
        throw InputError("the complex has no " + std::to_string(k) + "-simplices");
    }
    return index;
}

EstimateResult base_result(Algorithm a, const Complex& complex, const EstimateConfig& cfg, std::size_t count) {
    EstimateResult r;
    r.algorithm = a;
    r.n = complex.vertex_count();
    r.k = cfg.k;
    r.length = cfg.length;
    r.eps = cfg.eps;
    r.eta = cfg.eta;
    r.norm_bound = norm_bound(complex);
    r.simplex_count = count;
    r.seed = cfg.seed;
    r.workers = cfg.workers;
    return r;
}

void finish_paths(EstimateResult& r, WorkerOutput&& paths) {
    r.n_paths = paths.stats.count();
    r.estimate = paths.stats.mean();
    r.empirical_variance = paths.stats.variance();
    r.samples = std::move(paths.samples);
}

}  // namespace

// ------------------------------------------------------------- estimators

EstimateResult cbne(const Complex& complex, const EstimateConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    const SimplexIndex index = complex.enumerate(cfg.k);
    require_nonempty(index, cfg.k);
    EstimateResult r = base_result(Algorithm::cbne, complex, cfg, index.size());
    const std::uint64_t n_paths = sample_count_cbne(cfg, r.norm_bound);
    finish_paths(r, draw_paths(complex, cfg, index, n_paths));
    r.elapsed = std::chrono::steady_clock::now() - t0;
    return r;
}

namespace {

void accumulate_norm_powers(const Complex& complex, const EstimateConfig& cfg, const SimplexIndex& index,
                            std::uint64_t n_samples, Rng& rng, RunningStats& stats) {
    const std::size_t n = complex.vertex_count();
    std::vector<std::int64_t> cache(index.size(), -1);
    LocalScan scan;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const auto pos = uniform_below(rng, index.size());
        if (cache[pos] < 0) {
            complex.scan_local(index[pos].vertices(), scan);
            cache[pos] = scaled_column_norm(n, cfg.k, {scan.degree(), scan.up_degree});
        }
        stats.push(std::pow(static_cast<double>(cache[pos]) / static_cast<double>(n), 2.0 * cfg.length));
    }
}

}  // namespace

double estimate_variance_bound(const Complex& complex, const EstimateConfig& cfg, const SimplexIndex& index,
                               std::uint64_t n_samples, Rng& rng) {
    require_nonempty(index, cfg.k);
    if (n_samples < 1) throw InputError("need at least one simplex sample");
    RunningStats stats;
    accumulate_norm_powers(complex, cfg, index, n_samples, rng, stats);
    return stats.mean();
}

double estimate_variance_bound(const Complex& complex, const EstimateConfig& cfg, std::uint64_t n_samples, Rng& rng) {
    return estimate_variance_bound(complex, cfg, complex.enumerate(cfg.k), n_samples, rng);
}

EstimateResult cbne_var(const Complex& complex, const EstimateConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    const SimplexIndex index = complex.enumerate(cfg.k);
    require_nonempty(index, cfg.k);
    EstimateResult r = base_result(Algorithm::cbne_var, complex, cfg, index.size());

    const std::uint64_t n_simplex = cbne_var_simplex_count(cfg, r.norm_bound);
    auto bound = run_chunked(n_simplex, cfg.workers, false, [&](unsigned w, std::uint64_t count, WorkerOutput& out) {
        Rng rng = make_stream(cfg.seed, Stream::simplex_samples, w);
        accumulate_norm_powers(complex, cfg, index, count, rng, out.stats);
    });
    r.n_simplex_samples = n_simplex;
    r.v_hat = bound.stats.mean();

    const std::uint64_t n_paths = cbne_var_path_count(cfg, r.norm_bound, *r.v_hat, n_simplex);
    finish_paths(r, draw_paths(complex, cfg, index, n_paths));
    r.elapsed = std::chrono::steady_clock::now() - t0;
    return r;
}

EstimateResult run_estimator(Algorithm algorithm, const Complex& complex, const EstimateConfig& cfg) {
    return algorithm == Algorithm::cbne ? cbne(complex, cfg) : cbne_var(complex, cfg);
}

}  // namespace betti
