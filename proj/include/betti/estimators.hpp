#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "betti/complex.hpp"
#include "betti/rng.hpp"
#include "betti/walk.hpp"

namespace betti {

enum class Algorithm { cbne, cbne_var };

std::string_view algorithm_name(Algorithm a) noexcept;
/// Accepts "cbne" and "cbne-var". Throws InputError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct EstimateConfig {
    int k = 1;
    int length = 1;
    double eps = 0.1;
    double eta = 0.1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    /// Largest sample count either phase may request.
    double budget = 1e9;
    /// Keep every f value in EstimateResult::samples (worker order).
    bool record_samples = false;
    /// Receives the first `trace_paths` paths drawn by worker 0.
    TraceSink trace;
    std::size_t trace_paths = 0;

    void validate() const;
};

/// Streaming count / mean / sum of squared deviations. Merging is Chan's
/// pairwise update, so a fixed merge order gives bit-identical results.
class RunningStats {
public:
    void push(double x) noexcept;
    void merge(const RunningStats& other) noexcept;

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double m2() const noexcept { return m2_; }
    /// Unbiased sample variance (0 for fewer than two samples).
    double variance() const noexcept;

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct EstimateResult {
    Algorithm algorithm = Algorithm::cbne;
    std::size_t n = 0;
    int k = 0;
    int length = 0;
    double eps = 0.0;
    double eta = 0.0;
    double norm_bound = 0.0;  ///< C
    std::size_t simplex_count = 0;  ///< |S_k|
    std::uint64_t n_simplex_samples = 0;  ///< N_s (0 for CBNE)
    std::uint64_t n_paths = 0;  ///< N_p
    std::optional<double> v_hat;
    double estimate = 0.0;
    double empirical_variance = 0.0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::chrono::nanoseconds elapsed{0};
    std::vector<double> samples;

    std::uint64_t total_draws() const noexcept { return n_simplex_samples + n_paths; }
};

/// C = 2 for clique complexes, n otherwise.
double norm_bound(const Complex& complex) noexcept;

/// Rounds a real sample count up, treating values within 1e-9 relative of an
/// integer as that integer. Throws SampleBudgetExceeded above `budget`.
std::uint64_t sample_count(double real_count, std::string_view phase, double budget);

/// ceil(ln(2/eta) * C^(2l) / eps^2).
std::uint64_t sample_count_cbne(const EstimateConfig& cfg, double c);
/// ceil(C^(4l/3) eps^(-4/3) eta^(-2/3)).
std::uint64_t cbne_var_simplex_count(const EstimateConfig& cfg, double c);
/// ceil((V + C^(2l)/sqrt(N_s)) / (eta eps^2)).
std::uint64_t cbne_var_path_count(const EstimateConfig& cfg, double c, double v_hat, std::uint64_t n_simplex_samples);

/// Hoeffding-budgeted path estimator of tr(H^l)/|S_k|.
EstimateResult cbne(const Complex& complex, const EstimateConfig& cfg);

/// Mean of ||H|sigma_i>||_1^(2l) over `n_samples` uniform draws from `index`.
double estimate_variance_bound(const Complex& complex, const EstimateConfig& cfg, const SimplexIndex& index,
                               std::uint64_t n_samples, Rng& rng);
double estimate_variance_bound(const Complex& complex, const EstimateConfig& cfg, std::uint64_t n_samples, Rng& rng);

/// Variance-adaptive estimator: sizes the path phase from a sampled bound on
/// the second moment.
EstimateResult cbne_var(const Complex& complex, const EstimateConfig& cfg);

EstimateResult run_estimator(Algorithm algorithm, const Complex& complex, const EstimateConfig& cfg);

}  // namespace betti
