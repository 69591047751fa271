#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "betti/complex.hpp"
#include "betti/laplacian.hpp"
#include "betti/rng.hpp"

namespace betti {

struct TransitionNeighbor {
    Simplex tau;
    int sign;  ///< sign of H_{tau,sigma}
    std::uint32_t out_pos;
    std::uint32_t in_pos;
};

/// Column sigma of the Markov kernel P_{sigma,tau} = |H_{tau,sigma}| / ||H|sigma>||_1.
struct TransitionProfile {
    Rational stay_prob;
    Rational move_prob_each;
    std::vector<TransitionNeighbor> neighbors;  ///< sorted by tau
    std::size_t up_degree = 0;
    Rational column_norm;
};

/// Closed-form kernel column. Returns nullopt when ||H|sigma>||_1 = 0, where
/// the kernel is undefined. Throws InputError if sigma is not in the complex.
std::optional<TransitionProfile> transition_profile(const Complex& complex, const Simplex& sigma);

struct WalkConfig {
    int k = 1;
    int length = 1;  ///< path length l >= 1
    std::uint64_t seed = 0;

    void validate() const;
};

struct PathSample {
    Simplex start;
    Simplex end;
    int length = 0;
    double f_value = 0.0;
    bool closed = false;
};

/// One visited state of a traced walk.
struct TraceStep {
    std::size_t index;
    std::span<const Vertex> simplex;
    int sign;             ///< sign of the H entry used to leave this state
    double column_norm;   ///< ||H|sigma_index>||_1
};

using TraceSink = std::function<void(const TraceStep&)>;

/// Reusable walker. Holds scratch buffers, so one instance per thread.
class PathSampler {
public:
    PathSampler(const Complex& complex, int k, int length);

    /// Walks `length` kernel steps from `start` and returns f_k of the path.
    /// A start with zero column norm yields 0 without stepping.
    double sample(std::span<const Vertex> start, Rng& rng, const TraceSink* trace = nullptr);

    std::span<const Vertex> last_end() const noexcept { return current_; }
    bool last_closed() const noexcept { return closed_; }

private:
    const Complex& complex_;
    int k_;
    int length_;
    std::vector<Vertex> current_;
    LocalScan scan_;
    bool closed_ = false;
};

PathSample sample_path(const Complex& complex, const WalkConfig& cfg, const Simplex& start, Rng& rng);

/// f_k = <sigma_l|sigma_0> prod_{i<l} sign_i * ||H|sigma_i>||_1 for an explicit
/// path of l+1 states and l step signs (+1 / -1).
double evaluate_f(const Complex& complex, std::span<const Simplex> states, std::span<const int> signs);

}  // namespace betti
