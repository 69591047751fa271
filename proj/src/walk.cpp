#include "betti/walk.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "betti/error.hpp"

namespace betti {

void WalkConfig::validate() const {
    if (k < 1) throw InputError("walk dimension k must be >= 1");
    if (length < 1) throw InputError("path length must be >= 1");
}

std::optional<TransitionProfile> transition_profile(const Complex& complex, const Simplex& sigma) {
    const LocalScan scan = checked_scan(complex, sigma.vertices());
    const auto n = static_cast<std::int64_t>(complex.vertex_count());
    const int k = sigma.dimension();
    const std::int64_t up = static_cast<std::int64_t>(scan.up_degree);
    const std::int64_t total = scaled_column_norm(complex.vertex_count(), k, {scan.degree(), scan.up_degree});
    if (total == 0) return std::nullopt;

    TransitionProfile p;
    p.up_degree = scan.up_degree;
    p.column_norm = Rational(total, n);
    p.stay_prob = Rational(n - up - k - 1, total);
    p.move_prob_each = Rational(1, total);
    p.neighbors.reserve(scan.moves.size());
    for (const auto& mv : scan.moves) {
        auto ex = exchange_vertex(sigma.vertices(), mv.out_pos, mv.in_vertex);
        p.neighbors.push_back({std::move(ex.tau), h_sign(mv.out_pos, ex.in_pos), mv.out_pos, ex.in_pos});
    }
    std::sort(p.neighbors.begin(), p.neighbors.end(), [](const auto& a, const auto& b) { return a.tau < b.tau; });
    return p;
}

PathSampler::PathSampler(const Complex& complex, int k, int length) : complex_(complex), k_(k), length_(length) {
    WalkConfig{k, length, 0}.validate();
    current_.reserve(static_cast<std::size_t>(k) + 1);
}

double PathSampler::sample(std::span<const Vertex> start, Rng& rng, const TraceSink* trace) {
    current_.assign(start.begin(), start.end());
    closed_ = false;
    const std::size_t n = complex_.vertex_count();
    const double inv_n = 1.0 / static_cast<double>(n);
    double product = 1.0;

    for (int step = 0; step < length_; ++step) {
        complex_.scan_local(current_, scan_);
        const std::int64_t total = scaled_column_norm(n, k_, {scan_.degree(), scan_.up_degree});
        if (total == 0) {
            // Zero columns are unreachable after the first state because H is symmetric.
            assert(step == 0);
            current_.assign(start.begin(), start.end());
            return 0.0;
        }
        const double norm = static_cast<double>(total) * inv_n;
        const auto draw = uniform_below(rng, static_cast<std::uint64_t>(total));
        const bool moves = draw < scan_.degree();
        NeighborMove mv{};
        std::uint32_t in_pos = 0;
        int sign = 1;
        if (moves) {
            mv = scan_.moves[draw];
            const auto below = std::lower_bound(current_.begin(), current_.end(), mv.in_vertex) - current_.begin();
            in_pos = static_cast<std::uint32_t>(below) - (current_[mv.out_pos] < mv.in_vertex ? 1u : 0u);
            sign = h_sign(mv.out_pos, in_pos);
        }
        if (trace) (*trace)({static_cast<std::size_t>(step), current_, sign, norm});
        if (moves) {
            current_.erase(current_.begin() + mv.out_pos);
            current_.insert(current_.begin() + in_pos, mv.in_vertex);
        }
        product *= sign * norm;
    }
    closed_ = std::equal(current_.begin(), current_.end(), start.begin(), start.end());
    return closed_ ? product : 0.0;
}

PathSample sample_path(const Complex& complex, const WalkConfig& cfg, const Simplex& start, Rng& rng) {
    cfg.validate();
    if (start.dimension() != cfg.k || !complex.contains(start)) {
        throw InputError("walk start " + start.to_string() + " is not a " + std::to_string(cfg.k) + "-simplex");
    }
    PathSampler sampler(complex, cfg.k, cfg.length);
    PathSample out;
    out.start = start;
    out.length = cfg.length;
    out.f_value = sampler.sample(start.vertices(), rng);
    out.closed = sampler.last_closed();
    out.end = Simplex(std::vector<Vertex>(sampler.last_end().begin(), sampler.last_end().end()));
    return out;
}

double evaluate_f(const Complex& complex, std::span<const Simplex> states, std::span<const int> signs) {
    if (states.empty() || signs.size() + 1 != states.size()) {
        throw InputError("a path of length l needs l+1 states and l signs");
    }
    if (states.front() != states.back()) return 0.0;
    double product = 1.0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        const Rational norm = column_one_norm(complex, states[i]);
        product *= (signs[i] < 0 ? -1.0 : 1.0) * boost::rational_cast<double>(norm);
    }
    return product;
}

}  // namespace betti
