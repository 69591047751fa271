#include "betti/report.hpp"

namespace betti {

using Json = nlohmann::ordered_json;

namespace {

template <typename T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

Json value_json(const OracleValue& v) {
    Json j;
    j["value"] = v.value;
    j["exact"] = v.exact ? Json(v.exact->str()) : Json(nullptr);
    return j;
}

}  // namespace

Json to_json(const EstimateResult& r, bool with_timing) {
    Json j;
    j["algorithm"] = std::string(algorithm_name(r.algorithm));
    j["n"] = r.n;
    j["k"] = r.k;
    j["l"] = r.length;
    j["eps"] = r.eps;
    j["eta"] = r.eta;
    j["C"] = r.norm_bound;
    j["simplex_count"] = r.simplex_count;
    j["N_s"] = r.n_simplex_samples;
    j["N_p"] = r.n_paths;
    j["v_hat"] = optional_json(r.v_hat);
    j["estimate"] = r.estimate;
    j["empirical_variance"] = r.empirical_variance;
    j["seed"] = r.seed;
    j["workers"] = r.workers;
    j["elapsed_ms"] = with_timing ? Json(std::chrono::duration<double, std::milli>(r.elapsed).count()) : Json(nullptr);
    return j;
}

Json to_json(const MomentBounds& b) {
    Json j;
    j["l"] = b.length;
    j["lower"] = b.lower;
    j["lower_exact"] = b.lower_exact.str();
    j["upper"] = b.upper;
    j["upper_exact"] = b.upper_exact.str();
    j["second_moment"] = b.exact_second_moment ? value_json(*b.exact_second_moment) : Json(nullptr);
    j["max_up_degree"] = b.max_up_degree;
    j["min_degree"] = b.min_degree;
    j["max_degree"] = b.max_degree;
    j["cap_general"] = b.cap_general;
    j["cap_clique"] = b.cap_clique;
    j["growth_upper"] = b.growth_upper;
    j["growth_lower"] = b.growth_lower;
    return j;
}

Json to_json(const SpectralSummary& s) {
    Json j;
    j["eigenvalues"] = s.eigenvalues;
    j["tolerance"] = s.tolerance;
    j["nullity"] = s.nullity;
    j["gap"] = optional_json(s.gap);
    return j;
}

Json to_json(const OracleReport& r) {
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["simplex_count"] = r.simplex_count;
    j["betti"] = r.betti;
    j["normalized_betti"] = r.normalized_betti;
    j["spectrum"] = to_json(r.spectrum);
    j["gap"] = optional_json(r.spectrum.gap);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["l"] = row.length;
        x["normalized_trace"] = value_json(row.normalized_trace);
        x["second_moment"] = value_json(row.second_moment);
        x["bounds"] = to_json(row.bounds);
        rows.push_back(std::move(x));
    }
    j["lengths"] = std::move(rows);
    return j;
}

Json to_json(const DegreeDiagnostics& d) {
    Json j;
    j["quantity"] = d.quantity;
    j["test"] = d.test;
    j["n"] = d.n;
    j["k"] = d.k;
    j["p"] = d.p;
    j["vacuous"] = d.vacuous;
    j["graphs"] = d.graphs;
    j["sample_count"] = d.sample_count;
    j["trials"] = d.trials;
    j["reference_mean"] = d.reference_mean;
    j["empirical_mean"] = d.empirical_mean;
    j["standard_error"] = d.standard_error;
    j["statistic"] = optional_json(d.statistic);
    j["dof"] = optional_json(d.dof);
    j["p_value"] = optional_json(d.p_value);
    Json bins = Json::array();
    for (const auto& b : d.bins) bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"observed", b.observed}, {"expected", b.expected}});
    j["bins"] = std::move(bins);
    j["min_value"] = optional_json(d.min_value);
    j["min_at_least_half_mean"] = optional_json(d.min_at_least_half_mean);
    j["event_fraction"] = optional_json(d.event_fraction);
    j["window"] = optional_json(d.window);
    j["within_window"] = optional_json(d.within_window);
    return j;
}

Json to_json(const RegimeReport& r) {
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["p"] = r.p;
    j["l"] = r.length;
    j["p_pow_k"] = r.p_pow_k;
    j["n_over_log_n"] = r.n_over_log_n;
    j["n_over_log2_n"] = r.n_over_log2_n;
    j["k_pow_minus_inv_k"] = r.k_root;
    j["hard_lower"] = r.hard_lower;
    j["easy_cap"] = r.easy_cap;
    j["dimension_sublinear"] = r.dimension_sublinear;
    j["dimension_small"] = r.dimension_small;
    j["p_large"] = r.p_large;
    j["p_small"] = r.p_small;
    j["regime"] = regime_name(r.regime);
    return j;
}

}  // namespace betti
