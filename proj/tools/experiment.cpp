#include "experiment.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

#include "betti/error.hpp"
#include "betti/estimators.hpp"
#include "betti/oracle.hpp"
#include "betti/randgraphs.hpp"

namespace cbne_tool {

using namespace betti;
using nlohmann::json;

namespace {

struct Instance {
    std::string name;
    std::shared_ptr<const Complex> complex;
    std::string load_error;
    std::optional<std::pair<double, std::size_t>> ensemble;  // (p, n) for random ensembles
};

struct OracleCache {
    std::vector<OracleValue> traces;
    std::vector<OracleValue> moments;
    std::string error;
};

struct Row {
    std::size_t instance = 0;
    int k = 0;
    int length = 0;
    std::string algorithm;
    double eps = 0.0;
    double eta = 0.0;
    std::uint64_t seed = 0;
};

struct RowResult {
    std::vector<std::string> cells;
};

template <typename T>
std::vector<T> grid_values(const json& config, const char* key, std::vector<T> fallback) {
    if (!config.contains(key)) return fallback;
    const json& v = config.at(key);
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
}

Instance load_instance(const json& entry, const std::filesystem::path& base, std::vector<std::string>& inputs) {
    Instance inst;
    inst.name = entry.value("name", std::string("instance"));
    try {
        if (entry.contains("graph")) {
            const auto path = (base / entry.at("graph").get<std::string>()).string();
            std::ifstream in(path);
            if (!in) throw InputError("cannot open " + path);
            inputs.push_back(path);
            inst.complex = std::make_shared<CliqueComplex>(read_graph(in));
        } else if (entry.contains("complex")) {
            const auto path = (base / entry.at("complex").get<std::string>()).string();
            std::ifstream in(path);
            if (!in) throw InputError("cannot open " + path);
            inputs.push_back(path);
            inst.complex = std::make_shared<ExplicitComplex>(read_explicit_complex(in));
        } else if (entry.contains("generate")) {
            const json& g = entry.at("generate");
            const std::string mode = g.at("mode").get<std::string>();
            const auto seed = g.value("seed", std::uint64_t{0});
            if (mode == "complete-partite") {
                inst.complex = std::make_shared<CliqueComplex>(generate_complete_partite(g.at("k"), g.at("m")));
            } else if (mode == "disjoint-cliques") {
                inst.complex = std::make_shared<CliqueComplex>(generate_disjoint_cliques(g.at("m"), g.at("k")));
            } else if (mode == "er") {
                const ErConfig cfg{g.at("n").get<std::size_t>(), g.at("p").get<double>(), seed};
                inst.complex = std::make_shared<CliqueComplex>(gen_gnp(cfg));
                inst.ensemble = std::make_pair(cfg.p, cfg.n);
            } else if (mode == "partite-er") {
                const PartiteErConfig cfg{g.at("n").get<std::size_t>(), g.at("k").get<int>(), g.at("p").get<double>(),
                                          seed};
                inst.complex = std::make_shared<CliqueComplex>(gen_partite(cfg));
                inst.ensemble = std::make_pair(cfg.p, cfg.n);
            } else {
                throw InputError("unknown generator mode '" + mode + "'");
            }
        } else {
            throw InputError("instance needs one of graph, complex or generate");
        }
    } catch (const std::exception& e) {
        inst.complex.reset();
        inst.load_error = e.what();
    }
    return inst;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* const kHeader =
    "instance,n,k,l,algorithm,eps,eta,seed,C,simplex_count,N_s,N_p,total_draws,v_hat,estimate,oracle_trace,"
    "second_moment,abs_error,regime,elapsed_ms,status,message";

enum Col {
    c_instance, c_n, c_k, c_l, c_algorithm, c_eps, c_eta, c_seed, c_C, c_simplex_count, c_ns, c_np, c_total,
    c_vhat, c_estimate, c_trace, c_moment, c_error, c_regime, c_elapsed, c_status, c_message, c_count
};

}  // namespace

std::vector<std::string> run_experiment(const json& config, const std::filesystem::path& base_dir,
                                        const ExperimentOptions& opts, std::ostream& out) {
    std::vector<std::string> inputs;
    if (!config.is_object()) throw InputError("experiment config must be a JSON object");
    std::vector<Instance> instances;
    for (const json& entry : config.value("instances", json::array())) instances.push_back(load_instance(entry, base_dir, inputs));

    const auto ks = grid_values<int>(config, "k", {1});
    const auto ls = grid_values<int>(config, "l", {1});
    const auto epss = grid_values<double>(config, "eps", {0.1});
    const auto etas = grid_values<double>(config, "eta", {0.1});
    const auto seeds = grid_values<std::uint64_t>(config, "seeds", {0});
    const auto algorithms = grid_values<std::string>(config, "algorithms", {"cbne", "cbne-var"});
    const double budget = config.value("budget", 1e9);
    const auto guard = config.value("oracle_guard", kDefaultDenseGuard);
    for (const auto& a : algorithms) {
        if (a != "oracle") parse_algorithm(a);
    }
    for (int l : ls) {
        if (l < 1) throw InputError("path lengths must be >= 1");
    }
    const int max_len = ls.empty() ? 0 : *std::max_element(ls.begin(), ls.end());

    // Oracle values per (instance, k), computed once.
    std::vector<std::vector<OracleCache>> oracle(instances.size(), std::vector<OracleCache>(ks.size()));
    for (std::size_t i = 0; i < instances.size() && max_len > 0; ++i) {
        if (!instances[i].complex) continue;
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            try {
                oracle[i][ki].traces = normalized_trace_series(*instances[i].complex, ks[ki], max_len, guard);
                oracle[i][ki].moments = second_moment_series(*instances[i].complex, ks[ki], max_len, guard);
            } catch (const std::exception& e) {
                oracle[i][ki].error = e.what();
            }
        }
    }

    std::vector<Row> rows;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (int k : ks) {
            for (int l : ls) {
                for (const auto& a : algorithms) {
                    if (a == "oracle") {
                        rows.push_back({i, k, l, a, 0.0, 0.0, 0});
                        continue;
                    }
                    for (double eps : epss) {
                        for (double eta : etas) {
                            for (std::uint64_t seed : seeds) rows.push_back({i, k, l, a, eps, eta, seed});
                        }
                    }
                }
            }
        }
    }

    auto compute = [&](const Row& row) {
        RowResult res;
        auto& c = res.cells;
        c.assign(c_count, "");
        const Instance& inst = instances[row.instance];
        const std::size_t ki = static_cast<std::size_t>(std::find(ks.begin(), ks.end(), row.k) - ks.begin());
        const OracleCache& orc = oracle[row.instance][ki];
        c[c_instance] = csv_quote(inst.name);
        c[c_k] = std::to_string(row.k);
        c[c_l] = std::to_string(row.length);
        c[c_algorithm] = row.algorithm;
        if (row.algorithm != "oracle") {
            c[c_eps] = format_decimal(row.eps);
            c[c_eta] = format_decimal(row.eta);
            c[c_seed] = std::to_string(row.seed);
        }
        c[c_status] = "ok";
        if (!inst.complex) {
            c[c_status] = "error";
            c[c_message] = csv_quote(inst.load_error);
            return res;
        }
        const Complex& complex = *inst.complex;
        c[c_n] = std::to_string(complex.vertex_count());
        if (inst.ensemble) {
            c[c_regime] = regime_name(regime_report(inst.ensemble->second, row.k, inst.ensemble->first, row.length).regime);
        }
        std::optional<double> truth;
        if (orc.error.empty() && !orc.traces.empty()) {
            truth = orc.traces[static_cast<std::size_t>(row.length - 1)].value;
            c[c_trace] = format_decimal(*truth);
            c[c_moment] = format_decimal(orc.moments[static_cast<std::size_t>(row.length - 1)].value);
        }
        try {
            const auto t0 = std::chrono::steady_clock::now();
            if (row.algorithm == "oracle") {
                if (!orc.error.empty()) throw ResourceError(orc.error);
                c[c_simplex_count] = std::to_string(complex.enumerate(row.k).size());
                c[c_estimate] = c[c_trace];
            } else {
                EstimateConfig cfg;
                cfg.k = row.k;
                cfg.length = row.length;
                cfg.eps = row.eps;
                cfg.eta = row.eta;
                cfg.seed = row.seed;
                cfg.workers = opts.workers;
                cfg.budget = budget;
                const EstimateResult r = run_estimator(parse_algorithm(row.algorithm), complex, cfg);
                c[c_C] = format_decimal(r.norm_bound);
                c[c_simplex_count] = std::to_string(r.simplex_count);
                c[c_ns] = std::to_string(r.n_simplex_samples);
                c[c_np] = std::to_string(r.n_paths);
                c[c_total] = std::to_string(r.total_draws());
                if (r.v_hat) c[c_vhat] = format_decimal(*r.v_hat);
                c[c_estimate] = format_decimal(r.estimate);
                if (truth) c[c_error] = format_decimal(std::abs(r.estimate - *truth));
            }
            if (opts.timing) {
                c[c_elapsed] = format_decimal(
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
            }
        } catch (const SampleBudgetExceeded& e) {
            c[c_status] = "budget_exceeded";
            c[c_message] = csv_quote(e.what());
        } catch (const std::exception& e) {
            c[c_status] = "error";
            c[c_message] = csv_quote(e.what());
        }
        return res;
    };

    std::vector<RowResult> results(rows.size());
    if (opts.row_parallel && rows.size() > 1) {
        std::atomic<std::size_t> next{0};
        const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(threads, rows.size()); ++t) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < rows.size(); r = next++) results[r] = compute(rows[r]);
            });
        }
    } else {
        for (std::size_t r = 0; r < rows.size(); ++r) results[r] = compute(rows[r]);
    }

    out << kHeader << '\n';
    for (const auto& res : results) {
        for (std::size_t i = 0; i < res.cells.size(); ++i) {
            if (i) out << ',';
            out << res.cells[i];
        }
        out << '\n';
    }
    return inputs;
}

}  // namespace cbne_tool
