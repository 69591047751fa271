#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "betti/error.hpp"
#include "betti/estimators.hpp"
#include "betti/oracle.hpp"
#include "betti/randgraphs.hpp"
#include "betti/report.hpp"
#include "experiment.hpp"
#include "manifest.hpp"

using namespace betti;
using cbne_tool::RunManifest;

namespace {

enum ExitCode { exit_ok = 0, exit_usage = 2, exit_resource = 3, exit_numeric = 4 };

struct InputSource {
    std::string graph;
    std::string complex;

    void add_options(CLI::App* cmd) {
        auto* g = cmd->add_option("--graph", graph, "edge-list file (clique complex)");
        auto* c = cmd->add_option("--complex", complex, "maximal-simplex file (explicit complex)");
        g->excludes(c);
        c->excludes(g);
    }

    std::string path() const { return graph.empty() ? complex : graph; }

    std::unique_ptr<Complex> load() const {
        if (graph.empty() && complex.empty()) throw InputError("one of --graph or --complex is required");
        std::ifstream in(path());
        if (!in) throw InputError("cannot open " + path());
        if (!graph.empty()) return std::make_unique<CliqueComplex>(read_graph(in));
        return std::make_unique<ExplicitComplex>(read_explicit_complex(in));
    }
};

void emit_graph(const Graph& g, const std::string& out_path, RunManifest& manifest) {
    nlohmann::ordered_json summary{{"n", g.vertex_count()}, {"edges", g.edge_count()}};
    if (out_path.empty()) {
        write_graph(std::cout, g);
        std::cerr << summary.dump() << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    write_graph(out, g);
    manifest.outputs.push_back(out_path);
    summary["out"] = out_path;
    std::cout << summary.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo estimation of normalized Betti numbers"};
    app.set_version_flag("--version", cbne_tool::kToolVersion);
    app.require_subcommand(1);
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write a run manifest (JSON) to this path");

    RunManifest manifest;
    std::function<void()> action;

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a graph");
    gen->require_subcommand(1);
    struct GenArgs {
        int k = 1;
        int m = 1;
        std::size_t n = 0;
        double p = 0.0;
        std::uint64_t seed = 0;
        std::string out;
    } ga;
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", ga.out, "output file (stdout when omitted)");
    };
    auto* gen_cp = gen->add_subcommand("complete-partite", "complete (k+1)-partite graph with parts of size m");
    gen_cp->add_option("--k", ga.k, "parts minus one")->required()->check(CLI::NonNegativeNumber);
    gen_cp->add_option("--m", ga.m, "part size")->required()->check(CLI::PositiveNumber);
    add_out(gen_cp);
    gen_cp->callback([&] {
        action = [&] { emit_graph(generate_complete_partite(ga.k, ga.m), ga.out, manifest); };
    });
    auto* gen_dc = gen->add_subcommand("disjoint-cliques", "m disjoint (k+1)-cliques");
    gen_dc->add_option("--m", ga.m, "clique count")->required()->check(CLI::PositiveNumber);
    gen_dc->add_option("--k", ga.k, "clique dimension")->required()->check(CLI::NonNegativeNumber);
    add_out(gen_dc);
    gen_dc->callback([&] {
        action = [&] { emit_graph(generate_disjoint_cliques(ga.m, ga.k), ga.out, manifest); };
    });
    auto* gen_er = gen->add_subcommand("er", "Erdos-Renyi G(n, p)");
    gen_er->add_option("--n", ga.n, "vertices")->required();
    gen_er->add_option("--p", ga.p, "edge probability")->required()->check(CLI::Range(0.0, 1.0));
    gen_er->add_option("--seed", ga.seed, "random seed")->capture_default_str();
    add_out(gen_er);
    gen_er->callback([&] {
        manifest.seed = ga.seed;
        action = [&] { emit_graph(gen_gnp(ErConfig{ga.n, ga.p, ga.seed}), ga.out, manifest); };
    });
    auto* gen_pe = gen->add_subcommand("partite-er", "random (k+1)-partite graph G(n, k, p)");
    gen_pe->add_option("--n", ga.n, "vertices")->required();
    gen_pe->add_option("--k", ga.k, "parts minus one")->required()->check(CLI::NonNegativeNumber);
    gen_pe->add_option("--p", ga.p, "cross-part edge probability")->required()->check(CLI::Range(0.0, 1.0));
    gen_pe->add_option("--seed", ga.seed, "random seed")->capture_default_str();
    add_out(gen_pe);
    gen_pe->callback([&] {
        manifest.seed = ga.seed;
        action = [&] { emit_graph(gen_partite(PartiteErConfig{ga.n, ga.k, ga.p, ga.seed}), ga.out, manifest); };
    });

    // exact ----------------------------------------------------------------
    auto* exact = app.add_subcommand("exact", "exact oracle report");
    InputSource exact_in;
    int exact_k = 1;
    std::vector<int> exact_ls;
    std::size_t exact_guard = kDefaultDenseGuard;
    exact_in.add_options(exact);
    exact->add_option("--k", exact_k, "dimension")->required()->check(CLI::PositiveNumber);
    exact->add_option("--l", exact_ls, "path lengths")->delimiter(',')->check(CLI::PositiveNumber);
    exact->add_option("--guard", exact_guard, "largest |S_k| for dense matrices")->capture_default_str();
    exact->callback([&] {
        action = [&] {
            const auto complex = exact_in.load();
            manifest.inputs.push_back(exact_in.path());
            std::cout << to_json(oracle_report(*complex, exact_k, exact_ls, exact_guard)).dump(2) << '\n';
        };
    });

    // estimate -------------------------------------------------------------
    auto* estimate = app.add_subcommand("estimate", "run CBNE or CBNE-Var");
    InputSource est_in;
    std::string algorithm;
    EstimateConfig cfg;
    bool timing = false;
    std::size_t trace_paths = 0;
    estimate->add_option("algorithm", algorithm, "cbne | cbne-var")->required()->check(CLI::IsMember({"cbne", "cbne-var"}));
    est_in.add_options(estimate);
    estimate->add_option("--k", cfg.k, "dimension")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--l", cfg.length, "path length")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--eps", cfg.eps, "accuracy")->capture_default_str();
    estimate->add_option("--eta", cfg.eta, "failure probability")->capture_default_str();
    estimate->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    estimate->add_option("--workers", cfg.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    estimate->add_option("--budget", cfg.budget, "largest sample count allowed")->capture_default_str();
    estimate->add_flag("--timing", timing, "report elapsed_ms");
    estimate->add_option("--trace", trace_paths, "dump the first N paths of worker 0 to stderr");
    estimate->callback([&] {
        manifest.seed = cfg.seed;
        action = [&] {
            const auto complex = est_in.load();
            manifest.inputs.push_back(est_in.path());
            std::size_t path_no = 0;
            if (trace_paths > 0) {
                cfg.trace_paths = trace_paths;
                cfg.trace = [&](const TraceStep& s) {
                    if (s.index == 0) ++path_no;
                    std::cerr << path_no - 1 << ' ' << s.index << " {";
                    for (std::size_t i = 0; i < s.simplex.size(); ++i) std::cerr << (i ? "," : "") << s.simplex[i];
                    std::cerr << "} " << s.sign << ' ' << format_decimal(s.column_norm) << '\n';
                };
            }
            const EstimateResult r = run_estimator(parse_algorithm(algorithm), *complex, cfg);
            std::cout << to_json(r, timing).dump(2) << '\n';
        };
    });

    // experiment -----------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "parameter sweep to CSV");
    std::string config_path;
    std::string csv_out;
    cbne_tool::ExperimentOptions exp_opts;
    experiment->add_option("--config", config_path, "JSON sweep description")->required();
    experiment->add_option("--out", csv_out, "CSV output (stdout when omitted)");
    experiment->add_option("--workers", exp_opts.workers, "worker threads per estimate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    experiment->add_flag("--row-parallel", exp_opts.row_parallel, "compute rows concurrently");
    experiment->add_flag("--timing", exp_opts.timing, "fill elapsed_ms");
    experiment->callback([&] {
        action = [&] {
            std::ifstream in(config_path);
            if (!in) throw InputError("cannot open " + config_path);
            nlohmann::json config;
            try {
                config = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw InputError(std::string("bad experiment config: ") + e.what());
            }
            manifest.inputs.push_back(config_path);
            if (config.is_object()) manifest.seed = config.value("seed", std::uint64_t{0});
            const auto base = std::filesystem::path(config_path).parent_path();
            std::ostringstream csv;
            std::vector<std::string> inputs;
            try {
                inputs = cbne_tool::run_experiment(config, base, exp_opts, csv);
            } catch (const nlohmann::json::exception& e) {
                throw InputError(std::string("bad experiment config: ") + e.what());
            }
            manifest.inputs.insert(manifest.inputs.end(), inputs.begin(), inputs.end());
            if (csv_out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(csv_out);
                if (!out) throw InputError("cannot write " + csv_out);
                out << csv.str();
                manifest.outputs.push_back(csv_out);
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        action();
        if (!manifest_path.empty()) {
            const CLI::App* cmd = app.get_subcommands().front();
            manifest.subcommand = cmd->get_name();
            for (const CLI::App* sub = cmd; !sub->get_subcommands().empty();) {
                sub = sub->get_subcommands().front();
                manifest.subcommand += " " + sub->get_name();
                manifest.parameters.update(cbne_tool::collect_parameters(*sub));
            }
            manifest.parameters.update(cbne_tool::collect_parameters(*cmd));
            cbne_tool::write_manifest(manifest_path, manifest);
        }
    } catch (const SampleBudgetExceeded& e) {
        nlohmann::ordered_json err{{"error", "sample_budget_exceeded"},
                                   {"phase", e.phase()},
                                   {"requested", e.requested()},
                                   {"budget", e.budget()},
                                   {"message", e.what()}};
        std::cout << err.dump(2) << '\n';
        return exit_resource;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return exit_resource;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}
