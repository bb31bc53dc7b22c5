// setcx: command-line front end for compression distances, set-complexity
// measures, random Boolean network sweeps and graph complexity.
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "setcx/bitstring.hpp"
#include "setcx/config.hpp"
#include "setcx/errors.hpp"
#include "setcx/experiments.hpp"
#include "setcx/graph.hpp"
#include "setcx/infodist.hpp"
#include "setcx/measures.hpp"
#include "setcx/rbn.hpp"
#include "setcx/version.hpp"

namespace {

using namespace setcx;

// Flag values are kept as strings and routed through set_config_value so
// config files and flags share one parser. Only flags that were given
// override the config file.
struct Overrides {
    std::map<std::string, std::pair<CLI::Option*, std::string>> values;  // key -> (option, text)

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        auto& slot = values[key + "@" + app->get_name()];
        slot.first = app->add_option(flag, slot.second, help);
    }

    void apply(const CLI::App* app, ExperimentConfig& cfg) const {
        const std::string suffix = "@" + app->get_name();
        for (const auto& [tagged, slot] : values) {
            if (!tagged.ends_with(suffix) || slot.first->count() == 0) continue;
            set_config_value(cfg, tagged.substr(0, tagged.size() - suffix.size()), slot.second);
        }
    }
};

struct Common {
    std::string input;
    std::string out;
    std::string config;
    bool calibrate = false;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_common_header(std::ostream& out, const ExperimentConfig& cfg, const std::string& command) {
    out << "#version=" << version << '\n'
        << "#command=" << command << '\n'
        << "#seed=" << cfg.seed << '\n'
        << "#rng=" << Rng::algorithm << '\n'
        << "#compressor=" << describe(cfg.spec) << '\n'
        << "#norm=" << to_string(cfg.norm) << '\n'
        << "#kernel=" << cfg.kernel << '\n';
}

StringSet load_string_set(const std::string& path, const ExperimentConfig& cfg) {
    if (path.empty()) throw ConfigError("--input is required");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file " + path);
    auto file = read_string_set(in);
    if (file.members.size() < 2) throw DomainError("string set needs at least two strings");
    return StringSet(std::move(file.members), file.encoding, cfg.spec, cfg.threads);
}

Graph load_graph(const std::string& path, const std::string& format) {
    if (path.empty()) throw ConfigError("--input is required");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file " + path);
    if (format == "dense") return read_dense(in);
    if (format == "edges") return read_edge_list(in);
    return read_graph(in);
}

std::optional<Calibration> maybe_calibrate(const StringSet& set, const ExperimentConfig& cfg, bool calibrate_flag,
                                           std::ostream& out) {
    if (!calibrate_flag) {
        out << "#calibration=none (raw NCD clamped to [0,1])\n";
        return std::nullopt;
    }
    Rng rng(cfg.seed);
    auto cal = calibrate(set, rng, cfg.threads);
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "#calibration=d_min:" << cal.d_min() << ",d_max:" << cal.d_max() << '\n';
    return cal;
}

void write_graph_row(std::ostream& out, const std::string& label, const Graph& g, double psi, GraphNorm mode) {
    out.precision(std::numeric_limits<double>::max_digits10);
    if (!label.empty()) out << label << ',';
    out << g.size() << ',' << g.edge_count() << ',' << psi << ',' << to_string(mode) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"setcx: compression-based set complexity toolkit"};
    app.set_version_flag("--version", std::string(setcx::version));
    app.require_subcommand(1);

    Common common;
    Overrides overrides;
    std::string graph_format = "auto";
    std::string graph_mode = "node-sum";
    std::string plot_path;
    std::string per_pair_path;
    std::string per_network_path;
    std::string graph_out;
    bool per_byte = false;

    auto shared = [&](CLI::App* sub) {
        sub->add_option("--input", common.input, "Input file");
        sub->add_option("--out", common.out, "Output file (default stdout)");
        sub->add_option("--config", common.config, "key = value config file; flags override it");
        sub->add_flag("--calibrate", common.calibrate, "Calibrate distances against self and permuted copies");
        overrides.add(sub, "--seed", "seed", "Master seed (u64)");
        overrides.add(sub, "--norm", "norm", "Pair-sum normalization: xi | pairs-mean");
        overrides.add(sub, "--kernel", "kernel", "d1d | d | 1d | dlnd | 1dln1d | poly:a,b,c;...");
        overrides.add(sub, "--threads", "threads", "Worker threads (0 = all cores)");
        overrides.add(sub, "--algorithm", "algorithm", "gzip | zlib | deflate");
        overrides.add(sub, "--level", "level", "Compression level 1-9");
    };
    auto string_flags = [&](CLI::App* sub) {
        overrides.add(sub, "--N", "N", "Set size");
        overrides.add(sub, "--L", "L", "String length in bits");
        overrides.add(sub, "--replicates", "replicates", "Replicates averaged per point");
        overrides.add(sub, "--noise-stride", "noise_stride", "Perturbations per recorded step");
        overrides.add(sub, "--max-flips", "max_flips", "Last perturbation count (default L)");
        sub->add_option("--plot", plot_path, "Also write plot-ready columns to this file");
    };
    auto sweep_flags = [&](CLI::App* sub) {
        overrides.add(sub, "--n", "n", "Nodes per network");
        overrides.add(sub, "--k", "k", "Inputs per node");
        overrides.add(sub, "--p-min", "p_min", "Smallest bias");
        overrides.add(sub, "--p-max", "p_max", "Largest bias");
        overrides.add(sub, "--p-step", "p_step", "Bias increment");
        overrides.add(sub, "--networks", "networks", "Networks per bias value");
        overrides.add(sub, "--traj-len", "traj_len", "Recorded states per trajectory");
        overrides.add(sub, "--burn-in", "burn_in", "Discarded updates before recording");
        sub->add_option("--per-network", per_network_path, "Write every network's psi to this file");
    };
    auto search_flags = [&](CLI::App* sub) {
        overrides.add(sub, "--nodes", "graph_n", "Graph size");
        overrides.add(sub, "--iterations", "iterations", "Edge toggles per restart");
        overrides.add(sub, "--restarts", "restarts", "Independent hill-climb restarts");
        sub->add_option("--graph-out", graph_out, "Write the best graph (dense matrix) to this file");
    };

    auto* ncd = app.add_subcommand("ncd", "Pairwise distance matrix of a string set (CSV i,j,d)");
    shared(ncd);
    auto* psi_cmd = app.add_subcommand("psi", "Set complexity report of a string set");
    shared(psi_cmd);
    psi_cmd->add_option("--per-pair", per_pair_path, "Write per-pair contributions to this file");
    psi_cmd->add_flag("--per-byte", per_byte, "Divide compressed sizes by encoded length");
    auto* measures_cmd = app.add_subcommand("measures", "All set measures of a string set (long form)");
    shared(measures_cmd);
    measures_cmd->add_flag("--per-byte", per_byte, "Divide compressed sizes by encoded length");
    auto* sweep_cmd = app.add_subcommand("rbn-sweep", "Random Boolean network bias sweep");
    shared(sweep_cmd);
    sweep_flags(sweep_cmd);
    auto* gpsi = app.add_subcommand("graph-psi", "Set complexity of a graph");
    shared(gpsi);
    gpsi->add_option("--format", graph_format, "auto | dense | edges")->check(CLI::IsMember({"auto", "dense", "edges"}));
    gpsi->add_option("--mode", graph_mode, "node-sum | weighted-pairs")
        ->check(CLI::IsMember({"node-sum", "weighted-pairs"}));
    auto* gmax = app.add_subcommand("graph-max", "Hill-climb search for a high-complexity graph");
    shared(gmax);
    search_flags(gmax);
    gmax->add_option("--mode", graph_mode, "node-sum | weighted-pairs")
        ->check(CLI::IsMember({"node-sum", "weighted-pairs"}));

    std::map<CLI::App*, ExperimentId> figures;
    for (auto id : {ExperimentId::fig1, ExperimentId::fig2, ExperimentId::fig3, ExperimentId::fig4,
                    ExperimentId::fig5}) {
        const char* help = id == ExperimentId::fig1   ? "Noise experiment (per-step calibration)"
                           : id == ExperimentId::fig2 ? "Substitution experiment (uncalibrated)"
                           : id == ExperimentId::fig3 ? "Noise experiment calibrated by substitution endpoints"
                           : id == ExperimentId::fig4 ? "RBN criticality sweep"
                                                      : "Graph complexity: two cliques vs searched optimum";
        auto* sub = app.add_subcommand(to_string(id), help);
        shared(sub);
        if (id == ExperimentId::fig4) sweep_flags(sub);
        else if (id == ExperimentId::fig5) search_flags(sub);
        else string_flags(sub);
        figures[sub] = id;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "setcx: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        ExperimentConfig cfg;
        if (auto it = figures.find(sub); it != figures.end()) cfg.id = it->second;
        if (!common.config.empty()) cfg = load_config(common.config, cfg);
        if (auto it = figures.find(sub); it != figures.end()) cfg.id = it->second;
        overrides.apply(sub, cfg);
        validate(cfg);

        Output output(common.out);
        std::ostream& out = output.stream();
        const std::string name = sub->get_name();

        if (sub == ncd || sub == psi_cmd || sub == measures_cmd) {
            const auto set = load_string_set(common.input, cfg);
            write_common_header(out, cfg, name);
            out << "#encoding=" << to_string(set.encoding()) << '\n';
            const auto cal = maybe_calibrate(set, cfg, common.calibrate, out);
            const auto matrix = distance_matrix(set, cal, cfg.threads);
            if (sub == ncd) {
                write_csv(out, matrix);
                return 0;
            }
            const WeightedSet weighted(set, matrix, per_byte);
            const auto kernel = Kernel::parse(cfg.kernel);
            const auto report = psi(weighted, kernel, cfg.norm, !per_pair_path.empty());
            out << "#units=" << (per_byte ? "bytes-per-encoded-byte" : "bytes") << '\n';
            if (sub == psi_cmd) {
                write_csv(out, report);
                if (!per_pair_path.empty()) {
                    Output pairs(per_pair_path);
                    write_common_header(pairs.stream(), cfg, name);
                    write_pairs_csv(pairs.stream(), report);
                }
                return 0;
            }
            out.precision(std::numeric_limits<double>::max_digits10);
            out << "measure,value\n"
                << "n," << report.n << '\n'
                << "avg_distance," << avg_distance(matrix) << '\n'
                << "theta," << report.theta << '\n'
                << "theta_pair," << report.theta_pair << '\n'
                << "lambda," << report.lambda << '\n'
                << "phi," << report.phi << '\n'
                << "psi," << report.psi << '\n'
                << "delta_sq," << report.delta_sq << '\n'
                << "mean_field_residual," << report.psi - (report.lambda * (1.0 - report.lambda) - report.delta_sq)
                << '\n';
            return 0;
        }

        if (sub == gpsi) {
            const auto g = load_graph(common.input, graph_format);
            const auto mode = parse_graph_norm(graph_mode);
            write_common_header(out, cfg, name);
            out << "n,edges,psi,mode\n";
            write_graph_row(out, "", g, graph_psi(g, mode), mode);
            return 0;
        }

        if (sub == gmax) {
            const auto mode = parse_graph_norm(graph_mode);
            const auto best = maximize_psi(cfg.graph_n, cfg.iterations, cfg.restarts, cfg.seed, mode, cfg.threads);
            write_common_header(out, cfg, name);
            out << "#iterations=" << cfg.iterations << "\n#restarts=" << cfg.restarts << '\n';
            out << "n,edges,psi,mode\n";
            write_graph_row(out, "", best.graph, best.psi, mode);
            if (!graph_out.empty()) {
                Output g(graph_out);
                write_dense(g.stream(), best.graph);
            }
            return 0;
        }

        if (sub == sweep_cmd || cfg.id == ExperimentId::fig4) {
            cfg.id = ExperimentId::fig4;
            const auto scfg = sweep_config(cfg);
            const auto rows = sweep(scfg);
            write_header(out, cfg);
            write_csv(out, scfg, rows);
            if (!per_network_path.empty()) {
                Output per(per_network_path);
                write_header(per.stream(), cfg);
                per.stream().precision(std::numeric_limits<double>::max_digits10);
                per.stream() << "p,network,psi\n";
                for (const auto& r : rows)
                    for (std::size_t i = 0; i < r.psi.size(); ++i)
                        per.stream() << r.p << ',' << i << ',' << r.psi[i] << '\n';
            }
            return 0;
        }

        if (cfg.id == ExperimentId::fig5) {
            const auto result = graph_experiment(cfg);
            write_header(out, cfg);
            out << "graph,n,edges,psi,mode\n";
            const auto cliques = two_cliques(cfg.graph_n);
            write_graph_row(out, "two-cliques", cliques, result.two_cliques_psi, GraphNorm::node_sum);
            write_graph_row(out, "complete-bipartite", conjugate(cliques), result.bipartite_psi, GraphNorm::node_sum);
            write_graph_row(out, "search-best", result.best.graph, result.best.psi, GraphNorm::node_sum);
            if (!graph_out.empty()) {
                Output g(graph_out);
                write_dense(g.stream(), result.best.graph);
            }
            return 0;
        }

        Curve curve;
        write_header(out, cfg);
        if (cfg.id == ExperimentId::fig2) {
            const auto result = substitution_experiment(cfg);
            out.precision(std::numeric_limits<double>::max_digits10);
            out << "#identical_mean_ncd=" << result.identical_mean_ncd << '\n'
                << "#random_mean_ncd=" << result.random_mean_ncd << '\n';
            curve = result.curve;
        } else if (cfg.id == ExperimentId::fig1) {
            curve = noise_experiment(cfg);
        } else {
            curve = adjusted_experiment(cfg);
        }
        write_curve_csv(out, curve);
        if (!plot_path.empty()) {
            Output plot(plot_path);
            write_header(plot.stream(), cfg);
            write_plot_csv(plot.stream(), curve);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "setcx: error: " << e.what() << '\n';
        return 1;
    }
}
