#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "setcx/compression.hpp"
#include "setcx/graph.hpp"
#include "setcx/measures.hpp"
#include "setcx/rbn.hpp"

namespace setcx {

enum class ExperimentId { fig1, fig2, fig3, fig4, fig5 };

std::string to_string(ExperimentId id);
ExperimentId parse_experiment(std::string_view name);

/// Everything needed to reproduce one experiment run. Defaults: 25 strings
/// of 1000 bits; k = 3 RBNs of 1000 nodes.
struct ExperimentConfig {
    ExperimentId id = ExperimentId::fig1;

    // string-set experiments
    std::size_t set_size = 25;
    std::size_t length = 1000;
    std::size_t noise_stride = 25;  // perturbations added between recorded steps
    std::size_t max_flips = 0;      // 0 means `length`
    std::size_t replicates = 10;

    std::uint64_t seed = 1;
    CompressorSpec spec{};
    Norm norm = Norm::xi;
    std::string kernel = "d1d";
    unsigned threads = 0;

    // RBN sweep
    std::size_t rbn_n = 1000;
    std::size_t rbn_k = 3;
    double p_min = 0.05;
    double p_max = 0.50;
    double p_step = 0.01;
    std::size_t networks = 50;
    std::size_t traj_len = 20;
    std::size_t burn_in = 100;

    // graph search
    std::size_t graph_n = 10;
    std::size_t iterations = 2000;
    std::size_t restarts = 20;
};

/// Throws ConfigError on out-of-domain values.
void validate(const ExperimentConfig& cfg);

SweepConfig sweep_config(const ExperimentConfig& cfg);

struct CurvePoint {
    std::size_t step = 0;
    double value = 0.0;   // mean over replicates
    double std_error = 0.0;  // standard error of the mean
};

struct Curve {
    std::vector<CurvePoint> points;
    std::vector<std::vector<double>> replicate_values;  // [replicate][point]
};

struct SubstitutionResult {
    Curve curve;  // step = number of random members
    double identical_mean_ncd = 0.0;  // mean raw NCD of the all-identical endpoint
    double random_mean_ncd = 0.0;     // mean raw NCD of the all-random endpoint
};

/// Recorded perturbation counts: 0, stride, 2 stride, ..., max_flips.
std::vector<std::size_t> noise_steps(const ExperimentConfig& cfg);

/// N copies of one random string; each step perturbs `stride` more distinct,
/// independently chosen positions per string (each resampled with a fresh
/// uniform bit). Psi uses each step's own calibration.
Curve noise_experiment(const ExperimentConfig& cfg);

/// Starts from N identical strings and replaces them with fresh random
/// strings one at a time. Distances are raw NCD clamped to [0, 1].
SubstitutionResult substitution_experiment(const ExperimentConfig& cfg);

/// The noise experiment with one calibration per replicate taken from the
/// substitution endpoints: d_min is the identical set's self-distance, d_max
/// the mean raw NCD of the all-random set.
Curve adjusted_experiment(const ExperimentConfig& cfg);

struct GraphExperimentResult {
    double two_cliques_psi = 0.0;  // K5 u K5 style union of two cliques on graph_n nodes
    double bipartite_psi = 0.0;    // its conjugate
    SearchResult best;
};

GraphExperimentResult graph_experiment(const ExperimentConfig& cfg);

/// Union of two cliques on floor(n/2) and ceil(n/2) nodes.
Graph two_cliques(std::size_t n);

/// `#`-prefixed lines with version, seed, compressor, norm and every config value.
void write_header(std::ostream& out, const ExperimentConfig& cfg);

/// `step,value,stderr`
void write_curve_csv(std::ostream& out, const Curve& curve);

/// `step,value,stderr,lower,upper` with lower/upper = value -/+ stderr.
void write_plot_csv(std::ostream& out, const Curve& curve);

}  // namespace setcx
