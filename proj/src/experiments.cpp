#include "setcx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>

#include "setcx/bitstring.hpp"
#include "setcx/errors.hpp"
#include "setcx/infodist.hpp"
#include "setcx/parallel.hpp"
#include "setcx/rng.hpp"
#include "setcx/version.hpp"

namespace setcx {
namespace {

// Stream tags for derive_seed(seed, replicate, tag).
enum SeedTag : std::uint64_t { base_tag = 0, noise_tag = 1, fresh_tag = 2, calibration_tag = 3 };

// One replicate's random material, shared by the noise, substitution and
// adjusted experiments so their endpoints describe the same strings.
struct Replicate {
    BitString base;
    std::vector<std::vector<std::size_t>> perturb_order;  // per member
    std::vector<BitString> resampled;                     // per member, fresh bit per position
    std::vector<BitString> fresh;                         // substitution strings
};

Replicate make_replicate(const ExperimentConfig& cfg, std::size_t r) {
    Replicate rep;
    Rng base_rng(derive_seed(cfg.seed, r, base_tag));
    rep.base = random_bitstring(cfg.length, base_rng);
    Rng noise_rng(derive_seed(cfg.seed, r, noise_tag));
    for (std::size_t i = 0; i < cfg.set_size; ++i) {
        rep.perturb_order.push_back(random_permutation(cfg.length, noise_rng));
        rep.resampled.push_back(random_bitstring(cfg.length, noise_rng));
    }
    Rng fresh_rng(derive_seed(cfg.seed, r, fresh_tag));
    for (std::size_t i = 0; i < cfg.set_size; ++i) rep.fresh.push_back(random_bitstring(cfg.length, fresh_rng));
    return rep;
}

std::vector<BitString> noisy_members(const Replicate& rep, std::size_t flips) {
    std::vector<BitString> members;
    members.reserve(rep.perturb_order.size());
    for (std::size_t i = 0; i < rep.perturb_order.size(); ++i) {
        std::vector<std::uint8_t> bits(rep.base.bits().begin(), rep.base.bits().end());
        for (std::size_t f = 0; f < flips; ++f) {
            const auto pos = rep.perturb_order[i][f];
            bits[pos] = rep.resampled[i].bits()[pos];
        }
        members.emplace_back(std::move(bits));
    }
    return members;
}

std::vector<BitString> substituted_members(const Replicate& rep, std::size_t random_count) {
    std::vector<BitString> members;
    for (std::size_t i = 0; i < rep.fresh.size(); ++i) members.push_back(i < random_count ? rep.fresh[i] : rep.base);
    return members;
}

double set_psi(const StringSet& set, const std::vector<double>& raw, const std::optional<Calibration>& cal,
               const ExperimentConfig& cfg) {
    const WeightedSet weighted(set, distance_matrix(set.size(), raw, cal));
    return psi(weighted, Kernel::parse(cfg.kernel), cfg.norm).psi;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// values[replicate][point] -> mean and standard error per point
Curve summarize(std::vector<std::size_t> steps, std::vector<std::vector<double>> values) {
    Curve curve;
    const std::size_t reps = values.size();
    for (std::size_t p = 0; p < steps.size(); ++p) {
        double sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) sum += values[r][p];
        const double m = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (std::size_t r = 0; r < reps; ++r) ss += (values[r][p] - m) * (values[r][p] - m);
        const double se = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) : 0.0;
        curve.points.push_back({steps[p], m, se});
    }
    curve.replicate_values = std::move(values);
    return curve;
}

// Runs score(replicate, step_index) over every (replicate, step) job.
template <typename Score>
Curve run_grid(const ExperimentConfig& cfg, const std::vector<std::size_t>& steps, Score&& score) {
    std::vector<std::vector<double>> values(cfg.replicates, std::vector<double>(steps.size()));
    parallel_for(cfg.replicates * steps.size(), cfg.threads, [&](std::size_t job) {
        const std::size_t r = job / steps.size();
        const std::size_t s = job % steps.size();
        values[r][s] = score(r, s);
    });
    return summarize(steps, std::move(values));
}

std::vector<Replicate> make_replicates(const ExperimentConfig& cfg) {
    std::vector<Replicate> reps(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) { reps[r] = make_replicate(cfg, r); });
    return reps;
}

}  // namespace

std::string to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::fig1: return "fig1";
        case ExperimentId::fig2: return "fig2";
        case ExperimentId::fig3: return "fig3";
        case ExperimentId::fig4: return "fig4";
        case ExperimentId::fig5: return "fig5";
    }
    return "unknown";
}

ExperimentId parse_experiment(std::string_view name) {
    for (auto id : {ExperimentId::fig1, ExperimentId::fig2, ExperimentId::fig3, ExperimentId::fig4,
                    ExperimentId::fig5}) {
        if (name == to_string(id)) return id;
    }
    throw ConfigError("unknown experiment '" + std::string(name) + "' (expected fig1 .. fig5)");
}

void validate(const ExperimentConfig& cfg) {
    validate(cfg.spec);
    (void)Kernel::parse(cfg.kernel);
    if (cfg.set_size < 2) throw ConfigError("N must be at least 2");
    if (cfg.length < 1) throw ConfigError("L must be at least 1");
    if (cfg.replicates < 1) throw ConfigError("replicates must be at least 1");
    if (cfg.noise_stride < 1) throw ConfigError("noise_stride must be at least 1");
    if (cfg.max_flips > cfg.length) throw DomainError("max_flips cannot exceed L");
    if (cfg.rbn_k < 1 || cfg.rbn_k > cfg.rbn_n) throw ConfigError("RBN needs 1 <= k <= n");
    if (!(cfg.p_min > 0.0 && cfg.p_max < 1.0 && cfg.p_min <= cfg.p_max && cfg.p_step > 0.0)) {
        throw ConfigError("bias grid needs 0 < p_min <= p_max < 1 and p_step > 0");
    }
    if (cfg.networks < 1) throw ConfigError("networks must be at least 1");
    if (cfg.traj_len < 2) throw ConfigError("traj_len must be at least 2");
    if (cfg.graph_n < 4) throw ConfigError("graph_n must be at least 4");
    if (cfg.restarts < 1) throw ConfigError("restarts must be at least 1");
}

SweepConfig sweep_config(const ExperimentConfig& cfg) {
    SweepConfig s;
    s.n = cfg.rbn_n;
    s.k = cfg.rbn_k;
    s.p_values = bias_grid(cfg.p_min, cfg.p_max, cfg.p_step);
    s.networks_per_p = cfg.networks;
    s.burn_in = cfg.burn_in;
    s.traj_len = cfg.traj_len;
    s.seed = cfg.seed;
    s.spec = cfg.spec;
    s.threads = cfg.threads;
    return s;
}

std::vector<std::size_t> noise_steps(const ExperimentConfig& cfg) {
    const std::size_t last = cfg.max_flips == 0 ? cfg.length : cfg.max_flips;
    if (last > cfg.length) throw DomainError("perturbation count cannot exceed L");
    std::vector<std::size_t> steps;
    for (std::size_t m = 0; m < last; m += cfg.noise_stride) steps.push_back(m);
    steps.push_back(last);
    return steps;
}

Curve noise_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const auto steps = noise_steps(cfg);
    const auto reps = make_replicates(cfg);
    return run_grid(cfg, steps, [&](std::size_t r, std::size_t s) {
        const StringSet set(noisy_members(reps[r], steps[s]), Encoding::ascii01, cfg.spec);
        Rng rng(derive_seed(cfg.seed, r, calibration_tag, steps[s] + 1));
        const auto cal = calibrate(set, rng);
        return set_psi(set, pairwise_ncd(set), cal, cfg);
    });
}

SubstitutionResult substitution_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<std::size_t> steps(cfg.set_size + 1);
    std::iota(steps.begin(), steps.end(), std::size_t{0});
    const auto reps = make_replicates(cfg);
    std::vector<double> identical_ncd(cfg.replicates), random_ncd(cfg.replicates);

    SubstitutionResult result;
    result.curve = run_grid(cfg, steps, [&](std::size_t r, std::size_t s) {
        const StringSet set(substituted_members(reps[r], steps[s]), Encoding::ascii01, cfg.spec);
        const auto raw = pairwise_ncd(set);
        if (s == 0) identical_ncd[r] = mean(raw);
        if (s + 1 == steps.size()) random_ncd[r] = mean(raw);
        return set_psi(set, raw, std::nullopt, cfg);
    });
    result.identical_mean_ncd = mean(identical_ncd);
    result.random_mean_ncd = mean(random_ncd);
    return result;
}

Curve adjusted_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const auto steps = noise_steps(cfg);
    const auto reps = make_replicates(cfg);
    std::vector<std::optional<Calibration>> cals(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
        const StringSet identical(substituted_members(reps[r], 0), Encoding::ascii01, cfg.spec);
        const StringSet random(substituted_members(reps[r], cfg.set_size), Encoding::ascii01, cfg.spec);
        cals[r].emplace(min_self_distance(identical), mean(pairwise_ncd(random)));
    });
    return run_grid(cfg, steps, [&](std::size_t r, std::size_t s) {
        const StringSet set(noisy_members(reps[r], steps[s]), Encoding::ascii01, cfg.spec);
        return set_psi(set, pairwise_ncd(set), cals[r], cfg);
    });
}

Graph two_cliques(std::size_t n) {
    Graph g(n);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((i < half) == (j < half)) g.set_edge(i, j, true);
    return g;
}

GraphExperimentResult graph_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    GraphExperimentResult r;
    const auto cliques = two_cliques(cfg.graph_n);
    r.two_cliques_psi = graph_psi(cliques);
    r.bipartite_psi = graph_psi(conjugate(cliques));
    r.best = maximize_psi(cfg.graph_n, cfg.iterations, cfg.restarts, cfg.seed, GraphNorm::node_sum, cfg.threads);
    return r;
}

void write_header(std::ostream& out, const ExperimentConfig& cfg) {
    out << "#version=" << version << '\n'
        << "#config=experiment=" << to_string(cfg.id) << '\n'
        << "#config=seed=" << cfg.seed << '\n'
        << "#config=rng=" << Rng::algorithm << '\n'
        << "#config=compressor=" << describe(cfg.spec) << '\n'
        << "#config=norm=" << to_string(cfg.norm) << '\n'
        << "#config=kernel=" << cfg.kernel << '\n';
    switch (cfg.id) {
        case ExperimentId::fig1:
        case ExperimentId::fig2:
        case ExperimentId::fig3:
            out << "#config=N=" << cfg.set_size << '\n'
                << "#config=L=" << cfg.length << '\n'
                << "#config=encoding=ascii01\n"
                << "#config=replicates=" << cfg.replicates << '\n';
            if (cfg.id != ExperimentId::fig2) {
                out << "#config=noise_stride=" << cfg.noise_stride << '\n'
                    << "#config=max_flips=" << (cfg.max_flips == 0 ? cfg.length : cfg.max_flips) << '\n';
            }
            break;
        case ExperimentId::fig4:
            out << "#config=n=" << cfg.rbn_n << '\n'
                << "#config=k=" << cfg.rbn_k << '\n'
                << "#config=p_min=" << cfg.p_min << '\n'
                << "#config=p_max=" << cfg.p_max << '\n'
                << "#config=p_step=" << cfg.p_step << '\n'
                << "#config=networks=" << cfg.networks << '\n'
                << "#config=traj_len=" << cfg.traj_len << '\n'
                << "#config=burn_in=" << cfg.burn_in << '\n';
            break;
        case ExperimentId::fig5:
            out << "#config=graph_n=" << cfg.graph_n << '\n'
                << "#config=iterations=" << cfg.iterations << '\n'
                << "#config=restarts=" << cfg.restarts << '\n';
            break;
    }
}

void write_curve_csv(std::ostream& out, const Curve& curve) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "step,value,stderr\n";
    for (const auto& p : curve.points) out << p.step << ',' << p.value << ',' << p.std_error << '\n';
    out.precision(old_precision);
}

void write_plot_csv(std::ostream& out, const Curve& curve) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "step,value,stderr,lower,upper\n";
    for (const auto& p : curve.points) {
        out << p.step << ',' << p.value << ',' << p.std_error << ',' << p.value - p.std_error << ','
            << p.value + p.std_error << '\n';
    }
    out.precision(old_precision);
}

}  // namespace setcx
