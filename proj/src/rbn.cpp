#include "setcx/rbn.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "setcx/bitstring.hpp"
#include "setcx/errors.hpp"
#include "setcx/infodist.hpp"
#include "setcx/measures.hpp"
#include "setcx/parallel.hpp"

namespace setcx {

BooleanNetwork::BooleanNetwork(std::size_t n, std::size_t k, double p, std::vector<std::uint32_t> inputs,
                               std::vector<std::uint8_t> tables)
    : n_(n), k_(k), p_(p), inputs_(std::move(inputs)), tables_(std::move(tables)) {
    if (n_ == 0 || k_ == 0 || k_ > n_) throw DomainError("network needs 1 <= k <= n");
    if (k_ > 20) throw DomainError("in-degree above 20 is not supported");
    if (inputs_.size() != n_ * k_) throw DomainError("network needs exactly k inputs per node");
    if (tables_.size() != n_ * table_size()) throw DomainError("network needs 2^k table entries per node");
    for (std::size_t v = 0; v < n_; ++v) {
        auto in = this->inputs(v);
        for (std::size_t a = 0; a < k_; ++a) {
            if (in[a] >= n_) throw DomainError("network input index out of range");
            for (std::size_t b = 0; b < a; ++b) {
                if (in[a] == in[b]) throw DomainError("network inputs of a node must be distinct");
            }
        }
    }
    for (auto bit : tables_) {
        if (bit > 1) throw DomainError("truth table entries must be 0 or 1");
    }
}

BooleanNetwork generate_network(std::size_t n, std::size_t k, double p, Rng& rng) {
    if (k < 1 || k > n) throw DomainError("generate_network: need 1 <= k <= n");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("generate_network: bias must lie in (0, 1)");
    std::vector<std::uint32_t> inputs;
    inputs.reserve(n * k);
    std::vector<std::uint32_t> chosen;
    for (std::size_t v = 0; v < n; ++v) {
        chosen.clear();
        while (chosen.size() < k) {
            const auto candidate = static_cast<std::uint32_t>(rng.below(n));
            bool fresh = true;
            for (auto c : chosen) fresh = fresh && c != candidate;
            if (fresh) chosen.push_back(candidate);
        }
        inputs.insert(inputs.end(), chosen.begin(), chosen.end());
    }
    std::vector<std::uint8_t> tables(n << k);
    for (auto& bit : tables) bit = rng.bernoulli(p) ? 1 : 0;
    return BooleanNetwork(n, k, p, std::move(inputs), std::move(tables));
}

NetState step(const BooleanNetwork& net, const NetState& state) {
    if (state.size() != net.n()) throw DomainError("state length does not match network size");
    NetState next(net.n());
    for (std::size_t v = 0; v < net.n(); ++v) {
        std::size_t index = 0;
        for (auto src : net.inputs(v)) index = (index << 1) | state[src];
        next[v] = net.table(v)[index];
    }
    return next;
}

Trajectory trajectory(const BooleanNetwork& net, Rng& rng, std::size_t burn_in, std::size_t length) {
    if (length < 1) throw DomainError("trajectory length must be at least 1");
    Trajectory t;
    t.burn_in = burn_in;
    t.seed = rng.seed();
    NetState state(net.n());
    for (auto& b : state) b = rng.bit() ? 1 : 0;
    for (std::size_t s = 0; s < burn_in; ++s) state = step(net, state);
    t.states.reserve(length);
    for (std::size_t s = 0; s < length; ++s) {
        state = step(net, state);
        t.states.push_back(state);
    }
    return t;
}

double sensitivity(std::size_t k, double p) {
    if (k < 1) throw DomainError("sensitivity: k must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("sensitivity: bias must lie in (0, 1)");
    return 2.0 * static_cast<double>(k) * p * (1.0 - p);
}

double lyapunov(std::size_t k, double p) { return std::log(sensitivity(k, p)); }

std::vector<double> bias_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw DomainError("bias grid needs step > 0 and hi >= lo");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        const double p = std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9;
        if (!(p > 0.0 && p < 1.0)) throw DomainError("bias values must lie in (0, 1)");
        grid.push_back(p);
    }
    return grid;
}

double trajectory_psi(const Trajectory& traj, const CompressorSpec& spec, std::uint64_t calibration_seed) {
    if (traj.states.size() < 2) throw DomainError("trajectory set needs at least two states");
    std::vector<BitString> members;
    members.reserve(traj.states.size());
    bool all_same = true;
    for (const auto& s : traj.states) {
        all_same = all_same && s == traj.states.front();
        members.emplace_back(s);
    }
    // identical states: every calibrated distance is 0; also covers frozen
    // constant states whose permuted copies cannot be calibrated
    if (all_same) return 0.0;

    const StringSet set(std::move(members), Encoding::ascii01, spec);
    Rng rng(calibration_seed);
    const auto cal = calibrate(set, rng);
    const WeightedSet weighted(set, distance_matrix(set, cal));
    return psi(weighted).psi;
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
    if (cfg.p_values.empty()) throw DomainError("sweep needs at least one bias value");
    if (cfg.networks_per_p < 1) throw DomainError("sweep needs at least one network per bias");
    if (cfg.traj_len < 2) throw DomainError("sweep trajectories need at least two states");
    for (double p : cfg.p_values) {
        if (!(p > 0.0 && p < 1.0)) throw DomainError("bias values must lie in (0, 1)");
    }
    const std::size_t per_p = cfg.networks_per_p;
    std::vector<double> scores(cfg.p_values.size() * per_p);
    parallel_for(scores.size(), cfg.threads, [&](std::size_t job) {
        const std::size_t pi = job / per_p;
        const std::size_t net_index = job % per_p;
        Rng rng(derive_seed(cfg.seed, pi, net_index));
        const auto net = generate_network(cfg.n, cfg.k, cfg.p_values[pi], rng);
        const auto traj = trajectory(net, rng, cfg.burn_in, cfg.traj_len);
        scores[job] = trajectory_psi(traj, cfg.spec, derive_seed(cfg.seed, pi, net_index, 1));
    });

    std::vector<SweepRow> rows;
    for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
        SweepRow row;
        row.p = cfg.p_values[pi];
        row.s = sensitivity(cfg.k, row.p);
        row.lambda = std::log(row.s);
        row.psi.assign(scores.begin() + static_cast<std::ptrdiff_t>(pi * per_p),
                       scores.begin() + static_cast<std::ptrdiff_t>((pi + 1) * per_p));
        double sum = 0.0;
        for (double v : row.psi) sum += v;
        row.mean_psi = sum / static_cast<double>(per_p);
        double ss = 0.0;
        for (double v : row.psi) ss += (v - row.mean_psi) * (v - row.mean_psi);
        row.std_psi = per_p > 1 ? std::sqrt(ss / static_cast<double>(per_p - 1)) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(std::ostream& out, const SweepConfig& cfg, std::span<const SweepRow> rows) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "#lambda=ln(s)\n";
    out << "p,s,lambda,mean_psi,std_psi,n,k,networks,traj_len,burn_in,seed\n";
    for (const auto& r : rows) {
        out << r.p << ',' << r.s << ',' << r.lambda << ',' << r.mean_psi << ',' << r.std_psi << ','
            << cfg.n << ',' << cfg.k << ',' << cfg.networks_per_p << ',' << cfg.traj_len << ','
            << cfg.burn_in << ',' << cfg.seed << '\n';
    }
    out.precision(old_precision);
}

}  // namespace setcx
