#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "setcx/compression.hpp"
#include "setcx/rng.hpp"

namespace setcx {

using NetState = std::vector<std::uint8_t>;  // one 0/1 entry per node

/// Random Boolean network: n nodes, each reading k distinct source nodes
/// through a 2^k-entry truth table. The first listed input is the most
/// significant bit of the table index.
class BooleanNetwork {
public:
    BooleanNetwork(std::size_t n, std::size_t k, double p, std::vector<std::uint32_t> inputs,
                   std::vector<std::uint8_t> tables);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    double bias() const noexcept { return p_; }

    std::span<const std::uint32_t> inputs(std::size_t node) const {
        return std::span(inputs_).subspan(node * k_, k_);
    }
    std::span<const std::uint8_t> table(std::size_t node) const {
        return std::span(tables_).subspan(node * table_size(), table_size());
    }
    std::size_t table_size() const noexcept { return std::size_t{1} << k_; }

private:
    std::size_t n_;
    std::size_t k_;
    double p_;
    std::vector<std::uint32_t> inputs_;  // n * k
    std::vector<std::uint8_t> tables_;   // n * 2^k
};

/// Inputs drawn uniformly without replacement from all n nodes (self
/// allowed); table entries i.i.d. Bernoulli(p).
BooleanNetwork generate_network(std::size_t n, std::size_t k, double p, Rng& rng);

/// One synchronous update.
NetState step(const BooleanNetwork& net, const NetState& state);

struct Trajectory {
    std::vector<NetState> states;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
};

/// Starts from a uniform random state, applies burn_in updates, then records
/// the next `length` states. The random initial state is never recorded.
Trajectory trajectory(const BooleanNetwork& net, Rng& rng, std::size_t burn_in, std::size_t length);

/// Average sensitivity 2 k p (1 - p).
double sensitivity(std::size_t k, double p);

/// Natural log of the average sensitivity.
double lyapunov(std::size_t k, double p);

struct SweepConfig {
    std::size_t n = 1000;
    std::size_t k = 3;
    std::vector<double> p_values;
    std::size_t networks_per_p = 50;
    std::size_t burn_in = 100;
    std::size_t traj_len = 20;
    std::uint64_t seed = 1;
    CompressorSpec spec{};
    unsigned threads = 0;
};

/// Inclusive grid lo, lo + step, ... up to hi (rounded to 1e-9).
std::vector<double> bias_grid(double lo, double hi, double step);

struct SweepRow {
    double p = 0.0;
    double s = 0.0;
    double lambda = 0.0;
    double mean_psi = 0.0;
    double std_psi = 0.0;  // sample (n - 1) estimator
    std::vector<double> psi;  // one value per network
};

/// Calibrated psi (kernel d(1 - d), norm xi) of the recorded state set for
/// one network. A set whose states are all identical scores 0.
double trajectory_psi(const Trajectory& traj, const CompressorSpec& spec, std::uint64_t calibration_seed);

/// For every p: networks_per_p networks, one trajectory each, scored by
/// trajectory_psi. Job seeds derive from (seed, p index, network index).
std::vector<SweepRow> sweep(const SweepConfig& cfg);

/// Header `p,s,lambda,mean_psi,std_psi,n,k,networks,traj_len,burn_in,seed`.
void write_csv(std::ostream& out, const SweepConfig& cfg, std::span<const SweepRow> rows);

}  // namespace setcx
