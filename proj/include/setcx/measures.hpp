#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setcx/infodist.hpp"
#include "setcx/string_set.hpp"

namespace setcx {

/// Pair-sum normalization.
///   xi:         1 / (N - 1)
///   pairs_mean: 2 / (N (N - 1)), i.e. a mean over pairs
enum class Norm { xi, pairs_mean };

std::string to_string(Norm norm);
Norm parse_norm(std::string_view name);
double norm_factor(Norm norm, std::size_t n);

/// One term a * d^alpha * (1 - d)^beta of a polynomial kernel.
struct KernelTerm {
    int alpha = 1;
    int beta = 1;
    double coefficient = 1.0;
};

/// Pairwise distance weighting. Either a named kernel or a finite list of
/// polynomial terms (each vanishing at d = 0 and d = 1).
class Kernel {
public:
    enum class Named { d_one_minus_d, d, one_minus_d, d_ln_d, one_minus_d_ln_one_minus_d };

    /// d (1 - d)
    Kernel() = default;
    explicit Kernel(Named named) : named_(named) {}

    /// alpha, beta < 1 is a DomainError; an empty list is a DomainError.
    static Kernel polynomial(std::vector<KernelTerm> terms);

    /// Accepts d1d, d, 1d, dlnd, 1dln1d, or poly:A,B,C;A,B,C;...
    static Kernel parse(std::string_view text);

    /// Logarithmic kernels use their continuous extension 0 at d = 0 and d = 1.
    double operator()(double d) const;

    std::string name() const;
    bool is_polynomial() const noexcept { return !terms_.empty(); }
    std::span<const KernelTerm> terms() const noexcept { return terms_; }

private:
    Named named_ = Named::d_one_minus_d;
    std::vector<KernelTerm> terms_;
};

/// Per-member complexities together with their pairwise distances and the
/// canonical (increasing complexity) member order used for pair sums.
class WeightedSet {
public:
    /// Order is by increasing complexity, ties by index.
    WeightedSet(std::vector<double> complexity, DistanceMatrix distances);

    /// Complexities are the set's compressed sizes (optionally per encoded
    /// byte); order is the set's canonical order.
    WeightedSet(const StringSet& set, DistanceMatrix distances, bool per_byte = false);

    std::size_t size() const noexcept { return complexity_.size(); }
    std::span<const double> complexity() const noexcept { return complexity_; }
    const DistanceMatrix& distances() const noexcept { return distances_; }
    std::span<const std::size_t> order() const noexcept { return order_; }

    /// Calls fn(i, j, c_max, d_ij) once per unordered pair, in canonical
    /// order: i is the later (more complex) member, j the earlier.
    template <typename Fn>
    void for_each_pair(Fn&& fn) const {
        for (std::size_t a = 1; a < order_.size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                const auto i = order_[a];
                const auto j = order_[b];
                const double c_max = complexity_[i] > complexity_[j] ? complexity_[i] : complexity_[j];
                fn(i, j, c_max, distances_.at(i, j));
            }
        }
    }

private:
    std::vector<double> complexity_;
    DistanceMatrix distances_;
    std::vector<std::size_t> order_;
};

/// One pair's contribution to psi.
struct PairTerm {
    std::size_t i = 0;
    std::size_t j = 0;
    double c_max = 0.0;
    double d = 0.0;
    double contribution = 0.0;
};

struct MeasureReport {
    std::size_t n = 0;
    Norm norm = Norm::xi;
    std::string kernel;
    double theta = 0.0;
    double theta_pair = 0.0;
    double lambda = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    double delta_sq = 0.0;
    std::optional<std::vector<PairTerm>> per_pair;
};

struct Decomposition {
    double lambda = 0.0;
    double delta_sq = 0.0;
    double psi = 0.0;
};

/// Sum of complexities. Empty set is a DomainError.
double theta(std::span<const double> complexity);
double theta(const WeightedSet& set);

/// norm * sum over pairs of the larger complexity.
double theta_pair(const WeightedSet& set, Norm norm = Norm::xi);

/// Complexity-weighted average distance.
double lambda_avg(const WeightedSet& set, Norm norm = Norm::xi);

/// Mutual-information sum: norm * sum c_max (1 - d).
double phi(const WeightedSet& set, Norm norm = Norm::xi);

/// norm * sum c_max * kernel(d), plus every companion statistic at the same norm.
MeasureReport psi(const WeightedSet& set, const Kernel& kernel = {}, Norm norm = Norm::xi,
                  bool with_pairs = false);

/// norm * sum c_max * sum_terms a d^alpha (1 - d)^beta
double pi_general(const WeightedSet& set, std::span<const KernelTerm> terms, Norm norm = Norm::xi);

/// Mean-field split: psi = lambda (1 - lambda) - delta_sq. psi here is
/// summed directly with the d(1 - d) kernel, not derived from the identity.
Decomposition decomposition(const WeightedSet& set, Norm norm = Norm::xi);

/// Mean of the strictly lower triangle.
double avg_distance(const DistanceMatrix& distances);

/// d * max(cx, cy)
double conditional_complexity(double cx, double cy, double d);

/// max(cx, cy) * (1 - d)
double mutual_info_estimate(double cx, double cy, double d);

/// C(x) + C(y) - C(xy), the additive mutual information estimate.
double mutual_info_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy);

/// Header `n,norm,theta,theta_pair,lambda,phi,psi,delta_sq` and one row.
void write_csv(std::ostream& out, const MeasureReport& report, bool header = true);

/// Header `i,j,c_max,d,contribution`. Requires report.per_pair.
void write_pairs_csv(std::ostream& out, const MeasureReport& report);

}  // namespace setcx
