#include "setcx/infodist.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <utility>

#include "setcx/errors.hpp"
#include "setcx/parallel.hpp"

namespace setcx {

double ncd_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy) {
    const auto lo = static_cast<double>(std::min(cx, cy));
    const auto hi = static_cast<double>(std::max(cx, cy));
    return (static_cast<double>(cxy) - lo) / hi;
}

double ncd_raw(const BitString& x, const BitString& y, const CompressorSpec& spec,
               Encoding encoding) {
    if (x.empty() || y.empty()) throw DomainError("ncd_raw: strings must be non-empty");
    const auto bx = encode(x, encoding);
    const auto by = encode(y, encoding);
    const auto cx = compressed_size(bx, spec);
    const auto cy = compressed_size(by, spec);
    const bool x_first = cx != cy ? cx < cy : bx <= by;
    const auto cxy = x_first ? joint_size(bx, by, spec) : joint_size(by, bx, spec);
    return ncd_from_sizes(cx, cy, cxy);
}

Calibration::Calibration(double d_min, double d_max) : d_min_(d_min), d_max_(d_max) {
    if (!(d_max > d_min)) {
        throw CalibrationError("degenerate calibration: d_max (" + std::to_string(d_max) +
                               ") must exceed d_min (" + std::to_string(d_min) + ")");
    }
}

double Calibration::apply(double d) const {
    return std::clamp((d - d_min_) / (d_max_ - d_min_), 0.0, 1.0);
}

double min_self_distance(const StringSet& set) {
    if (set.size() == 0) throw DomainError("min_self_distance: empty set");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < set.size(); ++i) best = std::min(best, set.self_ncd(i));
    return best;
}

double max_permuted_distance(const StringSet& set, Rng& rng, unsigned threads) {
    if (set.size() < 2) throw DomainError("max_permuted_distance: need at least two strings");
    std::vector<BitString> permuted;
    permuted.reserve(set.size());
    for (const auto& m : set.members()) permuted.push_back(permute_bits(m, rng));
    const StringSet shuffled(std::move(permuted), set.encoding(), set.spec(), threads);
    const auto raw = pairwise_ncd(shuffled, threads);
    return *std::max_element(raw.begin(), raw.end());
}

Calibration calibrate(const StringSet& set, Rng& rng, unsigned threads) {
    if (set.size() < 2) throw DomainError("calibrate: need at least two strings");
    const double d_min = min_self_distance(set);
    const double d_max = max_permuted_distance(set, rng, threads);
    return Calibration(d_min, d_max);
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> lower)
    : n_(n), lower_(std::move(lower)) {
    if (lower_.size() != (n_ < 2 ? 0 : n_ * (n_ - 1) / 2)) {
        throw DomainError("distance matrix: expected n(n-1)/2 entries");
    }
    for (double d : lower_) {
        if (!(d >= 0.0 && d <= 1.0)) throw DomainError("distance matrix entries must lie in [0, 1]");
    }
}

DistanceMatrix DistanceMatrix::uniform(std::size_t n, double d) {
    return DistanceMatrix(n, std::vector<double>(n < 2 ? 0 : n * (n - 1) / 2, d));
}

double DistanceMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw DomainError("distance matrix index out of range");
    if (i == j) return 0.0;
    return lower_[pair_index(i, j)];
}

std::vector<double> pairwise_ncd(const StringSet& set, unsigned threads) {
    const std::size_t n = set.size();
    std::vector<double> raw(n < 2 ? 0 : n * (n - 1) / 2);
    parallel_for(raw.size(), threads, [&](std::size_t k) {
        // invert k = i*(i-1)/2 + j
        std::size_t i = 1;
        while ((i + 1) * i / 2 <= k) ++i;
        const std::size_t j = k - i * (i - 1) / 2;
        raw[k] = set.ncd(i, j);
    });
    return raw;
}

DistanceMatrix distance_matrix(std::size_t n, const std::vector<double>& raw,
                               const std::optional<Calibration>& cal) {
    if (n < 2) throw DomainError("distance matrix needs at least two strings");
    std::vector<double> d(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        d[k] = cal ? cal->apply(raw[k]) : std::clamp(raw[k], 0.0, 1.0);
    }
    return DistanceMatrix(n, std::move(d));
}

DistanceMatrix distance_matrix(const StringSet& set, const std::optional<Calibration>& cal,
                               unsigned threads) {
    if (set.size() < 2) throw DomainError("distance matrix needs at least two strings");
    return distance_matrix(set.size(), pairwise_ncd(set, threads), cal);
}

void write_csv(std::ostream& out, const DistanceMatrix& matrix) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "i,j,d\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            out << i << ',' << j << ',' << matrix.at(i, j) << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace setcx
