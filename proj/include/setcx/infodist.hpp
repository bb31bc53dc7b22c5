#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "setcx/bitstring.hpp"
#include "setcx/compression.hpp"
#include "setcx/rng.hpp"
#include "setcx/string_set.hpp"

namespace setcx {

/// (C(xy) - min(C(x), C(y))) / max(C(x), C(y)) from precomputed sizes.
double ncd_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy);

/// Raw normalized compression distance. The string with the smaller
/// compressed size is concatenated first (ties: lexicographic bytes), so
/// ncd_raw(x, y) == ncd_raw(y, x) exactly. May exceed 1.
double ncd_raw(const BitString& x, const BitString& y, const CompressorSpec& spec = {},
               Encoding encoding = Encoding::ascii01);

/// Linear map taking the smallest observable distance to 0 and the largest
/// to 1.
class Calibration {
public:
    /// Throws CalibrationError unless d_min < d_max.
    Calibration(double d_min, double d_max);

    double d_min() const noexcept { return d_min_; }
    double d_max() const noexcept { return d_max_; }

    /// clamp((d - d_min) / (d_max - d_min), 0, 1)
    double apply(double d) const;

private:
    double d_min_;
    double d_max_;
};

inline double apply_calibration(double d, const Calibration& cal) { return cal.apply(d); }

/// Smallest self-distance ncd(x, x) over the set.
double min_self_distance(const StringSet& set);

/// Largest raw NCD between any two bit-permuted copies of the set's members
/// (one permuted copy per member, drawn from rng in member order).
double max_permuted_distance(const StringSet& set, Rng& rng, unsigned threads = 1);

/// Calibration from the set's own self-distances and permuted copies.
/// Requires at least two members.
Calibration calibrate(const StringSet& set, Rng& rng, unsigned threads = 1);

/// Symmetric n x n matrix with zero diagonal and entries in [0, 1]. Only the
/// strictly lower triangle is stored.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    /// `lower` holds d(i, j) for j < i at index i*(i-1)/2 + j.
    /// Entries outside [0, 1] are a DomainError.
    DistanceMatrix(std::size_t n, std::vector<double> lower);

    /// Every off-diagonal entry equal to d.
    static DistanceMatrix uniform(std::size_t n, double d);

    std::size_t size() const noexcept { return n_; }
    double at(std::size_t i, std::size_t j) const;
    const std::vector<double>& lower() const noexcept { return lower_; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> lower_;
};

constexpr std::size_t pair_index(std::size_t i, std::size_t j) {
    return i > j ? i * (i - 1) / 2 + j : j * (j - 1) / 2 + i;
}

/// Raw NCD for every unordered pair, laid out like DistanceMatrix::lower().
/// Pairs are evaluated in parallel; the result does not depend on threads.
std::vector<double> pairwise_ncd(const StringSet& set, unsigned threads = 1);

/// Calibrated distances when `cal` is given, otherwise raw NCD clamped to
/// [0, 1]. Requires at least two members.
DistanceMatrix distance_matrix(const StringSet& set, const std::optional<Calibration>& cal,
                               unsigned threads = 1);

/// Same, from already computed raw values.
DistanceMatrix distance_matrix(std::size_t n, const std::vector<double>& raw,
                               const std::optional<Calibration>& cal);

/// CSV with header `i,j,d`, one row per pair i < j.
void write_csv(std::ostream& out, const DistanceMatrix& matrix);

}  // namespace setcx
