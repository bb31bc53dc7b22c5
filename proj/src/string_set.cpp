#include "setcx/string_set.hpp"

#include <algorithm>
#include <utility>

#include "setcx/errors.hpp"
#include "setcx/infodist.hpp"
#include "setcx/parallel.hpp"

namespace setcx {

StringSet::StringSet(std::vector<BitString> members, Encoding encoding, CompressorSpec spec,
                     unsigned threads)
    : members_(std::move(members)), encoding_(encoding), spec_(spec) {
    validate(spec_);
    const std::size_t n = members_.size();
    encoded_.resize(n);
    sizes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (members_[i].empty()) throw DomainError("set members must be non-empty");
    }
    parallel_for(n, threads, [&](std::size_t i) {
        encoded_[i] = encode(members_[i], encoding_);
        sizes_[i] = compressed_size(encoded_[i], spec_);
    });

    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        if (sizes_[a] != sizes_[b]) return sizes_[a] < sizes_[b];
        if (encoded_[a] != encoded_[b]) return encoded_[a] < encoded_[b];
        return a < b;
    });
    rank_.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_[order_[r]] = r;
}

std::vector<double> StringSet::complexities(bool per_byte) const {
    std::vector<double> c(size());
    for (std::size_t i = 0; i < size(); ++i) {
        c[i] = static_cast<double>(sizes_[i]);
        if (per_byte) c[i] /= static_cast<double>(encoded_[i].size());
    }
    return c;
}

bool StringSet::precedes(std::size_t i, std::size_t j) const { return rank_[i] < rank_[j]; }

double StringSet::ncd(std::size_t i, std::size_t j) const {
    if (i == j) return self_ncd(i);
    const auto first = precedes(i, j) ? i : j;
    const auto second = first == i ? j : i;
    const auto cxy = joint_size(encoded_[first], encoded_[second], spec_);
    return ncd_from_sizes(sizes_[i], sizes_[j], cxy);
}

double StringSet::self_ncd(std::size_t i) const {
    const auto cxx = joint_size(encoded_[i], encoded_[i], spec_);
    return ncd_from_sizes(sizes_[i], sizes_[i], cxx);
}

}  // namespace setcx
