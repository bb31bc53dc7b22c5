#include "setcx/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <utility>

#include "setcx/errors.hpp"

namespace setcx {
namespace {

void require_pairs(std::size_t n) {
    if (n < 2) throw DomainError("pairwise measures need at least two members, got " + std::to_string(n));
}

double int_pow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double x_ln_x(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("invalid number '" + std::string(s) + "' in kernel");
    }
    return v;
}

}  // namespace

std::string to_string(Norm norm) { return norm == Norm::xi ? "xi" : "pairs-mean"; }

Norm parse_norm(std::string_view name) {
    if (name == "xi") return Norm::xi;
    if (name == "pairs-mean" || name == "pairs_mean") return Norm::pairs_mean;
    throw ConfigError("unknown norm '" + std::string(name) + "' (expected xi or pairs-mean)");
}

double norm_factor(Norm norm, std::size_t n) {
    require_pairs(n);
    const auto m = static_cast<double>(n);
    return norm == Norm::xi ? 1.0 / (m - 1.0) : 2.0 / (m * (m - 1.0));
}

Kernel Kernel::polynomial(std::vector<KernelTerm> terms) {
    if (terms.empty()) throw DomainError("polynomial kernel needs at least one term");
    for (const auto& t : terms) {
        if (t.alpha < 1 || t.beta < 1) {
            throw DomainError("kernel exponents must be >= 1 so the kernel vanishes at d = 0 and d = 1");
        }
    }
    Kernel k;
    k.terms_ = std::move(terms);
    return k;
}

Kernel Kernel::parse(std::string_view text) {
    if (text == "d1d") return Kernel(Named::d_one_minus_d);
    if (text == "d") return Kernel(Named::d);
    if (text == "1d") return Kernel(Named::one_minus_d);
    if (text == "dlnd") return Kernel(Named::d_ln_d);
    if (text == "1dln1d") return Kernel(Named::one_minus_d_ln_one_minus_d);
    constexpr std::string_view prefix = "poly:";
    if (!text.starts_with(prefix)) {
        throw ConfigError("unknown kernel '" + std::string(text) +
                          "' (expected d1d, d, 1d, dlnd, 1dln1d or poly:a,b,c;...)");
    }
    std::vector<KernelTerm> terms;
    std::string_view rest = text.substr(prefix.size());
    while (!rest.empty()) {
        const auto end = rest.find(';');
        const auto term = rest.substr(0, end);
        const auto c1 = term.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : term.find(',', c1 + 1);
        if (c2 == std::string_view::npos) throw ConfigError("kernel term must be alpha,beta,coefficient");
        const double alpha = parse_double(term.substr(0, c1));
        const double beta = parse_double(term.substr(c1 + 1, c2 - c1 - 1));
        if (alpha != std::floor(alpha) || beta != std::floor(beta)) {
            throw ConfigError("kernel exponents must be integers");
        }
        terms.push_back({static_cast<int>(alpha), static_cast<int>(beta),
                         parse_double(term.substr(c2 + 1))});
        if (end == std::string_view::npos) break;
        rest = rest.substr(end + 1);
    }
    return polynomial(std::move(terms));
}

double Kernel::operator()(double d) const {
    if (!terms_.empty()) {
        double sum = 0.0;
        for (const auto& t : terms_) sum += t.coefficient * int_pow(d, t.alpha) * int_pow(1.0 - d, t.beta);
        return sum;
    }
    switch (named_) {
        case Named::d_one_minus_d: return d * (1.0 - d);
        case Named::d: return d;
        case Named::one_minus_d: return 1.0 - d;
        case Named::d_ln_d: return d >= 1.0 ? 0.0 : x_ln_x(d);
        case Named::one_minus_d_ln_one_minus_d: return d <= 0.0 ? 0.0 : x_ln_x(1.0 - d);
    }
    return 0.0;
}

std::string Kernel::name() const {
    if (!terms_.empty()) {
        std::string s = "poly:";
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            if (k) s += ';';
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, terms_[k].coefficient);
            s += std::to_string(terms_[k].alpha) + ',' + std::to_string(terms_[k].beta) + ',' +
                 std::string(buf, res.ptr);
        }
        return s;
    }
    switch (named_) {
        case Named::d_one_minus_d: return "d1d";
        case Named::d: return "d";
        case Named::one_minus_d: return "1d";
        case Named::d_ln_d: return "dlnd";
        case Named::one_minus_d_ln_one_minus_d: return "1dln1d";
    }
    return "unknown";
}

WeightedSet::WeightedSet(std::vector<double> complexity, DistanceMatrix distances)
    : complexity_(std::move(complexity)), distances_(std::move(distances)) {
    if (complexity_.size() != distances_.size() && !(complexity_.size() == 1 && distances_.size() == 0)) {
        throw DomainError("complexity count does not match distance matrix size");
    }
    order_.resize(complexity_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return complexity_[a] < complexity_[b]; });
}

WeightedSet::WeightedSet(const StringSet& set, DistanceMatrix distances, bool per_byte)
    : complexity_(set.complexities(per_byte)),
      distances_(std::move(distances)),
      order_(set.order().begin(), set.order().end()) {
    if (set.size() != distances_.size()) throw DomainError("string set does not match distance matrix size");
}

double theta(std::span<const double> complexity) {
    if (complexity.empty()) throw DomainError("theta of an empty set");
    double sum = 0.0;
    for (double c : complexity) sum += c;
    return sum;
}

double theta(const WeightedSet& set) {
    // canonical order so the sum is independent of input order
    if (set.size() == 0) throw DomainError("theta of an empty set");
    double sum = 0.0;
    for (auto i : set.order()) sum += set.complexity()[i];
    return sum;
}

double theta_pair(const WeightedSet& set, Norm norm) {
    const double f = norm_factor(norm, set.size());
    double sum = 0.0;
    set.for_each_pair([&](auto, auto, double c, double) { sum += c; });
    return f * sum;
}

double lambda_avg(const WeightedSet& set, Norm norm) {
    const double f = norm_factor(norm, set.size());
    double sum = 0.0;
    set.for_each_pair([&](auto, auto, double c, double d) { sum += c * d; });
    return f * sum;
}

double phi(const WeightedSet& set, Norm norm) {
    const double f = norm_factor(norm, set.size());
    double sum = 0.0;
    set.for_each_pair([&](auto, auto, double c, double d) { sum += c * (1.0 - d); });
    return f * sum;
}

MeasureReport psi(const WeightedSet& set, const Kernel& kernel, Norm norm, bool with_pairs) {
    const double f = norm_factor(norm, set.size());
    MeasureReport r;
    r.n = set.size();
    r.norm = norm;
    r.kernel = kernel.name();
    r.theta = theta(set);

    double c_sum = 0.0, cd = 0.0, cd2 = 0.0, c1d = 0.0, ck = 0.0;
    std::vector<PairTerm> pairs;
    if (with_pairs) pairs.reserve(set.size() * (set.size() - 1) / 2);
    set.for_each_pair([&](std::size_t i, std::size_t j, double c, double d) {
        const double term = c * kernel(d);
        c_sum += c;
        cd += c * d;
        cd2 += c * d * d;
        c1d += c * (1.0 - d);
        ck += term;
        if (with_pairs) pairs.push_back({i, j, c, d, f * term});
    });
    r.theta_pair = f * c_sum;
    r.lambda = f * cd;
    r.phi = f * c1d;
    r.psi = f * ck;
    r.delta_sq = f * cd2 - r.lambda * r.lambda;
    if (with_pairs) r.per_pair = std::move(pairs);
    return r;
}

double pi_general(const WeightedSet& set, std::span<const KernelTerm> terms, Norm norm) {
    const auto kernel = Kernel::polynomial({terms.begin(), terms.end()});
    return psi(set, kernel, norm).psi;
}

Decomposition decomposition(const WeightedSet& set, Norm norm) {
    const auto r = psi(set, Kernel{}, norm);
    return {r.lambda, r.delta_sq, r.psi};
}

double avg_distance(const DistanceMatrix& distances) {
    require_pairs(distances.size());
    const auto& v = distances.lower();
    double sum = 0.0;
    for (double d : v) sum += d;
    return sum / static_cast<double>(v.size());
}

double conditional_complexity(double cx, double cy, double d) { return d * std::max(cx, cy); }

double mutual_info_estimate(double cx, double cy, double d) { return std::max(cx, cy) * (1.0 - d); }

double mutual_info_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy) {
    return static_cast<double>(cx) + static_cast<double>(cy) - static_cast<double>(cxy);
}

void write_csv(std::ostream& out, const MeasureReport& r, bool header) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    if (header) out << "n,norm,theta,theta_pair,lambda,phi,psi,delta_sq\n";
    out << r.n << ',' << to_string(r.norm) << ',' << r.theta << ',' << r.theta_pair << ',' << r.lambda
        << ',' << r.phi << ',' << r.psi << ',' << r.delta_sq << '\n';
    out.precision(old_precision);
}

void write_pairs_csv(std::ostream& out, const MeasureReport& r) {
    if (!r.per_pair) throw DomainError("report has no per-pair terms");
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "i,j,c_max,d,contribution\n";
    for (const auto& p : *r.per_pair) {
        out << p.i << ',' << p.j << ',' << p.c_max << ',' << p.d << ',' << p.contribution << '\n';
    }
    out.precision(old_precision);
}

}  // namespace setcx
