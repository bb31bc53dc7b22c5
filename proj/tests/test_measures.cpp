#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "setcx/compression.hpp"
#include "setcx/errors.hpp"
#include "setcx/measures.hpp"
#include "setcx/infodist.hpp"
#include "setcx/rng.hpp"
#include "setcx/string_set.hpp"

using namespace setcx;

namespace {

WeightedSet uniform_set(std::vector<double> c, double d) {
    const auto n = c.size();
    return WeightedSet(std::move(c), DistanceMatrix::uniform(n, d));
}

WeightedSet random_instance(Rng& rng, std::size_t n) {
    std::vector<double> c(n);
    for (auto& v : c) v = 1.0 + 299.0 * rng.uniform();
    std::vector<double> d(n * (n - 1) / 2);
    for (auto& v : d) v = rng.uniform();
    return WeightedSet(std::move(c), DistanceMatrix(n, std::move(d)));
}

// Independent evaluation straight from the definition: every unordered
// pair once, larger complexity as weight.
double brute_sum(const WeightedSet& s, double (*f)(double)) {
    double total = 0.0;
    const auto c = s.complexity();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) total += std::max(c[i], c[j]) * f(s.distances().at(i, j));
    return total;
}

double d1d(double d) { return d * (1.0 - d); }
double ident(double d) { return d; }

}  // namespace

TEST_SUITE("setmeasures") {

TEST_CASE("theta") {
    const std::vector<double> one{42.0};
    CHECK(theta(one) == 42.0);
    const std::vector<double> c{3.0, 5.0, 7.0};
    std::vector<double> doubled = c;
    doubled.insert(doubled.end(), c.begin(), c.end());
    CHECK(theta(doubled) == 2.0 * theta(c));
    CHECK(theta(std::vector<double>(25, 11.0)) == 25.0 * 11.0);
    CHECK_THROWS_AS(theta(std::vector<double>{}), DomainError);
}

TEST_CASE("lambda_avg") {
    CHECK(lambda_avg(uniform_set({4, 9, 2}, 0.0)) == 0.0);
    // unit distances, pairs_mean: mean of pairwise maxima (9, 4, 9)
    CHECK(lambda_avg(uniform_set({4, 9, 2}, 1.0), Norm::pairs_mean) == doctest::Approx(22.0 / 3.0));
    CHECK(lambda_avg(uniform_set({10, 20}, 0.5), Norm::xi) == doctest::Approx(10.0));
}

TEST_CASE("phi") {
    CHECK(phi(uniform_set({4, 9, 2}, 1.0)) == 0.0);
    CHECK(phi(uniform_set({4, 9, 2}, 0.0), Norm::xi) == doctest::Approx((9.0 + 4.0 + 9.0) / 2.0));
    CHECK(phi(uniform_set({10, 20}, 0.25), Norm::xi) == doctest::Approx(15.0));
}

TEST_CASE("psi zero laws and uniform spacing") {
    CHECK(psi(uniform_set({5, 6, 7, 8}, 0.0)).psi == 0.0);
    CHECK(psi(uniform_set({5, 6, 7, 8}, 1.0)).psi == 0.0);
    for (std::size_t n : {2u, 3u, 10u, 25u}) {
        const double c = 13.0;
        const auto s = uniform_set(std::vector<double>(n, c), 0.5);
        // brute-force sum times 1/(N-1)
        const double oracle = brute_sum(s, d1d) / double(n - 1);
        CHECK(psi(s).psi == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(psi(s).psi == doctest::Approx(0.25 * (double(n) / 2.0) * c).epsilon(1e-12));
    }
}

TEST_CASE("psi matches the brute-force pair sum on random instances") {
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const auto s = random_instance(rng, 2 + rng.below(20));
        const double scale = 1.0 / double(s.size() - 1);
        CHECK(psi(s).psi == doctest::Approx(scale * brute_sum(s, d1d)).epsilon(1e-12));
        CHECK(lambda_avg(s) == doctest::Approx(scale * brute_sum(s, ident)).epsilon(1e-12));
    }
}

TEST_CASE("pi_general") {
    Rng rng(23);
    const auto s = random_instance(rng, 9);
    const double base = psi(s).psi;
    const std::vector<KernelTerm> unit{{1, 1, 1.0}};
    const std::vector<KernelTerm> twice{{1, 1, 2.0}};
    CHECK(pi_general(s, unit) == base);
    CHECK(pi_general(s, twice) == doctest::Approx(2.0 * base).epsilon(1e-14));

    const auto half = uniform_set({3, 4, 5}, 0.5);
    const std::vector<KernelTerm> squared{{2, 1, 1.0}};
    CHECK(pi_general(half, squared) == doctest::Approx(0.5 * pi_general(half, unit)));

    const std::vector<KernelTerm> bad{{0, 1, 1.0}};
    CHECK_THROWS_AS(pi_general(s, bad), DomainError);
    CHECK_THROWS_AS(Kernel::polynomial({}), DomainError);
}

TEST_CASE("decomposition examples") {
    const auto zero = decomposition(uniform_set({1, 2, 3}, 0.0));
    CHECK(zero.lambda == 0.0);
    CHECK(zero.delta_sq == 0.0);
    CHECK(zero.psi == 0.0);

    const auto one = decomposition(uniform_set({1, 1}, 0.3));
    CHECK(one.lambda == doctest::Approx(0.3));
    CHECK(one.delta_sq == doctest::Approx(0.0));
    CHECK(one.psi == doctest::Approx(0.21));
}

TEST_CASE("mean-field identity holds for random instances under both norms") {
    Rng rng(2024);
    for (int t = 0; t < 1000; ++t) {
        const auto s = random_instance(rng, 10);
        for (auto norm : {Norm::xi, Norm::pairs_mean}) {
            const auto r = decomposition(s, norm);
            const double scale = std::max(1.0, r.lambda * r.lambda);
            REQUIRE(std::abs(r.psi - (r.lambda * (1.0 - r.lambda) - r.delta_sq)) < 1e-12 * scale);
        }
    }
}

TEST_CASE("phi + lambda = theta_pair") {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const auto s = random_instance(rng, 2 + rng.below(15));
        for (auto norm : {Norm::xi, Norm::pairs_mean}) {
            const auto r = psi(s, Kernel{}, norm);
            CHECK(r.phi + r.lambda == doctest::Approx(r.theta_pair).epsilon(1e-12));
            CHECK(theta_pair(s, norm) == r.theta_pair);
        }
    }
}

TEST_CASE("uniform spacing: psi = d(1-d) theta_pair, maximal at d = 1/2") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> c(2 + rng.below(20));
        for (auto& v : c) v = 1.0 + 100.0 * rng.uniform();
        double best = -1.0, best_d = -1.0;
        for (int step = 0; step <= 20; ++step) {
            const double d = 0.05 * step;
            const auto s = uniform_set(c, d);
            const auto r = psi(s);
            CHECK(r.psi == doctest::Approx(d * (1.0 - d) * r.theta_pair).epsilon(1e-12));
            if (r.psi > best) best = r.psi, best_d = d;
        }
        CHECK(best_d == doctest::Approx(0.5));
    }
}

TEST_CASE("set-permutation invariance is exact") {
    Rng rng(55);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + rng.below(12);
        std::vector<double> c(n);
        for (auto& v : c) v = std::floor(1.0 + 50.0 * rng.uniform());  // integer sizes, ties likely
        std::vector<double> d(n * (n - 1) / 2);
        for (auto& v : d) v = rng.uniform();
        const DistanceMatrix m(n, d);
        const auto perm = [&] {
            std::vector<std::size_t> p(n);
            for (std::size_t i = 0; i < n; ++i) p[i] = i;
            for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
            return p;
        }();
        std::vector<double> c2(n);
        std::vector<double> d2(d.size());
        for (std::size_t i = 0; i < n; ++i) c2[perm[i]] = c[i];
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) d2[pair_index(perm[i], perm[j])] = m.at(i, j);
        // tie-free complexities make the canonical order unique
        std::vector<double> unique_c = c;
        for (std::size_t i = 0; i < n; ++i) unique_c[i] += 1e-3 * double(i);
        std::vector<double> unique_c2(n);
        for (std::size_t i = 0; i < n; ++i) unique_c2[perm[i]] = unique_c[i];
        const WeightedSet a(unique_c, m), b(unique_c2, DistanceMatrix(n, d2));
        const auto ra = psi(a), rb = psi(b);
        CHECK(ra.psi == rb.psi);
        CHECK(ra.lambda == rb.lambda);
        CHECK(ra.phi == rb.phi);
        CHECK(ra.theta == rb.theta);
        CHECK(ra.delta_sq == rb.delta_sq);
    }
}

TEST_CASE("appending an exact copy adds no new kernel terms") {
    Rng rng(66);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 3 + rng.below(8);
        const auto base = random_instance(rng, n);
        const std::size_t src = rng.below(n);
        // extended set: member n copies member src
        std::vector<double> c(base.complexity().begin(), base.complexity().end());
        c.push_back(c[src]);
        std::vector<double> d;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (i < n) d.push_back(base.distances().at(i, j));
                else d.push_back(j == src ? 0.0 : base.distances().at(src, j));
            }
        }
        const WeightedSet ext(c, DistanceMatrix(n + 1, d));
        const auto r = psi(ext, Kernel{}, Norm::xi, true);
        double mirrored = 0.0;
        for (const auto& p : *r.per_pair) {
            const bool touches_copy = p.i == n || p.j == n;
            const std::size_t other = p.i == n ? p.j : p.i;
            if (touches_copy && other == src) CHECK(p.contribution == 0.0);
            if (touches_copy && other != src) mirrored += p.c_max * d1d(base.distances().at(src, other));
        }
        const double unnormalized_base = psi(base).psi * double(n - 1);
        CHECK(r.psi * double(n) == doctest::Approx(unnormalized_base + mirrored).epsilon(1e-12));
    }
}

TEST_CASE("avg_distance") {
    CHECK(avg_distance(DistanceMatrix::uniform(5, 0.4)) == doctest::Approx(0.4));
    CHECK(avg_distance(DistanceMatrix(3, {0.0, 0.5, 1.0})) == doctest::Approx(0.5));
    CHECK(avg_distance(DistanceMatrix::uniform(4, 0.0)) == 0.0);
}

TEST_CASE("conditional complexity and mutual information") {
    CHECK(conditional_complexity(100, 250, 0.0) == 0.0);
    CHECK(conditional_complexity(100, 250, 1.0) == 250.0);
    CHECK(conditional_complexity(100, 250, 0.4) == doctest::Approx(100.0));
    CHECK(mutual_info_estimate(100, 250, 1.0) == 0.0);
    CHECK(mutual_info_estimate(100, 250, 0.0) == 250.0);
    CHECK(mutual_info_from_sizes(220, 220, 236) == 204.0);
}

TEST_CASE("additive and distance-based mutual information agree for y = x") {
    Rng rng(12);
    const auto x = random_bitstring(1000, rng);
    const StringSet set({x, x});
    const auto cal = calibrate(set, rng);
    const std::size_t cx = set.compressed(0);
    const std::size_t cxy = joint_size(set.bytes(0), set.bytes(1));
    const double additive = mutual_info_from_sizes(cx, cx, cxy);
    const double from_distance = mutual_info_estimate(double(cx), double(cx), cal.apply(set.ncd(0, 1)));
    CHECK(additive == doctest::Approx(from_distance).epsilon(0.15));
}

TEST_CASE("kernels") {
    CHECK(Kernel{}(0.5) == 0.25);
    CHECK(Kernel::parse("d1d").name() == "d1d");
    const auto dlnd = Kernel::parse("dlnd");
    const auto one_ln = Kernel::parse("1dln1d");
    CHECK(dlnd(0.0) == 0.0);
    CHECK(dlnd(1.0) == 0.0);
    CHECK(one_ln(0.0) == 0.0);
    CHECK(one_ln(1.0) == 0.0);
    CHECK(dlnd(0.5) == doctest::Approx(0.5 * std::log(0.5)));
    // continuity near the endpoints
    CHECK(std::abs(dlnd(1e-12)) < 1e-10);
    CHECK(std::abs(one_ln(1.0 - 1e-12)) < 1e-10);
    CHECK(Kernel::parse("d")(0.3) == 0.3);
    CHECK(Kernel::parse("1d")(0.3) == doctest::Approx(0.7));

    const auto poly = Kernel::parse("poly:1,1,1;2,3,0.5");
    CHECK(poly(0.4) == doctest::Approx(0.4 * 0.6 + 0.5 * 0.16 * 0.216));
    CHECK(Kernel::parse(poly.name())(0.4) == poly(0.4));
    CHECK(Kernel::parse("poly:1,1,1")(0.37) == Kernel{}(0.37));
    CHECK_THROWS_AS(Kernel::parse("cosh"), ConfigError);
    CHECK_THROWS_AS(Kernel::parse("poly:1,0,1"), DomainError);
    CHECK_THROWS_AS(Kernel::parse("poly:1.5,1,1"), ConfigError);
}

TEST_CASE("single-member sets") {
    const WeightedSet one(std::vector<double>{7.0}, DistanceMatrix(1, {}));
    CHECK(theta(one) == 7.0);
    CHECK_THROWS_AS(lambda_avg(one), DomainError);
    CHECK_THROWS_AS(phi(one), DomainError);
    CHECK_THROWS_AS(psi(one), DomainError);
    CHECK_THROWS_AS(WeightedSet(std::vector<double>{1, 2, 3}, DistanceMatrix::uniform(2, 0.5)), DomainError);
}

TEST_CASE("report CSV") {
    const auto r = psi(uniform_set({10, 20}, 0.5), Kernel{}, Norm::xi, true);
    std::ostringstream out;
    write_csv(out, r);
    CHECK(out.str() == "n,norm,theta,theta_pair,lambda,phi,psi,delta_sq\n2,xi,30,20,10,10,5,-95\n");
    std::ostringstream pairs;
    write_pairs_csv(pairs, r);
    CHECK(pairs.str() == "i,j,c_max,d,contribution\n1,0,20,0.5,5\n");
}

}  // TEST_SUITE
