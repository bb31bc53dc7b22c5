#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "setcx/errors.hpp"
#include "setcx/experiments.hpp"
#include "setcx/graph.hpp"
#include "setcx/rng.hpp"

using namespace setcx;

namespace {

double entropy(const std::map<int, double>& counts, double total) {
    double h = 0.0;
    for (auto [key, c] : counts)
        if (c > 0) h -= c / total * std::log2(c / total);
    return h;
}

// d = 1 - (H(X) + H(Y) - H(X, Y)) over the neighbourhood indicators of third nodes.
double oracle_distance(const Graph& g, std::size_t i, std::size_t j) {
    std::map<int, double> x, y, xy;
    double m = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == i || k == j) continue;
        const int a = g.has_edge(i, k), b = g.has_edge(j, k);
        x[a] += 1;
        y[b] += 1;
        xy[2 * a + b] += 1;
        m += 1;
    }
    const double mi = entropy(x, m) + entropy(y, m) - entropy(xy, m);
    return std::min(1.0, std::max(0.0, 1.0 - mi));
}

double oracle_psi(const Graph& g) {
    const double n = double(g.size());
    double ksum = 0, pairs = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double q = double(g.degree(i)) / (n - 1);
        if (q > 0 && q < 1) ksum += -q * std::log2(q) - (1 - q) * std::log2(1 - q);
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const double d = oracle_distance(g, i, j);
            pairs += d * (1 - d);
        }
    }
    return ksum * 2.0 / (n * (n - 1)) * pairs;
}

Graph from_code(std::size_t n, unsigned code) {
    Graph g(n);
    unsigned bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit)
            if ((code >> bit) & 1u) g.set_edge(i, j, true);
    return g;
}

}  // namespace

TEST_SUITE("graphinfo") {

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(4.0 / 9.0) == doctest::Approx(0.99108).epsilon(1e-5));
}

TEST_CASE("two five-cliques") {
    const auto g = two_cliques(10);
    CHECK(g.edge_count() == 20);
    for (std::size_t i = 0; i < 10; ++i) CHECK(node_complexity(g, i) == doctest::Approx(binary_entropy(4.0 / 9.0)));
    const double within = 1.0 - binary_entropy(3.0 / 8.0);
    CHECK(node_distance(g, 0, 1) == doctest::Approx(within).epsilon(1e-12));
    CHECK(within == doctest::Approx(0.0456).epsilon(1e-3));
    CHECK(node_distance(g, 0, 7) == doctest::Approx(0.0).scale(1.0));
    // 10 nodes of complexity H(4/9); 20 within-clique pairs at d, 25 across at 0
    const double expected = 10.0 * binary_entropy(4.0 / 9.0) * 2.0 / 90.0 * 20.0 * within * (1.0 - within);
    CHECK(graph_psi(g) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(graph_psi(g) == doctest::Approx(0.1916).epsilon(1e-3));
    CHECK(graph_psi(conjugate(g)) == doctest::Approx(graph_psi(g)).epsilon(1e-12));
}

TEST_CASE("empty and complete graphs") {
    for (std::size_t n : {3u, 5u, 8u}) {
        CHECK(graph_psi(Graph(n)) == 0.0);
        CHECK(graph_psi(Graph::complete(n)) == 0.0);
        CHECK(graph_psi(Graph(n), GraphNorm::weighted_pairs) == 0.0);
        CHECK(Graph::complete(n).edge_count() == n * (n - 1) / 2);
    }
}

TEST_CASE("agrees with the entropy oracle on random graphs") {
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        const auto g = random_graph(3 + rng.below(10), rng.uniform(), rng);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                if (i != j) REQUIRE(node_distance(g, i, j) == doctest::Approx(oracle_distance(g, i, j)).scale(1.0));
        CHECK(graph_psi(g) == doctest::Approx(oracle_psi(g)).epsilon(1e-10));
    }
}

TEST_CASE("conjugate and relabelling invariance") {
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 4 + rng.below(9);
        const auto g = random_graph(n, 0.5, rng);
        for (auto mode : {GraphNorm::node_sum, GraphNorm::weighted_pairs}) {
            CHECK(graph_psi(conjugate(g), mode) == doctest::Approx(graph_psi(g, mode)).epsilon(1e-12));
        }
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        const auto r = relabel(g, perm);
        CHECK(r.edge_count() == g.edge_count());
        CHECK(graph_psi(r) == doctest::Approx(graph_psi(g)).epsilon(1e-12));
        CHECK(conjugate(conjugate(g)) == g);
    }
}

TEST_CASE("search matches exhaustive enumeration") {
    // n = 4 leaves two third nodes, so every distance is 0 or 1
    double best4 = -1.0;
    for (unsigned code = 0; code < 64; ++code) best4 = std::max(best4, oracle_psi(from_code(4, code)));
    CHECK(maximize_psi(4, 200, 20, 7, GraphNorm::node_sum, 1).psi == best4);

    double best5 = 0.0;
    for (unsigned code = 0; code < 1024; ++code) best5 = std::max(best5, oracle_psi(from_code(5, code)));
    CHECK(best5 > 0.0);
    const auto found = maximize_psi(5, 300, 20, 7, GraphNorm::node_sum, 1);
    CHECK(found.psi == doctest::Approx(best5).epsilon(1e-9));
    CHECK(graph_psi(found.graph) == found.psi);
}

TEST_CASE("search is deterministic and beats the cliques") {
    const auto a = maximize_psi(10, 500, 4, 3, GraphNorm::node_sum, 1);
    const auto b = maximize_psi(10, 500, 4, 3, GraphNorm::node_sum, 3);
    CHECK(a.graph == b.graph);
    CHECK(a.psi == b.psi);
    CHECK(a.psi > graph_psi(two_cliques(10)));
    CHECK_THROWS_AS(maximize_psi(3, 10, 1, 1, GraphNorm::node_sum, 1), DomainError);
}

TEST_CASE("small graphs are rejected") {
    CHECK_THROWS_AS(node_complexity(Graph(1), 0), DomainError);
    CHECK_THROWS_AS(node_distance(Graph(2), 0, 1), DomainError);
    CHECK_THROWS_AS(graph_psi(Graph(2)), DomainError);
}

TEST_CASE("dense and edge-list files") {
    std::istringstream dense("# square\n0 1 0 1\n1 0 1 0\n0 1 0 1\n1 0 1 0\n");
    const auto g = read_graph(dense);
    CHECK(g.size() == 4);
    CHECK(g.edge_count() == 4);

    std::istringstream edges("0 1\n1 2\n2 3\n3 0\n");
    CHECK(read_graph(edges) == g);

    std::ostringstream out;
    write_dense(out, g);
    std::istringstream back(out.str());
    CHECK(read_dense(back) == g);

    std::istringstream padded("0 1\n");
    CHECK(read_edge_list(padded, 6).size() == 6);
}

TEST_CASE("malformed graph files name the line") {
    auto line_of = [](auto&& parse) {
        try {
            parse();
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of([] {
              std::istringstream in("0 1\n2 2\n");
              read_edge_list(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("0 1\n# note\n1 0\n0 1\n");
              read_edge_list(in);
          }) == 3);
    CHECK(line_of([] {
              std::istringstream in("0 1 0\n0 0 1\n0 1 0\n");
              read_dense(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("0 1 0\n1 1 0\n0 0 0\n");
              read_dense(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("0 x\n");
              read_edge_list(in);
          }) == 1);
    CHECK(line_of([] {
              std::istringstream in("0 5\n");
              read_edge_list(in, 3);
          }) == 1);
}

}  // TEST_SUITE
