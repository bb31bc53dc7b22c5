#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setcx/rng.hpp"

namespace setcx {

/// Simple undirected unweighted graph: symmetric 0/1 adjacency, no self-loops.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    /// Throws DomainError on asymmetric, non-binary or self-loop input.
    Graph(std::size_t n, std::vector<std::uint8_t> adjacency);

    static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
    static Graph complete(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool has_edge(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
    void set_edge(std::size_t i, std::size_t j, bool present);
    void toggle_edge(std::size_t i, std::size_t j) { set_edge(i, j, !has_edge(i, j)); }
    std::size_t degree(std::size_t i) const;
    std::size_t edge_count() const;
    std::span<const std::uint8_t> adjacency() const noexcept { return adj_; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
};

/// Pair-sum reading for graph psi.
///   node_sum:       (sum_i K_i) * 2 / (n (n - 1)) * sum_pairs d (1 - d)
///   weighted_pairs: 1 / (n - 1) * sum_pairs max(K_i, K_j) d (1 - d)
enum class GraphNorm { node_sum, weighted_pairs };

std::string to_string(GraphNorm mode);
GraphNorm parse_graph_norm(std::string_view name);

/// Base-2 binary entropy; h(0) = h(1) = 0.
double binary_entropy(double p);

/// Entropy of node i's connection probability degree / (n - 1). n >= 2.
double node_complexity(const Graph& g, std::size_t i);

/// 1 - mutual information of (A_ik, A_jk) over third nodes k != i, j. n >= 3.
double node_distance(const Graph& g, std::size_t i, std::size_t j);

double graph_psi(const Graph& g, GraphNorm mode = GraphNorm::node_sum);

/// Edge complement; the diagonal stays empty.
Graph conjugate(const Graph& g);

/// Graph with node v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const std::size_t> perm);

/// G(n, q) random graph.
Graph random_graph(std::size_t n, double edge_probability, Rng& rng);

struct SearchResult {
    Graph graph;
    double psi = 0.0;
};

/// Hill climb over single-edge toggles. Each restart begins from a G(n, 1/2)
/// graph and tries `iterations` random toggles, keeping strict improvements.
/// Restarts run in parallel with seeds derived from `seed`; the best result
/// wins, earlier restarts on ties.
SearchResult maximize_psi(std::size_t n, std::size_t iterations, std::size_t restarts, std::uint64_t seed,
                          GraphNorm mode = GraphNorm::node_sum, unsigned threads = 1);

/// Dense 0/1 matrix (n lines of n space-separated values) or edge list
/// (`i j` lines, 0-based). Blank lines and '#' comments are skipped.
/// Throws ParseError naming the offending line.
Graph read_dense(std::istream& in);
Graph read_edge_list(std::istream& in, std::size_t n = 0);

/// Picks dense format when the first data line has more than two fields or
/// the line count equals the field count; otherwise edge list.
Graph read_graph(std::istream& in);

void write_dense(std::ostream& out, const Graph& g);

}  // namespace setcx
