#include "setcx/graph.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "setcx/errors.hpp"
#include "setcx/parallel.hpp"

namespace setcx {

Graph::Graph(std::size_t n, std::vector<std::uint8_t> adjacency) : n_(n), adj_(std::move(adjacency)) {
    if (adj_.size() != n_ * n_) throw DomainError("adjacency must have n * n entries");
    for (std::size_t i = 0; i < n_; ++i) {
        if (adj_[i * n_ + i]) throw DomainError("self-loop at node " + std::to_string(i));
        for (std::size_t j = 0; j < n_; ++j) {
            if (adj_[i * n_ + j] > 1) throw DomainError("adjacency entries must be 0 or 1");
            if (adj_[i * n_ + j] != adj_[j * n_ + i]) {
                throw DomainError("adjacency is not symmetric at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
            }
        }
    }
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    Graph g(n);
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) throw DomainError("edge endpoint out of range");
        if (i == j) throw DomainError("self-loop at node " + std::to_string(i));
        if (g.has_edge(i, j)) throw DomainError("duplicate edge " + std::to_string(i) + " " + std::to_string(j));
        g.set_edge(i, j, true);
    }
    return g;
}

Graph Graph::complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.adj_[i * n + j] = i != j;
    return g;
}

void Graph::set_edge(std::size_t i, std::size_t j, bool present) {
    if (i >= n_ || j >= n_) throw DomainError("node index out of range");
    if (i == j) throw DomainError("self-loops are not allowed");
    adj_[i * n_ + j] = adj_[j * n_ + i] = present ? 1 : 0;
}

std::size_t Graph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n_; ++j) d += adj_[i * n_ + j];
    return d;
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (auto a : adj_) twice += a;
    return twice / 2;
}

std::string to_string(GraphNorm mode) {
    return mode == GraphNorm::node_sum ? "node-sum" : "weighted-pairs";
}

GraphNorm parse_graph_norm(std::string_view name) {
    if (name == "node-sum") return GraphNorm::node_sum;
    if (name == "weighted-pairs") return GraphNorm::weighted_pairs;
    throw ConfigError("unknown graph mode '" + std::string(name) + "' (expected node-sum or weighted-pairs)");
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double node_complexity(const Graph& g, std::size_t i) {
    if (g.size() < 2) throw DomainError("node complexity needs at least two nodes");
    if (i >= g.size()) throw DomainError("node index out of range");
    return binary_entropy(static_cast<double>(g.degree(i)) / static_cast<double>(g.size() - 1));
}

double node_distance(const Graph& g, std::size_t i, std::size_t j) {
    const std::size_t n = g.size();
    if (n < 3) throw DomainError("node distance needs at least three nodes");
    if (i >= n || j >= n || i == j) throw DomainError("node distance needs two distinct valid nodes");

    std::array<std::array<double, 2>, 2> joint{};
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        joint[g.has_edge(i, k)][g.has_edge(j, k)] += 1.0;
    }
    const auto m = static_cast<double>(n - 2);
    for (auto& row : joint)
        for (auto& v : row) v /= m;
    const std::array<double, 2> pi{joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
    const std::array<double, 2> pj{joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};

    double mi = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double p = joint[a][b];
            if (p > 0.0) mi += p * std::log2(p / (pi[a] * pj[b]));
        }
    }
    const double d = 1.0 - mi;
    assert(d > -1e-9 && d < 1.0 + 1e-9);
    return std::clamp(d, 0.0, 1.0);
}

double graph_psi(const Graph& g, GraphNorm mode) {
    const std::size_t n = g.size();
    if (n < 3) throw DomainError("graph psi needs at least three nodes");
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = node_complexity(g, i);

    double pair_sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double d = node_distance(g, i, j);
            const double term = d * (1.0 - d);
            pair_sum += mode == GraphNorm::node_sum ? term : std::max(k[i], k[j]) * term;
        }
    }
    const auto nn = static_cast<double>(n);
    if (mode == GraphNorm::weighted_pairs) return pair_sum / (nn - 1.0);
    double k_sum = 0.0;
    for (double v : k) k_sum += v;
    return k_sum * 2.0 / (nn * (nn - 1.0)) * pair_sum;
}

Graph conjugate(const Graph& g) {
    Graph c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) c.set_edge(i, j, !g.has_edge(i, j));
    return c;
}

Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
    if (perm.size() != g.size()) throw DomainError("relabel: permutation size mismatch");
    Graph r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g.has_edge(i, j)) r.set_edge(perm[i], perm[j], true);
    return r;
}

Graph random_graph(std::size_t n, double edge_probability, Rng& rng) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(edge_probability)) g.set_edge(i, j, true);
    return g;
}

SearchResult maximize_psi(std::size_t n, std::size_t iterations, std::size_t restarts, std::uint64_t seed,
                          GraphNorm mode, unsigned threads) {
    if (n < 4) throw DomainError("maximize_psi needs at least four nodes");
    if (restarts < 1) throw DomainError("maximize_psi needs at least one restart");
    std::vector<SearchResult> results(restarts);
    parallel_for(restarts, threads, [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        Graph g = random_graph(n, 0.5, rng);
        double best = graph_psi(g, mode);
        for (std::size_t it = 0; it < iterations; ++it) {
            const auto i = static_cast<std::size_t>(rng.below(n));
            auto j = static_cast<std::size_t>(rng.below(n - 1));
            if (j >= i) ++j;
            g.toggle_edge(i, j);
            const double v = graph_psi(g, mode);
            if (v > best) {
                best = v;
            } else {
                g.toggle_edge(i, j);
            }
        }
        results[r] = {std::move(g), best};
    });
    std::size_t winner = 0;
    for (std::size_t r = 1; r < restarts; ++r) {
        if (results[r].psi > results[winner].psi) winner = r;
    }
    return std::move(results[winner]);
}

namespace {

struct DataLine {
    std::size_t number;
    std::vector<std::string> fields;
};

std::vector<DataLine> read_lines(std::istream& in) {
    std::vector<DataLine> lines;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        DataLine dl{number, {}};
        for (std::string t; tokens >> t;) dl.fields.push_back(t);
        if (!dl.fields.empty()) lines.push_back(std::move(dl));
    }
    return lines;
}

std::size_t parse_index(const std::string& s, std::size_t line) {
    std::size_t v = 0;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
    }
    try {
        v = std::stoull(s);
    } catch (const std::exception&) {
        throw ParseError(line, "integer out of range: '" + s + "'");
    }
    return v;
}

Graph dense_from(const std::vector<DataLine>& lines) {
    const std::size_t n = lines.size();
    std::vector<std::uint8_t> adj(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& dl = lines[i];
        if (dl.fields.size() != n) {
            throw ParseError(dl.number, "expected " + std::to_string(n) + " entries, got " +
                                            std::to_string(dl.fields.size()));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto& f = dl.fields[j];
            if (f != "0" && f != "1") throw ParseError(dl.number, "entries must be 0 or 1, got '" + f + "'");
            adj[i * n + j] = f == "1";
        }
        if (adj[i * n + i]) throw ParseError(dl.number, "self-loop at node " + std::to_string(i));
        for (std::size_t j = 0; j < i; ++j) {
            if (adj[i * n + j] != adj[j * n + i]) {
                throw ParseError(dl.number, "asymmetric entry (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ")");
            }
        }
    }
    return Graph(n, std::move(adj));
}

Graph edges_from(const std::vector<DataLine>& lines, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> numbers;
    std::size_t max_index = 0;
    for (const auto& dl : lines) {
        if (dl.fields.size() != 2) throw ParseError(dl.number, "edge lines need exactly two node indices");
        const auto i = parse_index(dl.fields[0], dl.number);
        const auto j = parse_index(dl.fields[1], dl.number);
        if (i == j) throw ParseError(dl.number, "self-loop at node " + std::to_string(i));
        max_index = std::max({max_index, i, j});
        edges.emplace_back(i, j);
        numbers.push_back(dl.number);
    }
    if (n == 0) n = edges.empty() ? 0 : max_index + 1;
    Graph g(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [i, j] = edges[e];
        if (i >= n || j >= n) throw ParseError(numbers[e], "node index out of range for n = " + std::to_string(n));
        if (g.has_edge(i, j)) throw ParseError(numbers[e], "duplicate edge " + std::to_string(i) + " " + std::to_string(j));
        g.set_edge(i, j, true);
    }
    return g;
}

}  // namespace

Graph read_dense(std::istream& in) { return dense_from(read_lines(in)); }

Graph read_edge_list(std::istream& in, std::size_t n) { return edges_from(read_lines(in), n); }

Graph read_graph(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.empty()) return Graph();
    const bool dense = lines.front().fields.size() > 2 ||
                       (lines.size() == lines.front().fields.size() && lines.size() <= 2 &&
                        std::all_of(lines.begin(), lines.end(), [](const DataLine& dl) {
                            return std::all_of(dl.fields.begin(), dl.fields.end(),
                                               [](const std::string& f) { return f == "0" || f == "1"; });
                        }));
    return dense ? dense_from(lines) : edges_from(lines, 0);
}

void write_dense(std::ostream& out, const Graph& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) out << (j ? " " : "") << int(g.has_edge(i, j));
        out << '\n';
    }
}

}  // namespace setcx
