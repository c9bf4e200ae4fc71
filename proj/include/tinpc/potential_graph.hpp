#pragma once

#include "tinpc/channel.hpp"
#include "tinpc/tuples.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinpc {

struct GraphVertex {
    std::optional<std::size_t> user;  // empty for the distinguished vertex u
    std::size_t state = 0;
};

struct GraphEdge {
    std::size_t from;
    std::size_t to;
    Rational length;
};

/// Complete digraph over one vertex per (receiver, state) pair plus a
/// distinguished vertex u. A GDoF target is reachable with TIN and power
/// control iff no directed circuit has negative length; shortest distances
/// from u are then a valid power allocation.
class PotentialGraph {
public:
    PotentialGraph(std::size_t users, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges, bool reduced)
        : users_(users), vertices_(std::move(vertices)), edges_(std::move(edges)), reduced_(reduced) {
        first_vertex_.assign(users_, vertices_.size());
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            if (!vertices_[v].user) {
                source_ = v;
            } else if (first_vertex_[*vertices_[v].user] == vertices_.size()) {
                first_vertex_[*vertices_[v].user] = v;
            }
        }
    }

    std::size_t users() const noexcept { return users_; }
    const std::vector<GraphVertex>& vertices() const noexcept { return vertices_; }
    const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    std::size_t source() const noexcept { return source_; }
    bool reduced() const noexcept { return reduced_; }

    /// Index of the first vertex belonging to user k.
    std::size_t first_vertex(std::size_t k) const { return first_vertex_.at(k); }

    /// Length of the edge a -> b. Linear scan; intended for diagnostics.
    std::optional<Rational> length(std::size_t a, std::size_t b) const {
        for (const auto& e : edges_)
            if (e.from == a && e.to == b) return e.length;
        return std::nullopt;
    }

    /// "u", "v2" on reduced graphs, "v2.3" (user 2, state 3) on full graphs.
    std::string label(std::size_t v) const {
        const auto& vx = vertices_.at(v);
        if (!vx.user) return "u";
        std::string s = "v" + std::to_string(*vx.user + 1);
        if (!reduced_) s += "." + std::to_string(vx.state + 1);
        return s;
    }

private:
    std::size_t users_;
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
    bool reduced_;
    std::size_t source_ = 0;
    std::vector<std::size_t> first_vertex_;
};

namespace detail {

inline void check_target(const CompoundChannel& ch, const GdofTuple& d) {
    if (d.size() != ch.users()) {
        throw std::invalid_argument("target has " + std::to_string(d.size()) + " entries, channel has " +
                                    std::to_string(ch.users()) + " users");
    }
}

}  // namespace detail

/// Potential graph over every (receiver, state) vertex.
inline PotentialGraph build_full(const CompoundChannel& ch, const GdofTuple& d) {
    detail::check_target(ch, d);
    const std::size_t K = ch.users();
    std::vector<GraphVertex> vertices;
    std::vector<std::vector<std::size_t>> ids(K);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t l = 0; l < ch.state_count(k); ++l) {
            ids[k].push_back(vertices.size());
            vertices.push_back({k, l});
        }
    }
    const std::size_t u = vertices.size();
    vertices.push_back({std::nullopt, 0});

    std::vector<GraphEdge> edges;
    // same user, different states
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t a : ids[k])
            for (std::size_t b : ids[k])
                if (a != b) edges.push_back({a, b, Rational(0)});
    // cross-user edges depend only on the tail's state
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < ch.state_count(k); ++l)
            for (std::size_t j = 0; j < K; ++j) {
                if (j == k) continue;
                Rational len = ch.strength(k, l, k) - ch.strength(k, l, j) - d[k];
                for (std::size_t b : ids[j]) edges.push_back({ids[k][l], b, len});
            }
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < ch.state_count(k); ++l)
            edges.push_back({ids[k][l], u, ch.strength(k, l, k) - d[k]});
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t a : ids[k]) edges.push_back({u, a, Rational(0)});

    return PotentialGraph(K, std::move(vertices), std::move(edges), false);
}

/// K+1 vertex graph whose edges take the minimum over the tail's states. It is
/// the potential graph of the regular counterpart and has the same shortest
/// distances as the full graph.
inline PotentialGraph build_reduced(const CompoundChannel& ch, const GdofTuple& d) {
    detail::check_target(ch, d);
    const std::size_t K = ch.users();
    std::vector<GraphVertex> vertices;
    for (std::size_t k = 0; k < K; ++k) vertices.push_back({k, 0});
    const std::size_t u = K;
    vertices.push_back({std::nullopt, 0});

    std::vector<GraphEdge> edges;
    for (std::size_t k = 0; k < K; ++k) {
        const auto& states = ch.states(k);
        for (std::size_t j = 0; j < K; ++j) {
            if (j == k) continue;
            Rational gain = states.front()[k] - states.front()[j];
            for (const auto& s : states) gain = std::min<Rational>(gain, s[k] - s[j]);
            edges.push_back({k, j, gain - d[k]});
        }
    }
    for (std::size_t k = 0; k < K; ++k) {
        Rational direct = ch.states(k).front()[k];
        for (const auto& s : ch.states(k)) direct = std::min(direct, s[k]);
        edges.push_back({k, u, direct - d[k]});
    }
    for (std::size_t k = 0; k < K; ++k) edges.push_back({u, k, Rational(0)});

    return PotentialGraph(K, std::move(vertices), std::move(edges), true);
}

struct ShortestPathResult {
    bool feasible = false;
    /// Shortest u -> v_k distance per user; filled iff feasible.
    std::vector<Rational> l_dst;
    /// Vertex sequence c0 -> c1 -> ... -> c0 of a negative circuit; filled iff infeasible.
    std::vector<std::size_t> negative_cycle;
    Rational cycle_length = 0;
};

/// Bellman-Ford from u: |V|-1 relaxation rounds, then one detection round.
inline ShortestPathResult shortest_paths(const PotentialGraph& g) {
    const std::size_t n = g.vertices().size();
    std::vector<std::optional<Rational>> dist(n);
    std::vector<std::size_t> pred(n, n);
    dist[g.source()] = Rational(0);

    for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (const auto& e : g.edges()) {
            if (!dist[e.from]) continue;
            Rational cand = *dist[e.from] + e.length;
            if (!dist[e.to] || cand < *dist[e.to]) {
                dist[e.to] = cand;
                pred[e.to] = e.from;
                changed = true;
            }
        }
        if (!changed) break;
    }

    std::optional<std::size_t> relaxed;
    for (const auto& e : g.edges()) {
        if (!dist[e.from]) continue;
        Rational cand = *dist[e.from] + e.length;
        if (!dist[e.to] || cand < *dist[e.to]) {
            dist[e.to] = cand;
            pred[e.to] = e.from;
            relaxed = e.to;
        }
    }

    ShortestPathResult result;
    if (!relaxed) {
        result.feasible = true;
        for (std::size_t k = 0; k < g.users(); ++k) result.l_dst.push_back(*dist[g.first_vertex(k)]);
        return result;
    }

    // Walking back n steps lands on the predecessor cycle.
    std::size_t x = *relaxed;
    for (std::size_t i = 0; i < n; ++i) {
        if (pred[x] == n) throw std::logic_error("predecessor chain left the graph");
        x = pred[x];
    }
    std::vector<std::size_t> cycle{x};
    for (std::size_t y = pred[x]; y != x; y = pred[y]) cycle.push_back(y);
    std::reverse(cycle.begin(), cycle.end());

    result.negative_cycle = cycle;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        result.cycle_length += *g.length(cycle[i], cycle[(i + 1) % cycle.size()]);
    }
    return result;
}

/// Edge list, one "src dst length" line per edge.
inline void write_edge_list(std::ostream& os, const PotentialGraph& g) {
    for (const auto& e : g.edges()) os << g.label(e.from) << ' ' << g.label(e.to) << ' ' << to_string(e.length) << '\n';
}

inline std::string describe_cycle(const PotentialGraph& g, const std::vector<std::size_t>& cycle) {
    std::string s;
    for (std::size_t v : cycle) s += g.label(v) + " -> ";
    if (!cycle.empty()) s += g.label(cycle.front());
    return s;
}

}  // namespace tinpc
