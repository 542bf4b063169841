#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kadv/errors.hpp"
#include "kadv/rational.hpp"

namespace kadv {

inline uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
}

// Simple undirected graph with exact rational edge weights. Vertices carry
// opaque string labels. No loops, no parallel edges.
struct WeightedGraph {
    struct Edge {
        int u, v;  // u < v
        Rat w;
    };

    std::vector<std::string> labels;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge idx)
    std::unordered_map<uint64_t, int> edge_idx;

    int vertex_count() const { return static_cast<int>(labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    int add_vertex(std::string label) {
        labels.push_back(std::move(label));
        adj.emplace_back();
        return vertex_count() - 1;
    }

    int add_edge(int u, int v, Rat w) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw PreconditionViolation("loop edge at vertex " + labels[u]);
        if (u > v) std::swap(u, v);
        if (edge_idx.count(pair_key(u, v)))
            throw PreconditionViolation("parallel edge " + labels[u] + "-" + labels[v]);
        int id = edge_count();
        edges.push_back({u, v, std::move(w)});
        adj[u].emplace_back(v, id);
        adj[v].emplace_back(u, id);
        edge_idx.emplace(pair_key(u, v), id);
        return id;
    }

    bool has_edge(int u, int v) const { return edge_idx.count(pair_key(u, v)) != 0; }

    std::optional<int> find_edge(int u, int v) const {
        auto it = edge_idx.find(pair_key(u, v));
        if (it == edge_idx.end()) return std::nullopt;
        return it->second;
    }

    const Rat& weight(int u, int v) const {
        auto e = find_edge(u, v);
        if (!e) throw IndexError("no edge " + std::to_string(u) + "-" + std::to_string(v));
        return edges[*e].w;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count())
            throw IndexError("vertex " + std::to_string(v) + " out of range");
    }
};

// Two-way vertex partition; true = 1-set.
struct Cut {
    std::vector<char> one;

    int size() const { return static_cast<int>(one.size()); }
    bool in_one(int v) const { return one[v] != 0; }

    static Cut all_two(int n) { return Cut{std::vector<char>(n, 0)}; }

    bool operator==(const Cut& o) const { return one == o.one; }

    uint64_t bits() const {  // only valid for size() <= 64
        uint64_t b = 0;
        for (int i = 0; i < size(); ++i)
            if (one[i]) b |= (1ULL << i);
        return b;
    }
};

Rat cut_value(const WeightedGraph& g, const Cut& cut);
Rat flip_gain(const WeightedGraph& g, const Cut& cut, int v);
Cut apply_flip(const Cut& cut, int v);

// Length of the shortest cycle; nullopt for forests.
std::optional<long> girth(const WeightedGraph& g);

}  // namespace kadv
