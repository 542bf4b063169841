#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kadv/graph.hpp"

namespace kadv {

using VPair = std::pair<int, int>;  // normalized: first < second

inline VPair vpair(int u, int v) { return u < v ? VPair{u, v} : VPair{v, u}; }

// Hamiltonian cycle over vertices 0..n-1. Edges are kept sorted; the sorted
// edge list is the canonical form used for hashing and deduplication.
struct Tour {
    int n = 0;
    std::vector<VPair> edges;                // sorted
    std::vector<std::array<int, 2>> neighbors;  // per-vertex, ascending

    // Validates degree 2 + single spanning cycle.
    static Tour from_edges(int n, std::vector<VPair> edges);
    static Tour from_order(const std::vector<int>& order);

    bool has_edge(int u, int v) const {
        const auto& nb = neighbors[u];
        return nb[0] == v || nb[1] == v;
    }

    std::vector<int> vertex_order() const;  // starts at 0, smaller neighbor first

    bool operator==(const Tour& o) const { return edges == o.edges; }
};

struct TourHash {
    size_t operator()(const Tour& t) const {
        size_t h = 1469598103934665603ULL;
        for (const auto& [u, v] : t.edges) {
            h = (h ^ static_cast<size_t>(u)) * 1099511628211ULL;
            h = (h ^ static_cast<size_t>(v)) * 1099511628211ULL;
        }
        return h;
    }
};

// A move: remove `removed` from the tour, add `added`. |removed| = |added|,
// disjoint sets.
struct Swap {
    std::vector<VPair> removed;
    std::vector<VPair> added;
};

// removed must be tour edges, added must not be; result must be a tour.
Tour apply_swap(const Tour& tour, const Swap& swap);

// Sum of tour edge weights; edges absent from the graph count as big_m.
Rat tour_weight(const WeightedGraph& g, const Tour& tour, const Rat& big_m);

}  // namespace kadv
