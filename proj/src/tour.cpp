#include "kadv/tour.hpp"

#include <algorithm>

namespace kadv {

Tour Tour::from_edges(int n, std::vector<VPair> edges) {
    if (n < 3) throw NotATour("a tour needs at least 3 vertices");
    if (static_cast<int>(edges.size()) != n)
        throw NotATour("edge count " + std::to_string(edges.size()) + " != vertex count " +
                       std::to_string(n));
    Tour t;
    t.n = n;
    std::sort(edges.begin(), edges.end());
    t.edges = std::move(edges);
    t.neighbors.assign(n, {-1, -1});
    std::vector<int> deg(n, 0);
    for (size_t i = 0; i + 1 < t.edges.size(); ++i)
        if (t.edges[i] == t.edges[i + 1]) throw NotATour("duplicate edge");
    for (const auto& [u, v] : t.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw NotATour("bad edge endpoints");
        if (deg[u] >= 2 || deg[v] >= 2) throw NotATour("vertex of degree > 2");
        t.neighbors[u][deg[u]++] = v;
        t.neighbors[v][deg[v]++] = u;
    }
    for (int v = 0; v < n; ++v) {
        if (deg[v] != 2) throw NotATour("vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(deg[v]));
        if (t.neighbors[v][0] > t.neighbors[v][1])
            std::swap(t.neighbors[v][0], t.neighbors[v][1]);
    }
    // single cycle check
    int count = 1, prev = 0, cur = t.neighbors[0][0];
    while (cur != 0) {
        int next = (t.neighbors[cur][0] == prev) ? t.neighbors[cur][1] : t.neighbors[cur][0];
        prev = cur;
        cur = next;
        ++count;
    }
    if (count != n) throw NotATour("disconnected: cycle through 0 covers " +
                                   std::to_string(count) + " of " + std::to_string(n));
    return t;
}

Tour Tour::from_order(const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<VPair> edges;
    edges.reserve(n);
    for (int i = 0; i < n; ++i) edges.push_back(vpair(order[i], order[(i + 1) % n]));
    return from_edges(n, std::move(edges));
}

std::vector<int> Tour::vertex_order() const {
    std::vector<int> order;
    order.reserve(n);
    int prev = 0, cur = neighbors[0][0];
    order.push_back(0);
    while (cur != 0) {
        order.push_back(cur);
        int next = (neighbors[cur][0] == prev) ? neighbors[cur][1] : neighbors[cur][0];
        prev = cur;
        cur = next;
    }
    return order;
}

Tour apply_swap(const Tour& tour, const Swap& swap) {
    if (swap.removed.size() != swap.added.size())
        throw PreconditionViolation("|removed| != |added|");
    std::vector<VPair> edges = tour.edges;
    for (auto [u, v] : swap.removed) {
        auto e = vpair(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e)
            throw PreconditionViolation("removed edge not in tour");
        edges.erase(it);
    }
    for (auto [u, v] : swap.added) {
        auto e = vpair(u, v);
        for (auto [a, b] : swap.removed)
            if (vpair(a, b) == e) throw PreconditionViolation("edge both removed and added");
        edges.push_back(e);
    }
    return Tour::from_edges(tour.n, std::move(edges));  // throws NotATour if invalid
}

Rat tour_weight(const WeightedGraph& g, const Tour& tour, const Rat& big_m) {
    Rat total(0);
    for (const auto& [u, v] : tour.edges) {
        auto e = g.find_edge(u, v);
        if (e)
            total += g.edges[*e].w;
        else
            total += big_m;
    }
    return total;
}

}  // namespace kadv
