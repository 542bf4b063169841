#include "kadv/graph.hpp"

#include <deque>

namespace kadv {

Rat cut_value(const WeightedGraph& g, const Cut& cut) {
    if (cut.size() != g.vertex_count())
        throw DimensionError("cut length " + std::to_string(cut.size()) +
                             " does not match graph order " + std::to_string(g.vertex_count()));
    Rat total(0);
    for (const auto& e : g.edges)
        if (cut.one[e.u] != cut.one[e.v]) total += e.w;
    return total;
}

Rat flip_gain(const WeightedGraph& g, const Cut& cut, int v) {
    if (cut.size() != g.vertex_count()) throw DimensionError("cut/graph size mismatch");
    g.check_vertex(v);
    Rat gain(0);
    for (const auto& [u, eid] : g.adj[v]) {
        if (cut.one[u] == cut.one[v])
            gain += g.edges[eid].w;  // edge enters the cut-set
        else
            gain -= g.edges[eid].w;  // edge leaves it
    }
    return gain;
}

Cut apply_flip(const Cut& cut, int v) {
    if (v < 0 || v >= cut.size()) throw IndexError("flip vertex out of range");
    Cut out = cut;
    out.one[v] = !out.one[v];
    return out;
}

std::optional<long> girth(const WeightedGraph& g) {
    const int n = g.vertex_count();
    long best = -1;
    std::vector<int> dist(n), parent_edge(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        parent_edge[s] = -1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (best >= 0 && 2L * dist[u] >= best) continue;
            for (const auto& [v, eid] : g.adj[u]) {
                if (eid == parent_edge[u]) continue;
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent_edge[v] = eid;
                    queue.push_back(v);
                } else {
                    long c = dist[u] + dist[v] + 1;
                    if (best < 0 || c < best) best = c;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

}  // namespace kadv
