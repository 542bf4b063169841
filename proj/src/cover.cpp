#include "kadv/cover.hpp"

#include <set>

namespace kadv {

std::vector<std::string> validate_cover(const WeightedGraph& g, const PathCover& cover) {
    std::vector<std::string> bad;
    std::vector<int> path_count(g.vertex_count(), 0);
    std::set<std::pair<int, int>> seen_edges;

    auto name = [&](int v) { return g.labels[v]; };

    for (size_t pi = 0; pi < cover.size(); ++pi) {
        const auto& path = cover[pi];
        std::string tag = "path #" + std::to_string(pi);
        if (path.empty()) {
            bad.push_back(tag + " is empty");
            continue;
        }
        if (path.size() > 3) bad.push_back(tag + " has length > 2");
        std::set<int> verts(path.begin(), path.end());
        if (verts.size() != path.size()) bad.push_back(tag + " repeats a vertex");
        for (int v : path) {
            if (v < 0 || v >= g.vertex_count()) {
                bad.push_back(tag + " has an out-of-range vertex");
                continue;
            }
            ++path_count[v];
        }
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            int u = path[i], v = path[i + 1];
            if (!g.has_edge(u, v)) {
                bad.push_back(tag + " uses non-edge " + name(u) + "-" + name(v));
                continue;
            }
            auto key = std::minmax(u, v);
            if (!seen_edges.insert(key).second)
                bad.push_back("edge " + name(u) + "-" + name(v) + " covered more than once");
        }
    }
    for (const auto& e : g.edges) {
        if (!seen_edges.count({e.u, e.v}))
            bad.push_back("edge " + name(e.u) + "-" + name(e.v) + " not covered");
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (path_count[v] != 2)
            bad.push_back("vertex " + name(v) + " lies in " + std::to_string(path_count[v]) +
                          " paths (want 2)");
    }
    return bad;
}

}  // namespace kadv
