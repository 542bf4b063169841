#include "kadv/reduction.hpp"

#include <numeric>

namespace kadv {

bool is_subtour_mask(const Gadget& g, uint32_t mask) {
    std::vector<int> deg(g.vertex_count(), 0);
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask & (1u << e))) continue;
        int u = g.edges[e].u, v = g.edges[e].v;
        if (++deg[u] > 2 || ++deg[v] > 2) return false;
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (g.roles[x] == VRole::internal && deg[x] != 2) return false;
        if (g.roles[x] == VRole::pp && deg[x] != 1) return false;
    }
    return true;
}

namespace {

Gadget vertex_gadget_for_k(int k) {
    if (k == 3) return make_vertex_gadget(VertexGadgetSpec::make_stick());
    if (k == 4) return make_vertex_gadget(VertexGadgetSpec::make_buoy());
    return make_vertex_gadget(VertexGadgetSpec::make_xor(k - 2));
}

}  // namespace

Reduction build_reduction(const WeightedGraph& h, const PathCover& cover, int k,
                          const BuildOptions& opts) {
    if (k < 3) throw PreconditionViolation("k must be 3, 4, or >= 5");
    auto violations = validate_cover(h, cover);
    if (!violations.empty()) throw CoverInvalid("invalid cover: " + violations.front());
    if (opts.enforce_girth && (k == 3 || k == 4)) {
        auto g = girth(h);
        if (g && *g <= 4L * k)
            throw GirthTooSmall("girth " + std::to_string(*g) + " <= 4k = " +
                                std::to_string(4 * k));
    }

    Reduction red;
    red.h = h;
    red.cover = cover;
    red.k = k;

    const int nh = h.vertex_count();
    const int npaths = static_cast<int>(cover.size());

    // Vertex gadgets own their vertices, including the PV-portals.
    red.attachments.assign(nh, {std::pair<int, int>{-1, -1}, std::pair<int, int>{-1, -1}});
    for (int v = 0; v < nh; ++v) {
        PlacedGadget pg;
        pg.proto = vertex_gadget_for_k(k);
        pg.h_entity = v;
        pg.global.resize(pg.proto.vertex_count());
        for (int x = 0; x < pg.proto.vertex_count(); ++x)
            pg.global[x] = red.tsp.add_vertex(h.labels[v] + "." + pg.proto.vnames[x]);
        red.gadgets.push_back(std::move(pg));
    }

    // Attach sides in cover order: first occurrence of an H-vertex takes the
    // 1-side, the second the 2-side.
    red.labels.resize(npaths);
    for (int pi = 0; pi < npaths; ++pi) {
        const auto& path = cover[pi];
        red.labels[pi].resize(path.size());
        for (size_t i = 0; i < path.size(); ++i) {
            int v = path[i];
            int slot = red.attachments[v][0].first < 0 ? 0 : 1;
            if (slot == 1 && red.attachments[v][1].first >= 0)
                throw CoverInvalid("vertex " + h.labels[v] + " in more than two paths");
            red.attachments[v][slot] = {pi, static_cast<int>(i)};
            red.labels[pi][i] = slot + 1;
        }
    }
    for (int v = 0; v < nh; ++v)
        if (red.attachments[v][1].first < 0)
            throw CoverInvalid("vertex " + h.labels[v] + " attached fewer than twice");

    // One PP vertex per adjacent pair in the cyclic order: pp[j] is shared by
    // path j (as Z) and path j+1 (as Zb).
    std::vector<int> pp(npaths);
    for (int j = 0; j < npaths; ++j) pp[j] = red.tsp.add_vertex("PP" + std::to_string(j));

    for (int pi = 0; pi < npaths; ++pi) {
        const auto& path = cover[pi];
        const int t = static_cast<int>(path.size());
        std::vector<Rat> sigma, delta;
        for (int i = 0; i + 1 < t; ++i) {
            Rat w = h.weight(path[i], path[i + 1]);
            if (red.labels[pi][i] == red.labels[pi][i + 1]) {
                sigma.push_back(rat(0));
                delta.push_back(-w);
            } else {
                sigma.push_back(-w);
                delta.push_back(rat(0));
            }
        }
        PlacedGadget pg;
        pg.proto = make_path_gadget(t, std::move(sigma), std::move(delta));
        pg.h_entity = pi;
        pg.global.assign(pg.proto.vertex_count(), -1);
        // PP-portals
        pg.global[0] = pp[pi];                          // Z
        pg.global[1] = pp[(pi + npaths - 1) % npaths];  // Zb
        // PV-portals identify with the vertex gadget's side portals
        for (int i = 0; i < t; ++i) {
            const auto& beta = red.gadgets[path[i]];
            const auto& side = beta.proto.sides[red.labels[pi][i] - 1];
            pg.global[pg.proto.sides[i].x] = beta.global[side.x];
            pg.global[pg.proto.sides[i].xbar] = beta.global[side.xbar];
        }
        // internal vertices are fresh
        for (int x = 0; x < pg.proto.vertex_count(); ++x)
            if (pg.global[x] < 0)
                pg.global[x] =
                    red.tsp.add_vertex("P" + std::to_string(pi) + "." + pg.proto.vnames[x]);
        red.gadgets.push_back(std::move(pg));
    }

    // Assemble edges; add_edge rejects loops and parallel edges, which is the
    // simplicity check for the portal identifications.
    for (const auto& pg : red.gadgets) {
        for (const auto& e : pg.proto.edges) {
            try {
                red.tsp.add_edge(pg.global[e.u], pg.global[e.v], e.w);
            } catch (const PreconditionViolation& ex) {
                throw AssemblyFailed(std::string("identification collision: ") + ex.what());
            }
        }
    }

    red.big_m = rat(1);
    for (const auto& e : red.tsp.edges) red.big_m += rat_abs(e.w);
    return red;
}

Tour standard_tour_from_cut(const Reduction& red, const Cut& cut) {
    if (cut.size() != red.h.vertex_count()) throw DimensionError("cut/instance size mismatch");
    std::vector<VPair> edges;
    auto add_mask = [&](const PlacedGadget& pg, uint32_t mask) {
        for (int e = 0; e < pg.proto.edge_count(); ++e)
            if (mask & (1u << e))
                edges.push_back(vpair(pg.global[pg.proto.edges[e].u],
                                      pg.global[pg.proto.edges[e].v]));
    };
    const int nh = red.h.vertex_count();
    for (int v = 0; v < nh; ++v) {
        const auto& pg = red.gadgets[v];
        auto label = cut.in_one(v) ? SubtourLabel::odd_label() : SubtourLabel::even_label();
        add_mask(pg, pg.proto.standard_subtour(label).mask);
    }
    for (size_t pi = 0; pi < red.cover.size(); ++pi) {
        const auto& pg = red.gadgets[red.path_gadget(static_cast<int>(pi))];
        std::vector<int> s(red.cover[pi].size());
        for (size_t i = 0; i < s.size(); ++i) {
            int v = red.cover[pi][i];
            int lpar = red.labels[pi][i] % 2;
            s[i] = cut.in_one(v) ? lpar : 1 - lpar;
        }
        add_mask(pg, pg.proto.standard_subtour(SubtourLabel::bits(s)).mask);
    }
    return Tour::from_edges(red.tsp.vertex_count(), std::move(edges));
}

StandardCheck is_standard(const Reduction& red, const Tour& tour) {
    StandardCheck out;
    const int nh = red.h.vertex_count();
    out.view.vertex_odd.assign(nh, 0);
    out.view.path_label.resize(red.cover.size());

    // Path gadgets first: their side degrees decide everything.
    for (size_t pi = 0; pi < red.cover.size(); ++pi) {
        int gi = red.path_gadget(static_cast<int>(pi));
        const auto& pg = red.gadgets[gi];
        uint32_t mask = pg.tour_mask(tour);
        auto label = pg.proto.classify_mask(mask);
        if (!label || label->parity || !is_subtour_mask(pg.proto, mask)) {
            out.witness = gi;
            return out;
        }
        out.view.path_label[pi] = label->s;
    }
    // Vertex gadgets: the induced mask must be one of the two standard
    // underlying paths; the engaged side comes from the attached path gadgets
    // and must be consistent between the two (the stipulation for coinciding
    // odd/even underlying paths).
    for (int v = 0; v < nh; ++v) {
        const auto& pg = red.gadgets[v];
        uint32_t mask = pg.tour_mask(tour);
        bool cataloged = false;
        for (const auto& entry : pg.proto.catalog) cataloged |= entry.mask == mask;
        if (!cataloged) {
            out.witness = v;
            return out;
        }
        char parity[2];
        for (int a = 0; a < 2; ++a) {
            auto [pi, i] = red.attachments[v][a];
            int s = out.view.path_label[pi][i];
            parity[a] = (s == red.labels[pi][i] % 2) ? 1 : 0;
        }
        if (parity[0] != parity[1]) {
            out.witness = v;  // the two related path gadgets disagree
            return out;
        }
        // When the two standard underlying paths are distinct, the induced
        // mask itself must match the engaged side.
        auto label = parity[0] ? SubtourLabel::odd_label() : SubtourLabel::even_label();
        if (pg.proto.standard_subtour(label).mask != mask) {
            out.witness = v;
            return out;
        }
        out.view.vertex_odd[v] = parity[0];
    }
    out.standard = true;
    return out;
}

Cut cut_from_standard_tour(const Reduction& red, const Tour& tour) {
    auto check = is_standard(red, tour);
    if (!check.standard)
        throw NotStandard("tour is not standard (gadget " + std::to_string(check.witness) + ")",
                          check.witness);
    Cut cut = Cut::all_two(red.h.vertex_count());
    for (int v = 0; v < red.h.vertex_count(); ++v) cut.one[v] = check.view.vertex_odd[v];
    return cut;
}

}  // namespace kadv
