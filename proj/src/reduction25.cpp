#include "kadv/reduction25.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kadv {

uint32_t gadget_mask_in(const PlacedGadget& pg, const EdgeSet& es) {
    uint32_t mask = 0;
    for (int e = 0; e < pg.proto.edge_count(); ++e)
        if (es.has(pg.global[pg.proto.edges[e].u], pg.global[pg.proto.edges[e].v]))
            mask |= (1u << e);
    return mask;
}

namespace {

std::vector<char> regular_nodes(const MSInstance& ms) {
    std::vector<char> reg(ms.graph.vertex_count(), 0);
    for (long i = 1; i <= ms.n; ++i) {
        reg[ms.vertex(ms_vname(i - 1, 1))] = 1;
        for (long j = 2; j <= 7; ++j) reg[ms.vertex(ms_vname(i, j))] = 1;
    }
    return reg;
}

}  // namespace

std::vector<StarSequence> build_star_sequences(const MSInstance& ms) {
    if (!ms.prime) throw PreconditionViolation("star sequences need the subdivided family");
    const long n = ms.n, p = ms.p;
    auto id = [&](const std::string& s) { return ms.vertex(s); };
    auto reg = regular_nodes(ms);

    std::vector<StarSequence> seqs;
    auto add = [&](std::vector<int> verts) {
        seqs.push_back({std::move(verts), {}, GadgetKind::star1});
    };

    for (long i = 1; i <= n; ++i)
        add({id(ms_vname(i - 1, 8)), id(ms_vname(i, 3)), id(ms_vname(i, 5)), id(ms_vname(i, 7))});
    for (long i = 1; i <= n; ++i)
        add({id(ms_vname(i - 1, 1)), id(ms_uname(i, 2, 1, p - 1)), id(ms_uname(i, 6, 1, p - 1))});
    for (long i = 2; i <= n; ++i)
        add({id(ms_vname(i - 1, 1)), id(ms_uname(i - 1, 1, 2, 1)), id(ms_uname(i, 4, 1, p - 1))});
    for (long i = 1; i <= n; ++i)
        for (long j : {2L, 4L, 6L})
            add({id(ms_vname(i, j)), id(ms_uname(i, j, 1, 1)), id(ms_uname(i, j - 1, j, p - 1))});
    for (long i = 1; i <= n; ++i)
        for (long j : {3L, 5L, 7L})
            add({id(ms_vname(i, j)), id(ms_uname(i, j, j + 1, 1)), id(ms_subname(i, j))});
    add({id(ms_vname(0, 1)), id(ms_uname(0, 1, 8, 1)), id(ms_uname(1, 4, 1, p - 1))});

    // catch-all 2-sequences for the edges not in any star above
    std::set<std::pair<int, int>> covered;
    for (const auto& s : seqs)
        for (size_t i = 1; i < s.verts.size(); ++i)
            covered.insert(std::minmax(s.verts[0], s.verts[i]));
    std::vector<std::pair<int, int>> rest;
    for (const auto& e : ms.graph.edges)
        if (!covered.count({e.u, e.v})) rest.emplace_back(e.u, e.v);
    std::sort(rest.begin(), rest.end());
    for (auto [u, v] : rest) {
        // the irregular endpoint takes the first (irregular-side) position
        if (reg[u] && reg[v]) throw AssemblyFailed("catch-all edge between two regular nodes");
        if (reg[u]) std::swap(u, v);
        add({u, v});
    }

    add({id(ms_vname(n, 8))});
    add({id("v'2")});

    for (auto& s : seqs) {
        switch (s.verts.size()) {
            case 1: s.kind = GadgetKind::star1; break;
            case 2:
                s.kind = (!reg[s.verts[0]] && !reg[s.verts[1]]) ? GadgetKind::star2_ii
                                                                : GadgetKind::star2_ir;
                break;
            case 3: s.kind = GadgetKind::star3; break;
            default: s.kind = GadgetKind::star4; break;
        }
    }

    // every H-vertex in exactly two sequences, every H-edge in exactly one star
    std::vector<int> occ_count(ms.graph.vertex_count(), 0);
    for (const auto& s : seqs)
        for (int v : s.verts) ++occ_count[v];
    for (int v = 0; v < ms.graph.vertex_count(); ++v)
        if (occ_count[v] != 2)
            throw AssemblyFailed("vertex " + ms.graph.labels[v] + " is in " +
                                 std::to_string(occ_count[v]) + " sequences");
    size_t star_edges = 0;
    for (const auto& s : seqs) star_edges += s.verts.size() - 1;
    if (star_edges != ms.graph.edges.size())
        throw AssemblyFailed("stars do not partition the edge set");

    // labels: (0,0,0,0) for length-4 sequences, then a deterministic sweep
    // assigning the complement of an already-labeled occurrence, else 0
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (size_t si = 0; si < seqs.size(); ++si)
        for (size_t i = 0; i < seqs[si].verts.size(); ++i)
            occ[seqs[si].verts[i]].emplace_back(static_cast<int>(si), static_cast<int>(i));

    for (auto& s : seqs) s.label.assign(s.verts.size(), -1);
    for (auto& s : seqs)
        if (s.verts.size() == 4) s.label.assign(4, 0);
    for (size_t si = 0; si < seqs.size(); ++si) {
        for (size_t i = 0; i < seqs[si].verts.size(); ++i) {
            if (seqs[si].label[i] >= 0) continue;
            int other = -1;
            for (auto [osi, oi] : occ[seqs[si].verts[i]])
                if (!(osi == static_cast<int>(si) && oi == static_cast<int>(i)))
                    other = seqs[osi].label[oi];
            seqs[si].label[i] = other >= 0 ? 1 - other : 0;
        }
    }
    for (auto& [v, positions] : occ) {
        int sum = 0;
        for (auto [si, i] : positions) sum += seqs[si].label[i];
        if (sum != 1) throw AssemblyFailed("labels of " + ms.graph.labels[v] + " are not {0,1}");
    }
    return seqs;
}

Reduction25 build_reduction_25(long n, long p) {
    if (p < 7) throw PreconditionViolation("the 2.5 construction needs p >= 7");
    Reduction25 red;
    red.ms = build_h_prime_np(n, p);
    // n * eps_tilde must stay below the minimum positive flip gain; all
    // weights are integer multiples of eps, so that minimum is eps itself.
    red.eps_tilde = red.ms.eps * rat_pow2(-n);
    if (!(Rat(n) * red.eps_tilde < red.ms.eps))
        throw AssemblyFailed("eps_tilde too large for the flip-gain quantum");
    red.sequences = build_star_sequences(red.ms);
    red.node_regular = regular_nodes(red.ms);

    const auto& h = red.ms.graph;
    const int nh = h.vertex_count();
    red.occ.assign(nh, {std::pair<int, int>{-1, -1}, std::pair<int, int>{-1, -1}});
    for (size_t si = 0; si < red.sequences.size(); ++si) {
        const auto& s = red.sequences[si];
        for (size_t i = 0; i < s.verts.size(); ++i) {
            auto& slot = red.occ[s.verts[i]][s.label[i]];
            if (slot.first >= 0) throw AssemblyFailed("duplicate label occurrence");
            slot = {static_cast<int>(si), static_cast<int>(i)};
        }
    }

    // node gadgets own the PV-portal vertices
    for (int v = 0; v < nh; ++v) {
        PlacedGadget pg;
        pg.proto = make_node_gadget(red.node_regular[v]);
        pg.h_entity = v;
        pg.global.resize(pg.proto.vertex_count());
        for (int x = 0; x < pg.proto.vertex_count(); ++x)
            pg.global[x] = red.tsp.add_vertex(h.labels[v] + "." + pg.proto.vnames[x]);
        red.node_gadgets.push_back(std::move(pg));
    }

    // star gadgets: PV-portals identify with node-gadget portals
    for (size_t si = 0; si < red.sequences.size(); ++si) {
        const auto& s = red.sequences[si];
        const int t = static_cast<int>(s.verts.size());
        std::vector<Rat> sigma, delta;
        std::optional<Rat> et;
        if (s.kind == GadgetKind::star4) {
            et = red.eps_tilde;
        } else {
            for (int i = 1; i < t; ++i) {
                Rat w = h.weight(s.verts[0], s.verts[i]);
                if (s.label[0] == s.label[i]) {
                    sigma.push_back(rat(0));
                    delta.push_back(-w);
                } else {
                    sigma.push_back(-w);
                    delta.push_back(rat(0));
                }
            }
        }
        PlacedGadget pg;
        pg.proto = make_star_gadget(s.kind, std::move(sigma), std::move(delta), et);
        pg.h_entity = static_cast<int>(si);
        pg.global.assign(pg.proto.vertex_count(), -1);
        for (int i = 0; i < t; ++i) {
            const auto& nu = red.node_gadgets[s.verts[i]];
            const auto& side = pg.proto.sides[i];
            if (red.node_regular[s.verts[i]]) {
                if (!side.regular())
                    throw AssemblyFailed("irregular side attached to a regular node");
                pg.global[side.x] = nu.global[0];
            } else {
                if (side.regular())
                    throw AssemblyFailed("regular side attached to an irregular node");
                pg.global[side.x] = nu.global[nu.proto.sides[0].x];
                pg.global[side.xbar] = nu.global[nu.proto.sides[0].xbar];
            }
        }
        for (int x = 0; x < pg.proto.vertex_count(); ++x)
            if (pg.global[x] < 0 && pg.proto.roles[x] == VRole::internal)
                pg.global[x] =
                    red.tsp.add_vertex("S" + std::to_string(si) + "." + pg.proto.vnames[x]);
        red.star_gadgets.push_back(std::move(pg));
    }

    // PP identification along the pairing sequence
    std::vector<int> e_n;
    e_n.push_back(red.ms.vertex("v'2"));
    e_n.push_back(red.ms.vertex(ms_vname(0, 8)));
    for (long i = 1; i <= n; ++i)
        for (long j : {2L, 8L, 6L, 4L}) e_n.push_back(red.ms.vertex(ms_vname(i, j)));

    std::map<int, int> pp_gadget_of;  // pairing vertex -> star gadget with a PP-portal
    for (size_t si = 0; si < red.sequences.size(); ++si) {
        if (red.star_gadgets[si].proto.pp.empty()) continue;
        int found = -1;
        for (int v : red.sequences[si].verts)
            if (std::find(e_n.begin(), e_n.end(), v) != e_n.end()) {
                if (found >= 0) throw AssemblyFailed("two pairing vertices in one sequence");
                found = v;
            }
        if (found < 0) throw AssemblyFailed("PP-portal gadget without a pairing vertex");
        if (pp_gadget_of.count(found))
            throw AssemblyFailed("two PP-portal gadgets for one pairing vertex");
        pp_gadget_of[found] = static_cast<int>(si);
    }
    if (pp_gadget_of.size() != e_n.size())
        throw AssemblyFailed("PP-portal count does not match the pairing sequence");
    for (size_t idx = 0; idx + 1 < e_n.size(); idx += 2) {
        int g1 = pp_gadget_of.at(e_n[idx]);
        int g2 = pp_gadget_of.at(e_n[idx + 1]);
        int shared = red.tsp.add_vertex("PP" + std::to_string(idx / 2));
        red.star_gadgets[g1].global[red.star_gadgets[g1].proto.pp[0]] = shared;
        red.star_gadgets[g2].global[red.star_gadgets[g2].proto.pp[0]] = shared;
        red.pp_pairs.emplace_back(g1, g2);
    }

    for (const auto& pg : red.node_gadgets)
        for (const auto& e : pg.proto.edges) red.tsp.add_edge(pg.global[e.u], pg.global[e.v], e.w);
    for (const auto& pg : red.star_gadgets) {
        for (int x = 0; x < pg.proto.vertex_count(); ++x)
            if (pg.global[x] < 0) throw AssemblyFailed("unassigned gadget vertex");
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

Standard25Check is_standard_25(const Reduction25& red, const EdgeSet& edges) {
    Standard25Check out;
    const int nstars = static_cast<int>(red.star_gadgets.size());
    out.view.star_label.resize(nstars);
    for (int si = 0; si < nstars; ++si) {
        const auto& pg = red.star_gadgets[si];
        uint32_t mask = gadget_mask_in(pg, edges);
        auto label = pg.proto.classify_mask(mask);
        if (!label || !is_subtour_mask(pg.proto, mask)) {
            out.witness = si;
            return out;
        }
        out.view.star_label[si] = label->s;
    }
    // irregular node gadgets must be fully traversed
    for (const auto& pg : red.node_gadgets)
        for (const auto& e : pg.proto.edges)
            if (!edges.has(pg.global[e.u], pg.global[e.v])) {
                out.witness = nstars + pg.h_entity;
                return out;
            }
    // cross-gadget condition: the two labels of every H-vertex differ
    for (int v = 0; v < red.ms.graph.vertex_count(); ++v) {
        auto [s0, i0] = red.occ[v][0];
        auto [s1, i1] = red.occ[v][1];
        if (out.view.star_label[s0][i0] == out.view.star_label[s1][i1]) {
            out.witness = nstars + v;
            return out;
        }
    }
    out.standard = true;
    return out;
}

Cut phi(const Reduction25& red, const Tour& tour) {
    auto check = is_standard_25(red, tour);
    if (!check.standard)
        throw NotStandard("tour is not standard (witness " + std::to_string(check.witness) + ")",
                          check.witness);
    Cut cut = Cut::all_two(red.ms.graph.vertex_count());
    for (int v = 0; v < red.ms.graph.vertex_count(); ++v) {
        auto [s0, i0] = red.occ[v][0];
        cut.one[v] = check.view.star_label[s0][i0] == 1;
    }
    return cut;
}

Tour standard_tour_from_cut_25(const Reduction25& red, const Cut& cut) {
    if (cut.size() != red.ms.graph.vertex_count())
        throw DimensionError("cut/instance size mismatch");
    std::vector<VPair> edges;
    auto add_mask = [&](const PlacedGadget& pg, uint32_t mask) {
        for (int e = 0; e < pg.proto.edge_count(); ++e)
            if (mask & (1u << e))
                edges.push_back(
                    vpair(pg.global[pg.proto.edges[e].u], pg.global[pg.proto.edges[e].v]));
    };
    for (const auto& pg : red.node_gadgets)
        if (pg.proto.kind == GadgetKind::node_irregular)
            add_mask(pg, pg.proto.catalog.front().mask);
    for (size_t si = 0; si < red.sequences.size(); ++si) {
        const auto& s = red.sequences[si];
        std::vector<int> bits(s.verts.size());
        for (size_t i = 0; i < s.verts.size(); ++i)
            bits[i] = (cut.in_one(s.verts[i]) ? 1 : 0) ^ s.label[i];
        const auto& entry = red.star_gadgets[si].proto.standard_subtour(SubtourLabel::bits(bits));
        add_mask(red.star_gadgets[si], entry.mask);
    }
    try {
        return Tour::from_edges(red.tsp.vertex_count(), std::move(edges));
    } catch (const NotATour& ex) {
        throw AssemblyFailed(std::string("assembled subtours do not close a tour: ") + ex.what());
    }
}

Tour initial_tour_tau0(const Reduction25& red) {
    return standard_tour_from_cut_25(red, red.ms.initial_cut);
}

}  // namespace kadv
