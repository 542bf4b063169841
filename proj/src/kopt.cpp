#include "kadv/kopt.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kadv {

namespace {

// One connected piece of a swap: removed tour edges + added edges forming a
// closed walk alternating tour / non-tour, each edge used once.
struct Component {
    std::vector<VPair> removed;  // sorted
    std::vector<VPair> added;    // sorted
    Rat delta;
};

struct WalkEnum {
    const TspInstance& inst;
    const Tour& tour;
    int max_removed;
    std::vector<std::vector<int>> cand;  // non-tour construction neighbors
    std::vector<Component> out;
    std::set<std::pair<std::vector<VPair>, std::vector<VPair>>> seen;

    std::vector<VPair> removed, added;
    int anchor_pos = 0;  // tour-order position of the anchor edge
    int start = 0;

    WalkEnum(const TspInstance& inst_, const Tour& tour_, int max_removed_)
        : inst(inst_), tour(tour_), max_removed(max_removed_) {
        cand.resize(tour.n);
        for (const auto& e : inst.g.edges)
            if (!tour.has_edge(e.u, e.v)) {
                cand[e.u].push_back(e.v);
                cand[e.v].push_back(e.u);
            }
        for (auto& c : cand) std::sort(c.begin(), c.end());
    }

    bool used(const std::vector<VPair>& edges, int u, int v) const {
        return std::find(edges.begin(), edges.end(), vpair(u, v)) != edges.end();
    }

    // Tour-order position of a tour edge; used to enforce the minimal-anchor
    // rule so each component is enumerated from one anchor only.
    int edge_pos(const std::vector<int>& pos, int u, int v) const {
        int pu = pos[u], pv = pos[v];
        if (pu > pv) std::swap(pu, pv);
        return (pu == 0 && pv == tour.n - 1) ? tour.n - 1 : pu;
    }

    std::vector<int> pos;  // vertex -> tour-order index

    void run() {
        auto order = tour.vertex_order();
        pos.resize(tour.n);
        for (int i = 0; i < tour.n; ++i) pos[order[i]] = i;
        for (int p = 0; p < tour.n; ++p) {
            int u = order[p], v = order[(p + 1) % tour.n];
            anchor_pos = p;
            start = u;
            removed.assign(1, vpair(u, v));
            added.clear();
            extend(v, false);
        }
    }

    // expecting_tour: next edge to traverse must be a tour edge.
    void extend(int cur, bool expecting_tour) {
        if (expecting_tour) {
            for (int nb : tour.neighbors[cur]) {
                if (used(removed, cur, nb)) continue;
                int p = edge_pos(pos, cur, nb);
                if (p <= anchor_pos) continue;  // anchor must be the minimum
                if (static_cast<int>(removed.size()) >= max_removed) continue;
                removed.push_back(vpair(cur, nb));
                extend(nb, false);
                removed.pop_back();
            }
        } else {
            for (int nb : cand[cur]) {
                if (used(added, cur, nb)) continue;
                added.push_back(vpair(cur, nb));
                if (nb == start) emit();
                extend(nb, true);
                added.pop_back();
            }
        }
    }

    void emit() {
        Component c;
        c.removed = removed;
        c.added = added;
        std::sort(c.removed.begin(), c.removed.end());
        std::sort(c.added.begin(), c.added.end());
        if (!seen.insert({c.removed, c.added}).second) return;
        c.delta = Rat(0);
        for (auto [u, v] : c.added) c.delta += inst.edge_weight(u, v);
        for (auto [u, v] : c.removed) c.delta -= inst.edge_weight(u, v);
        out.push_back(std::move(c));
    }
};

// Single-cycle check after removing E1 and adding E2, via the arc structure
// of the tour. O(|E1| log |E1|).
bool swap_keeps_single_cycle(const Tour& tour, const std::vector<int>& pos,
                             const std::vector<VPair>& removed,
                             const std::vector<VPair>& added) {
    const int m = tour.n;
    const int j = static_cast<int>(removed.size());
    std::vector<int> cut_pos;
    cut_pos.reserve(j);
    for (auto [u, v] : removed) {
        int pu = pos[u], pv = pos[v];
        if (pu > pv) std::swap(pu, pv);
        cut_pos.push_back((pu == 0 && pv == m - 1) ? m - 1 : pu);
    }
    std::sort(cut_pos.begin(), cut_pos.end());

    auto order_at = [&](int p) { return p; };  // positions already canonical
    (void)order_at;

    // Arc r spans positions [cut_pos[r]+1 .. cut_pos[r+1]]; its two ports are
    // the boundary positions.
    std::vector<int> portL(j), portR(j);
    for (int r = 0; r < j; ++r) {
        portL[r] = (cut_pos[r] + 1) % m;
        portR[r] = cut_pos[(r + 1) % j];
    }
    // port lookup: position -> list of (arc, side)
    std::map<int, std::vector<std::pair<int, int>>> ports;
    for (int r = 0; r < j; ++r) {
        ports[portL[r]].push_back({r, 0});
        ports[portR[r]].push_back({r, 1});
    }
    // Each added edge consumes one port at each endpoint.
    std::vector<std::array<int, 2>> link(j, {-1, -1});  // arc, side -> added-edge idx
    std::vector<std::array<std::pair<int, int>, 2>> ends(added.size(),
                                                          {std::pair<int, int>{-1, -1},
                                                           std::pair<int, int>{-1, -1}});
    for (size_t e = 0; e < added.size(); ++e) {
        int idx = 0;
        for (int x : {added[e].first, added[e].second}) {
            auto it = ports.find(pos[x]);
            if (it == ports.end() || it->second.empty()) return false;
            auto [arc, side] = it->second.back();
            it->second.pop_back();
            link[arc][side] = static_cast<int>(e);
            ends[e][idx++] = {arc, side};
        }
    }
    for (int r = 0; r < j; ++r)
        if (link[r][0] < 0 || link[r][1] < 0) return false;

    // Walk arcs via the added edges; a valid swap visits all j arcs once.
    int visited = 0, arc = 0, enter_side = 0;
    std::vector<char> seen(j, 0);
    while (!seen[arc]) {
        seen[arc] = 1;
        ++visited;
        int exit_side = 1 - enter_side;
        int e = link[arc][exit_side];
        const auto& pair = ends[e];
        auto [narc, nside] = pair[0] == std::make_pair(arc, exit_side) ? pair[1] : pair[0];
        arc = narc;
        enter_side = nside;
    }
    return visited == j && arc == 0 && enter_side == 0;
}

bool twofive_shape_ok(const std::vector<VPair>& removed) {
    if (removed.size() == 2) return true;
    if (removed.size() != 3) return false;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            const auto& e1 = removed[a];
            const auto& e2 = removed[b];
            if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
                e1.second == e2.second)
                return true;
        }
    return false;
}

std::vector<SwapCand> enumerate_complete_small(const TspInstance& inst, const Tour& tour,
                                               const KSpec& spec, const EnumOptions& opts) {
    // Complete-graph candidate mode: classic explicit loops for 2-swaps and
    // the single-vertex relocation 2.5-swaps.
    std::vector<SwapCand> out;
    auto order = tour.vertex_order();
    const int m = tour.n;
    auto consider = [&](Swap swap) {
        Rat delta(0);
        for (auto [u, v] : swap.added) delta += inst.edge_weight(u, v);
        for (auto [u, v] : swap.removed) delta -= inst.edge_weight(u, v);
        if (opts.improving_only && !(delta < 0)) return;
        std::sort(swap.removed.begin(), swap.removed.end());
        std::sort(swap.added.begin(), swap.added.end());
        out.push_back({std::move(swap), std::move(delta)});
    };
    // 2-swaps: pairs of non-adjacent tour edges, one reconnection each.
    for (int i = 0; i < m; ++i) {
        for (int jj = i + 2; jj < m; ++jj) {
            if (i == 0 && jj == m - 1) continue;
            int a = order[i], b = order[(i + 1) % m];
            int c = order[jj], d = order[(jj + 1) % m];
            consider({{vpair(a, b), vpair(c, d)}, {vpair(a, c), vpair(b, d)}});
        }
    }
    if (spec.two_five) {
        // Relocate vertex y between the ends of another tour edge.
        for (int i = 0; i < m; ++i) {
            int x = order[(i + m - 1) % m], y = order[i], z = order[(i + 1) % m];
            for (int jj = 0; jj < m; ++jj) {
                int a = order[jj], b = order[(jj + 1) % m];
                if (a == y || b == y || a == x || b == x || a == z || b == z) continue;
                consider({{vpair(x, y), vpair(y, z), vpair(a, b)},
                          {vpair(a, y), vpair(y, b), vpair(x, z)}});
            }
        }
    }
    return out;
}

}  // namespace

std::vector<SwapCand> enumerate_swaps(const TspInstance& inst, const Tour& tour,
                                      const KSpec& spec, const EnumOptions& opts) {
    if (opts.complete_graph) {
        if (!spec.two_five && spec.k != 2)
            throw PreconditionViolation("complete-graph enumeration supports k=2 and 2.5 only");
        auto out = enumerate_complete_small(inst, tour, spec, opts);
        std::sort(out.begin(), out.end(), [](const SwapCand& a, const SwapCand& b) {
            if (a.swap.removed.size() != b.swap.removed.size())
                return a.swap.removed.size() < b.swap.removed.size();
            if (a.swap.removed != b.swap.removed) return a.swap.removed < b.swap.removed;
            return a.swap.added < b.swap.added;
        });
        return out;
    }

    const int kmax = spec.two_five ? 3 : spec.k;
    WalkEnum walker(inst, tour, kmax);
    walker.run();
    auto& comps = walker.out;

    std::vector<int> pos(tour.n);
    auto order = tour.vertex_order();
    for (int i = 0; i < tour.n; ++i) pos[order[i]] = i;

    std::vector<SwapCand> out;
    auto push = [&](const std::vector<const Component*>& parts) {
        Swap swap;
        Rat delta(0);
        for (const auto* c : parts) {
            swap.removed.insert(swap.removed.end(), c->removed.begin(), c->removed.end());
            swap.added.insert(swap.added.end(), c->added.begin(), c->added.end());
            delta += c->delta;
        }
        if (spec.two_five && !twofive_shape_ok(swap.removed)) return;
        if (opts.improving_only && !(delta < 0)) return;
        if (!swap_keeps_single_cycle(tour, pos, swap.removed, swap.added)) return;
        std::sort(swap.removed.begin(), swap.removed.end());
        std::sort(swap.added.begin(), swap.added.end());
        out.push_back({std::move(swap), std::move(delta)});
    };

    // disjoint combinations of components with at most kmax removed edges
    std::vector<const Component*> chosen;
    std::function<void(size_t, int)> combine = [&](size_t from, int budget) {
        if (!chosen.empty()) push(chosen);
        for (size_t i = from; i < comps.size(); ++i) {
            int need = static_cast<int>(comps[i].removed.size());
            if (need > budget) continue;
            bool disjoint = true;
            for (const auto* c : chosen) {
                for (const auto& e : comps[i].removed)
                    if (std::find(c->removed.begin(), c->removed.end(), e) != c->removed.end())
                        disjoint = false;
                for (const auto& e : comps[i].added)
                    if (std::find(c->added.begin(), c->added.end(), e) != c->added.end())
                        disjoint = false;
            }
            if (!disjoint) continue;
            chosen.push_back(&comps[i]);
            combine(i + 1, budget - need);
            chosen.pop_back();
        }
    };
    combine(0, kmax);

    std::sort(out.begin(), out.end(), [](const SwapCand& a, const SwapCand& b) {
        if (a.swap.removed.size() != b.swap.removed.size())
            return a.swap.removed.size() < b.swap.removed.size();
        if (a.swap.removed != b.swap.removed) return a.swap.removed < b.swap.removed;
        return a.swap.added < b.swap.added;
    });
    // a multi-cycle difference connected through shared vertices is found
    // both as one walk and as a combination; keep one copy
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SwapCand& a, const SwapCand& b) {
                              return a.swap.removed == b.swap.removed &&
                                     a.swap.added == b.swap.added;
                          }),
              out.end());
    return out;
}

SwapTrace run_kopt(const TspInstance& inst, const Tour& start, const KSpec& spec,
                   const PivotRule& pivot, long step_limit,
                   const std::function<void(const Tour&, const SwapStep&)>& step_observer) {
    if (step_limit < 0) throw PreconditionViolation("negative step limit");
    SwapTrace trace;
    trace.initial = start;
    trace.initial_weight = tour_weight(inst.g, start, inst.big_m);
    Tour tour = start;
    Rat weight = trace.initial_weight;
    Rng rng(pivot.seed);

    for (long step = 0; step < step_limit; ++step) {
        auto cands = enumerate_swaps(inst, tour, spec, EnumOptions{});
        if (cands.empty()) {
            trace.reason = SwapTrace::local_optimum;
            trace.final = std::move(tour);
            return trace;
        }
        size_t chosen = 0;
        switch (pivot.kind) {
            case PivotRule::first_improvement:
                chosen = 0;
                break;
            case PivotRule::steepest_descent:
                for (size_t i = 1; i < cands.size(); ++i)
                    if (cands[i].delta < cands[chosen].delta) chosen = i;
                break;
            case PivotRule::random_improvement:
                chosen = rng.below(cands.size());
                break;
        }
        tour = apply_swap(tour, cands[chosen].swap);
        weight += cands[chosen].delta;
        trace.steps.push_back({cands[chosen].swap, cands[chosen].delta, weight});
        if (step_observer) step_observer(tour, trace.steps.back());
    }
    trace.reason = SwapTrace::step_limit;
    trace.final = std::move(tour);
    return trace;
}

namespace {

void hamiltonian_cycles(const WeightedGraph& g, std::vector<Tour>& out) {
    const int n = g.vertex_count();
    if (n > 34) throw TooLarge("tour enumeration guard: " + std::to_string(n) + " vertices");
    std::vector<int> path{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    std::function<void()> rec = [&]() {
        int cur = path.back();
        if (static_cast<int>(path.size()) == n) {
            if (g.has_edge(cur, 0) && path[1] < path.back())  // fix orientation
                out.push_back(Tour::from_order(path));
            return;
        }
        for (const auto& [nb, eid] : g.adj[cur]) {
            (void)eid;
            if (used[nb]) continue;
            used[nb] = 1;
            path.push_back(nb);
            rec();
            path.pop_back();
            used[nb] = 0;
        }
    };
    rec();
}

}  // namespace

std::vector<int> TourTransitionGraph::sinks() const {
    std::vector<int> out;
    for (size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].empty()) out.push_back(static_cast<int>(i));
    return out;
}

TourTransitionGraph tour_transition_graph(const TspInstance& inst, const KSpec& spec) {
    TourTransitionGraph t;
    hamiltonian_cycles(inst.g, t.tours);
    std::sort(t.tours.begin(), t.tours.end(),
              [](const Tour& a, const Tour& b) { return a.edges < b.edges; });
    t.weights.reserve(t.tours.size());
    for (const auto& tour : t.tours) t.weights.push_back(tour_weight(inst.g, tour, inst.big_m));
    t.arcs.resize(t.tours.size());
    for (size_t i = 0; i < t.tours.size(); ++i) {
        for (size_t j = 0; j < t.tours.size(); ++j) {
            if (i == j || !(t.weights[j] < t.weights[i])) continue;
            std::vector<VPair> removed;
            std::set_difference(t.tours[i].edges.begin(), t.tours[i].edges.end(),
                                t.tours[j].edges.begin(), t.tours[j].edges.end(),
                                std::back_inserter(removed));
            if (static_cast<int>(removed.size()) > (spec.two_five ? 3 : spec.k)) continue;
            if (spec.two_five && !twofive_shape_ok(removed)) continue;
            t.arcs[i].push_back(static_cast<int>(j));
        }
    }
    return t;
}

Rat metrize_shift(const TspInstance& inst) {
    const auto& g = inst.g;
    const int n = g.vertex_count();
    if (n < 3) return Rat(0);
    Rat best(0);
    bool have = false;
    auto update = [&](const Rat& v) {
        if (!have || v > best) {
            best = v;
            have = true;
        }
    };
    if (n <= 120) {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    if (z == x || z == y) continue;
                    update(inst.edge_weight(x, y) - inst.edge_weight(x, z) -
                           inst.edge_weight(z, y));
                }
    } else {
        // Wedge scan; valid when big_m dominates all construction weights.
        for (const auto& e : g.edges)
            if (rat_abs(e.w) >= inst.big_m)
                throw PreconditionViolation("metrize: completion weight does not dominate");
        for (int z = 0; z < n; ++z) {
            for (const auto& [x, ex] : g.adj[z]) {
                for (const auto& [y, ey] : g.adj[z]) {
                    if (x >= y) continue;
                    Rat xy = inst.edge_weight(x, y);
                    update(xy - g.edges[ex].w - g.edges[ey].w);
                }
            }
        }
        // completed wedge through a non-adjacent intermediate: M - M - w(zy)
        for (const auto& e : g.edges) {
            if (!(e.w < 0)) continue;
            long long excluded = 2 + g.adj[e.u].size() + g.adj[e.v].size();
            bool exists = excluded < n;
            if (!exists) {
                for (int x = 0; x < n && !exists; ++x)
                    exists = x != e.u && x != e.v && !g.has_edge(x, e.u) && !g.has_edge(x, e.v);
            }
            if (exists) update(-e.w);
        }
    }
    if (!have || best <= 0) return Rat(0);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), best.get_num().get_mpz_t(), best.get_den().get_mpz_t());
    return Rat(c);
}

TspInstance metrize(const TspInstance& inst) {
    Rat c = metrize_shift(inst);
    TspInstance out = inst;
    for (auto& e : out.g.edges) e.w += c;
    out.big_m += c;
    return out;
}

}  // namespace kadv
