#include "kadv/maxcut.hpp"

#include <sstream>

namespace kadv {

std::string PivotRule::name() const {
    switch (kind) {
        case first_improvement: return "first";
        case steepest_descent: return "steepest";
        case random_improvement: return "random(" + std::to_string(seed) + ")";
    }
    return "?";
}

std::vector<std::pair<int, Rat>> improving_flips(const WeightedGraph& g, const Cut& cut) {
    std::vector<std::pair<int, Rat>> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        Rat gain = flip_gain(g, cut, v);
        if (gain > 0) out.emplace_back(v, std::move(gain));
    }
    return out;
}

FlipTrace run_flip(const WeightedGraph& g, const Cut& start, const PivotRule& pivot,
                   long step_limit) {
    if (step_limit < 0) throw PreconditionViolation("negative step limit");
    if (start.size() != g.vertex_count()) throw DimensionError("cut/graph size mismatch");

    FlipTrace trace;
    trace.initial = start;
    trace.initial_value = cut_value(g, start);

    Cut cut = start;
    Rat value = trace.initial_value;
    Rng rng(pivot.seed);

    // Cached per-vertex gains, updated on neighbor flips.
    std::vector<Rat> gain(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) gain[v] = flip_gain(g, cut, v);

    for (long step = 0; step < step_limit; ++step) {
        int chosen = -1;
        switch (pivot.kind) {
            case PivotRule::first_improvement: {
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (gain[v] > 0) {
                        chosen = v;
                        break;
                    }
                break;
            }
            case PivotRule::steepest_descent: {
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (gain[v] > 0 && (chosen < 0 || gain[v] > gain[chosen])) chosen = v;
                break;
            }
            case PivotRule::random_improvement: {
                std::vector<int> cand;
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (gain[v] > 0) cand.push_back(v);
                if (!cand.empty()) chosen = cand[rng.below(cand.size())];
                break;
            }
        }
        if (chosen < 0) {
            trace.reason = FlipTrace::local_optimum;
            return trace;
        }
        value += gain[chosen];
        trace.steps.push_back({chosen, gain[chosen], value});
        cut.one[chosen] = !cut.one[chosen];
        gain[chosen] = -gain[chosen];
        for (const auto& [u, eid] : g.adj[chosen]) {
            // edge u-chosen switched cut-set membership
            if (cut.one[u] == cut.one[chosen])
                gain[u] += 2 * g.edges[eid].w;
            else
                gain[u] -= 2 * g.edges[eid].w;
        }
    }
    trace.reason = FlipTrace::step_limit;
    return trace;
}

std::string flip_trace_csv(const WeightedGraph& g, const FlipTrace& trace) {
    std::ostringstream out;
    out << "step,vertex_label,gain_num,gain_den,value_num,value_den\n";
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        out << i << ',' << g.labels[s.vertex] << ',' << num_str(s.gain) << ','
            << den_str(s.gain) << ',' << num_str(s.value) << ',' << den_str(s.value) << '\n';
    }
    return out.str();
}

std::vector<uint32_t> CutTransitionGraph::sinks() const {
    std::vector<uint32_t> out;
    for (uint32_t c = 0; c < arcs.size(); ++c)
        if (arcs[c].empty()) out.push_back(c);
    return out;
}

CutTransitionGraph cut_transition_graph(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n > 20) throw TooLarge("transition graph limited to 20 vertices, got " +
                               std::to_string(n));
    CutTransitionGraph t;
    t.n_vertices = n;
    t.arcs.resize(1u << n);
    Cut cut = Cut::all_two(n);
    for (uint32_t c = 0; c < (1u << n); ++c) {
        for (int v = 0; v < n; ++v) cut.one[v] = (c >> v) & 1;
        for (int v = 0; v < n; ++v)
            if (flip_gain(g, cut, v) > 0) t.arcs[c].push_back(c ^ (1u << v));
    }
    return t;
}

}  // namespace kadv
