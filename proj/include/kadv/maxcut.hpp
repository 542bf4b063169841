#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kadv/graph.hpp"
#include "kadv/rng.hpp"

namespace kadv {

// Deterministic given kind + seed + instance + state. Ties break toward the
// lowest move index.
struct PivotRule {
    enum Kind { first_improvement, steepest_descent, random_improvement } kind;
    uint64_t seed = 0;

    static PivotRule first() { return {first_improvement, 0}; }
    static PivotRule steepest() { return {steepest_descent, 0}; }
    static PivotRule random(uint64_t seed) { return {random_improvement, seed}; }

    std::string name() const;
};

struct FlipStep {
    int vertex;
    Rat gain;       // > 0
    Rat value;      // cut value after the flip
};

struct FlipTrace {
    Cut initial;
    Rat initial_value;
    std::vector<FlipStep> steps;
    enum Reason { local_optimum, step_limit } reason = local_optimum;

    size_t length() const { return steps.size(); }
    std::vector<int> flipped_vertices() const {
        std::vector<int> out;
        out.reserve(steps.size());
        for (const auto& s : steps) out.push_back(s.vertex);
        return out;
    }
};

// Vertices with strictly positive flip gain, sorted by vertex index.
std::vector<std::pair<int, Rat>> improving_flips(const WeightedGraph& g, const Cut& cut);

FlipTrace run_flip(const WeightedGraph& g, const Cut& start, const PivotRule& pivot,
                   long step_limit);

// CSV export: step,vertex_label,gain_num,gain_den,value_num,value_den
std::string flip_trace_csv(const WeightedGraph& g, const FlipTrace& trace);

// Transition graph over all 2^|V| cuts of a tiny instance. Node i is the cut
// whose 1-set is the bit set of i.
struct CutTransitionGraph {
    int n_vertices;  // of the Max-Cut instance
    std::vector<std::vector<uint32_t>> arcs;  // arcs[c] = improving-flip successors
    std::vector<uint32_t> sinks() const;
};

CutTransitionGraph cut_transition_graph(const WeightedGraph& g);  // guard: |V| <= 20

}  // namespace kadv
