#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kadv/graph.hpp"
#include "kadv/maxcut.hpp"
#include "kadv/tour.hpp"

namespace kadv {

// A TSP instance: construction edges plus the completion weight for all
// other vertex pairs.
struct TspInstance {
    WeightedGraph g;
    Rat big_m;

    Rat edge_weight(int u, int v) const {
        auto e = g.find_edge(u, v);
        return e ? g.edges[*e].w : big_m;
    }
};

// k-swap(k): up to k edges exchanged. two-five-swap: 2 edges, or 3 edges of
// which two removed ones are incident.
struct KSpec {
    bool two_five = false;
    int k = 2;

    static KSpec kswap(int k) { return {false, k}; }
    static KSpec twofive() { return {true, 3}; }
    std::string name() const { return two_five ? "2.5" : std::to_string(k); }
};

struct SwapCand {
    Swap swap;
    Rat delta;
};

struct EnumOptions {
    bool improving_only = true;
    // Draw added edges from the complete graph (big_m weights) instead of
    // construction edges; supported for 2-swaps and 2.5-swaps only.
    bool complete_graph = false;
};

// Complete, deterministic enumeration of the valid swaps in the class.
// Added edges come from non-tour construction edges unless complete_graph.
std::vector<SwapCand> enumerate_swaps(const TspInstance& inst, const Tour& tour,
                                      const KSpec& spec, const EnumOptions& opts = {});

inline std::vector<SwapCand> enumerate_improving_swaps(const TspInstance& inst, const Tour& tour,
                                                       const KSpec& spec) {
    return enumerate_swaps(inst, tour, spec, EnumOptions{});
}

struct SwapStep {
    Swap swap;
    Rat delta;   // < 0
    Rat weight;  // tour weight after the step
};

struct SwapTrace {
    Tour initial;
    Rat initial_weight;
    std::vector<SwapStep> steps;
    enum Reason { local_optimum, step_limit } reason = local_optimum;
    Tour final;

    size_t length() const { return steps.size(); }
};

// step_observer, when set, sees the tour after every applied step.
SwapTrace run_kopt(const TspInstance& inst, const Tour& start, const KSpec& spec,
                   const PivotRule& pivot, long step_limit,
                   const std::function<void(const Tour&, const SwapStep&)>& step_observer = {});

// All tours over construction edges (backtracking enumeration; guard ~32
// vertices) with an arc per improving move in the class.
struct TourTransitionGraph {
    std::vector<Tour> tours;                 // canonical order
    std::vector<Rat> weights;
    std::vector<std::vector<int>> arcs;      // arcs[i] = improving successors
    std::vector<int> sinks() const;
};

TourTransitionGraph tour_transition_graph(const TspInstance& inst, const KSpec& spec);

// Uniform shift making all completed-graph triangle inequalities hold:
// C = max(0, ceil(largest violation)). Swap deltas are invariant, so the
// transition graph is unchanged.
TspInstance metrize(const TspInstance& inst);
Rat metrize_shift(const TspInstance& inst);

}  // namespace kadv
