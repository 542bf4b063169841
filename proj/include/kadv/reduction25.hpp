#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kadv/ms_family.hpp"
#include "kadv/reduction.hpp"

namespace kadv {

// A star of 1..4 H-vertices centered at the first one, with its binary label.
struct StarSequence {
    std::vector<int> verts;
    std::vector<int> label;
    GadgetKind kind;
};

// Sorted edge-set view, so standardness can be checked on arbitrary
// subgraphs, not only validated tours.
struct EdgeSet {
    std::vector<VPair> edges;  // sorted

    static EdgeSet of(std::vector<VPair> e) {
        std::sort(e.begin(), e.end());
        return {std::move(e)};
    }
    static EdgeSet of(const Tour& t) { return {t.edges}; }
    bool has(int u, int v) const {
        return std::binary_search(edges.begin(), edges.end(), vpair(u, v));
    }
};

uint32_t gadget_mask_in(const PlacedGadget& pg, const EdgeSet& es);

struct Reduction25 {
    MSInstance ms;  // the subdivided family instance, weights and initial cut
    Rat eps_tilde;

    WeightedGraph tsp;
    Rat big_m;
    std::vector<StarSequence> sequences;
    std::vector<PlacedGadget> node_gadgets;  // per H-vertex
    std::vector<PlacedGadget> star_gadgets;  // per sequence
    std::vector<char> node_regular;          // per H-vertex
    // per H-vertex: (sequence idx, position) of the label-0 and label-1
    // occurrences
    std::vector<std::array<std::pair<int, int>, 2>> occ;
    std::vector<std::pair<int, int>> pp_pairs;  // paired star-gadget indices
};

// The eight sequence groups; catch-all 2-sequences in sorted edge order with
// the irregular endpoint first.
std::vector<StarSequence> build_star_sequences(const MSInstance& ms);

Reduction25 build_reduction_25(long n, long p);

struct Standard25View {
    std::vector<std::vector<int>> star_label;  // per sequence
};

struct Standard25Check {
    bool standard = false;
    int witness = -1;  // star gadget index, or n_stars + v for a cross-condition failure at v
    Standard25View view;
};

Standard25Check is_standard_25(const Reduction25& red, const EdgeSet& edges);
inline Standard25Check is_standard_25(const Reduction25& red, const Tour& tour) {
    return is_standard_25(red, EdgeSet::of(tour));
}

Cut phi(const Reduction25& red, const Tour& tour);  // throws NotStandard

// Standard tour assembled from a cut; for the length-4 sequences the cut
// state must admit a standard subtour. tau0 is the instance's initial tour.
Tour standard_tour_from_cut_25(const Reduction25& red, const Cut& cut);
Tour initial_tour_tau0(const Reduction25& red);

}  // namespace kadv
