#pragma once

#include <array>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kadv/cover.hpp"
#include "kadv/gadgets.hpp"
#include "kadv/graph.hpp"
#include "kadv/tour.hpp"

namespace kadv {

bool is_subtour_mask(const Gadget& g, uint32_t mask);

// A gadget placed in a TSP instance: its prototype plus the map from local
// vertex ids to global ones.
struct PlacedGadget {
    Gadget proto;
    std::vector<int> global;
    int h_entity = -1;  // H-vertex for vertex/node gadgets, path/sequence index otherwise

    uint32_t tour_mask(const Tour& tour) const {
        uint32_t mask = 0;
        for (int e = 0; e < proto.edge_count(); ++e)
            if (tour.has_edge(global[proto.edges[e].u], global[proto.edges[e].v]))
                mask |= (1u << e);
        return mask;
    }
};

// The constructed TSP instance for k in {3,4} (stick/buoy vertex gadgets) or
// k >= 5 (XOR gadgets of order k-2): construction edges only plus the big-M
// completion weight.
struct Reduction {
    WeightedGraph h;  // the Max-Cut instance (weights included)
    PathCover cover;
    int k = 3;

    WeightedGraph tsp;
    Rat big_m;
    std::vector<PlacedGadget> gadgets;  // vertex gadgets [0, |V(H)|), then path gadgets
    std::vector<std::vector<int>> labels;  // per cover path; entries in {1,2}
    // H-vertex -> two attachments (cover path index, position within path)
    std::vector<std::array<std::pair<int, int>, 2>> attachments;

    int path_gadget(int path_idx) const { return static_cast<int>(h.vertex_count()) + path_idx; }
};

struct BuildOptions {
    bool enforce_girth = true;  // girth(H) > 4k gate for k in {3,4}
};

Reduction build_reduction(const WeightedGraph& h, const PathCover& cover, int k,
                          const BuildOptions& opts = {});

// Per-gadget standard labels of a tour.
struct StandardTourView {
    std::vector<char> vertex_odd;              // per H-vertex: engaged side is the 1-side
    std::vector<std::vector<int>> path_label;  // per cover path: the s vector
};

Tour standard_tour_from_cut(const Reduction& red, const Cut& cut);
Cut cut_from_standard_tour(const Reduction& red, const Tour& tour);  // throws NotStandard

// Classification result; witness is the offending gadget index on failure.
struct StandardCheck {
    bool standard = false;
    int witness = -1;
    StandardTourView view;
};

StandardCheck is_standard(const Reduction& red, const Tour& tour);

}  // namespace kadv
