#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kadv/rational.hpp"

namespace kadv {

enum class GadgetKind {
    stick,
    buoy,
    xorq,
    path1,
    path2,
    path3,
    node_regular,
    node_irregular,
    star1,
    star2_ir,
    star2_ii,
    star3,
    star4,
};

std::string gadget_kind_name(GadgetKind k);

enum class VRole { internal, pv, pp };

// Either a parity label (vertex gadgets: odd/even) or a bit vector with one
// coordinate per side.
struct SubtourLabel {
    bool parity = false;
    bool odd = false;          // meaningful when parity
    std::vector<int> s;       // meaningful when !parity

    static SubtourLabel odd_label() { return {true, true, {}}; }
    static SubtourLabel even_label() { return {true, false, {}}; }
    static SubtourLabel bits(std::vector<int> s) { return {false, false, std::move(s)}; }

    bool operator==(const SubtourLabel& o) const {
        return parity == o.parity && (parity ? odd == o.odd : s == o.s);
    }
    std::string str() const;
};

struct CatalogEntry {
    SubtourLabel label;
    uint32_t mask;  // over gadget edges
    Rat weight;
};

// A side is the PV-portal pair {X_i, X̄_i} attached to one vertex/node
// gadget; xbar < 0 marks a regular (single-portal) star side.
struct Side {
    int x;
    int xbar;
    bool regular() const { return xbar < 0; }
};

struct GEdge {
    int u, v;
    Rat w;
};

struct Gadget {
    GadgetKind kind;
    std::vector<std::string> vnames;
    std::vector<VRole> roles;
    std::vector<Side> sides;
    std::vector<int> pp;  // PP-portal local vertex ids
    std::vector<GEdge> edges;
    std::vector<Rat> sigma, delta;  // weight parameters where applicable
    std::optional<Rat> eps_tilde;   // star-4 only

    // Built by the enumerator at construction so the catalog cannot drift
    // from the topology.
    std::vector<uint32_t> subtours;        // all subtour masks, ascending
    std::vector<CatalogEntry> catalog;     // standard subtours, deterministic order

    int vertex_count() const { return static_cast<int>(vnames.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    Rat mask_weight(uint32_t mask) const;
    std::vector<int> mask_degrees(uint32_t mask) const;
    std::optional<SubtourLabel> classify_mask(uint32_t mask) const;

    // First catalog entry with this label (catalog order breaks the star-4
    // duplicate labels toward the lower-weight subtour). Throws NoSuchSubtour.
    const CatalogEntry& standard_subtour(const SubtourLabel& label) const;
    std::vector<const CatalogEntry*> standard_subtours(const SubtourLabel& label) const;
};

struct VertexGadgetSpec {
    enum Kind { stick, buoy, xorq } kind;
    long q = 0;  // order, xorq only

    static VertexGadgetSpec make_stick() { return {stick, 0}; }
    static VertexGadgetSpec make_buoy() { return {buoy, 0}; }
    static VertexGadgetSpec make_xor(long q) { return {xorq, q}; }
};

Gadget make_vertex_gadget(const VertexGadgetSpec& spec);
Gadget make_path_gadget(int t, std::vector<Rat> sigma, std::vector<Rat> delta);
Gadget make_node_gadget(bool regular);
Gadget make_star_gadget(GadgetKind kind, std::vector<Rat> sigma, std::vector<Rat> delta,
                        std::optional<Rat> eps_tilde = std::nullopt);

// All edge subsets that form a subtour: vertex-disjoint paths, only portals
// as endpoints (internal degree exactly 2), PP-portals degree exactly 1.
// Guard: at most 16 vertices.
std::vector<uint32_t> enumerate_subtours(const Gadget& g);

// Re-run enumeration and standard classification (after tampering with the
// topology or weights in tests).
void rebuild_catalog(Gadget& g);

int involved_edges(const Gadget& g, uint32_t a, uint32_t b);

struct ChangeClass {
    enum Kind { two_change, two_five_change, other } kind = other;
    int side = -1;
};

ChangeClass classify_change(const Gadget& g, uint32_t a, uint32_t b);

}  // namespace kadv
