#include "kadv/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "kadv/errors.hpp"

namespace kadv {

std::string gadget_kind_name(GadgetKind k) {
    switch (k) {
        case GadgetKind::stick: return "stick";
        case GadgetKind::buoy: return "buoy";
        case GadgetKind::xorq: return "xor";
        case GadgetKind::path1: return "path-1";
        case GadgetKind::path2: return "path-2";
        case GadgetKind::path3: return "path-3";
        case GadgetKind::node_regular: return "node-regular";
        case GadgetKind::node_irregular: return "node-irregular";
        case GadgetKind::star1: return "star-1";
        case GadgetKind::star2_ir: return "star-2-IR";
        case GadgetKind::star2_ii: return "star-2-II";
        case GadgetKind::star3: return "star-3";
        case GadgetKind::star4: return "star-4";
    }
    return "?";
}

std::string SubtourLabel::str() const {
    if (parity) return odd ? "odd" : "even";
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

Rat Gadget::mask_weight(uint32_t mask) const {
    Rat total(0);
    for (int e = 0; e < edge_count(); ++e)
        if (mask & (1u << e)) total += edges[e].w;
    return total;
}

std::vector<int> Gadget::mask_degrees(uint32_t mask) const {
    std::vector<int> deg(vertex_count(), 0);
    for (int e = 0; e < edge_count(); ++e)
        if (mask & (1u << e)) {
            ++deg[edges[e].u];
            ++deg[edges[e].v];
        }
    return deg;
}

namespace {

bool mask_is_subtour(const Gadget& g, uint32_t mask) {
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
        if (ru == rv) return false;  // cycle
        parent[ru] = rv;
    }
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (g.roles[x] == VRole::internal && deg[x] != 2) return false;
        if (g.roles[x] == VRole::pp && deg[x] != 1) return false;
    }
    return true;
}

// A spanning path's endpoint pair, or nullopt if the mask is not a single
// spanning path over all gadget vertices.
std::optional<std::pair<int, int>> spanning_path_ends(const Gadget& g, uint32_t mask) {
    auto deg = g.mask_degrees(mask);
    std::vector<int> ends;
    int used = 0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (deg[x] == 1) ends.push_back(x);
        if (deg[x] >= 1) ++used;
    }
    if (ends.size() != 2 || used != g.vertex_count()) return std::nullopt;
    if (std::popcount(mask) != g.vertex_count() - 1) return std::nullopt;
    return std::make_pair(std::min(ends[0], ends[1]), std::max(ends[0], ends[1]));
}

bool label_less(const SubtourLabel& a, const SubtourLabel& b) {
    if (a.parity != b.parity) return a.parity;  // parity labels first
    if (a.parity) return a.odd && !b.odd;       // odd before even
    return a.s < b.s;
}

void build_catalog(Gadget& g) {
    g.subtours = enumerate_subtours(g);
    g.catalog.clear();
    for (uint32_t mask : g.subtours) {
        if (g.kind == GadgetKind::stick || g.kind == GadgetKind::buoy ||
            g.kind == GadgetKind::xorq) {
            auto ends = spanning_path_ends(g, mask);
            if (!ends) continue;
            auto matches = [&](const Side& side) {
                auto want = std::minmax(side.x, side.xbar);
                return *ends == std::make_pair(want.first, want.second);
            };
            if (matches(g.sides[0]))
                g.catalog.push_back({SubtourLabel::odd_label(), mask, g.mask_weight(mask)});
            if (matches(g.sides[1]))
                g.catalog.push_back({SubtourLabel::even_label(), mask, g.mask_weight(mask)});
        } else if (g.kind == GadgetKind::node_regular || g.kind == GadgetKind::node_irregular) {
            g.catalog.push_back({SubtourLabel::bits({}), mask, g.mask_weight(mask)});
        } else {
            auto label = g.classify_mask(mask);
            if (label) g.catalog.push_back({*label, mask, g.mask_weight(mask)});
        }
    }
    std::stable_sort(g.catalog.begin(), g.catalog.end(),
                     [](const CatalogEntry& a, const CatalogEntry& b) {
                         if (!(a.label == b.label)) return label_less(a.label, b.label);
                         if (a.weight != b.weight) return a.weight < b.weight;
                         return a.mask < b.mask;
                     });
}

}  // namespace

void rebuild_catalog(Gadget& g) { build_catalog(g); }

std::optional<SubtourLabel> Gadget::classify_mask(uint32_t mask) const {
    auto deg = mask_degrees(mask);
    switch (kind) {
        case GadgetKind::stick:
        case GadgetKind::buoy:
        case GadgetKind::xorq: {
            auto ends = spanning_path_ends(*this, mask);
            if (!ends) return std::nullopt;
            for (int i = 0; i < 2; ++i) {
                auto want = std::minmax(sides[i].x, sides[i].xbar);
                if (*ends == std::make_pair(want.first, want.second))
                    return i == 0 ? SubtourLabel::odd_label() : SubtourLabel::even_label();
            }
            return std::nullopt;
        }
        case GadgetKind::node_regular:
        case GadgetKind::node_irregular:
            return SubtourLabel::bits({});
        case GadgetKind::path1:
        case GadgetKind::path2:
        case GadgetKind::path3: {
            std::vector<int> s;
            for (const auto& side : sides) {
                int dx = deg[side.x], dxb = deg[side.xbar];
                if (dx != dxb || dx > 1) return std::nullopt;
                s.push_back(dx);
            }
            return SubtourLabel::bits(std::move(s));
        }
        default: {  // star gadgets
            std::vector<int> s;
            for (const auto& side : sides) {
                if (side.regular()) {
                    int dx = deg[side.x];
                    if (dx == 0)
                        s.push_back(0);
                    else if (dx == 2)
                        s.push_back(1);
                    else
                        return std::nullopt;
                } else {
                    int dx = deg[side.x], dxb = deg[side.xbar];
                    if (dx == 0 && dxb == 1)
                        s.push_back(0);
                    else if (dx == 1 && dxb == 0)
                        s.push_back(1);
                    else
                        return std::nullopt;
                }
            }
            return SubtourLabel::bits(std::move(s));
        }
    }
}

const CatalogEntry& Gadget::standard_subtour(const SubtourLabel& label) const {
    for (const auto& entry : catalog)
        if (entry.label == label) return entry;
    throw NoSuchSubtour("no " + label.str() + "-subtour in " + gadget_kind_name(kind));
}

std::vector<const CatalogEntry*> Gadget::standard_subtours(const SubtourLabel& label) const {
    std::vector<const CatalogEntry*> out;
    for (const auto& entry : catalog)
        if (entry.label == label) out.push_back(&entry);
    return out;
}

std::vector<uint32_t> enumerate_subtours(const Gadget& g) {
    if (g.vertex_count() > 16)
        throw TooLarge("subtour enumeration limited to 16 vertices, got " +
                       std::to_string(g.vertex_count()));
    if (g.edge_count() > 31) throw TooLarge("too many gadget edges");
    std::vector<uint32_t> out;
    for (uint32_t mask = 0; mask < (1u << g.edge_count()); ++mask)
        if (mask_is_subtour(g, mask)) out.push_back(mask);
    return out;
}

int involved_edges(const Gadget&, uint32_t a, uint32_t b) {
    return std::popcount(a ^ b);
}

ChangeClass classify_change(const Gadget& g, uint32_t a, uint32_t b) {
    uint32_t diff = a ^ b;
    int k = std::popcount(diff);
    std::vector<int> es;
    for (int e = 0; e < g.edge_count(); ++e)
        if (diff & (1u << e)) es.push_back(e);

    if (k == 2) {
        const auto& e1 = g.edges[es[0]];
        const auto& e2 = g.edges[es[1]];
        int common = -1;
        for (int x : {e1.u, e1.v})
            for (int y : {e2.u, e2.v})
                if (x == y) common = x;
        if (common < 0) return {};
        int o1 = e1.u == common ? e1.v : e1.u;
        int o2 = e2.u == common ? e2.v : e2.u;
        for (size_t i = 0; i < g.sides.size(); ++i) {
            const auto& side = g.sides[i];
            if (side.regular()) continue;
            if ((o1 == side.x && o2 == side.xbar) || (o1 == side.xbar && o2 == side.x))
                return {ChangeClass::two_change, static_cast<int>(i)};
        }
        return {};
    }
    if (k == 3) {
        std::vector<int> verts;
        for (int e : es) {
            verts.push_back(g.edges[e].u);
            verts.push_back(g.edges[e].v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        if (verts.size() != 3) return {};  // not a triangle
        for (size_t i = 0; i < g.sides.size(); ++i) {
            const auto& side = g.sides[i];
            if (!side.regular()) continue;
            std::vector<int> at_x;
            for (int e : es)
                if (g.edges[e].u == side.x || g.edges[e].v == side.x) at_x.push_back(e);
            if (at_x.size() != 2) continue;
            bool both_in_a = (a & (1u << at_x[0])) && (a & (1u << at_x[1]));
            bool both_in_b = (b & (1u << at_x[0])) && (b & (1u << at_x[1]));
            if (both_in_a || both_in_b) return {ChangeClass::two_five_change, static_cast<int>(i)};
        }
        return {};
    }
    return {};
}

namespace {

struct Proto {
    Gadget g;
    int v(const std::string& name, VRole role) {
        g.vnames.push_back(name);
        g.roles.push_back(role);
        return g.vertex_count() - 1;
    }
    void e(int u, int v, Rat w = Rat(0)) { g.edges.push_back({u, v, std::move(w)}); }
};

}  // namespace

Gadget make_vertex_gadget(const VertexGadgetSpec& spec) {
    Proto p;
    switch (spec.kind) {
        case VertexGadgetSpec::stick: {
            p.g.kind = GadgetKind::stick;
            int a = p.v("X1", VRole::pv);
            int b = p.v("b", VRole::internal);
            int c = p.v("Xb1", VRole::pv);
            p.e(a, b);
            p.e(b, c);
            p.g.sides = {{a, c}, {a, c}};
            break;
        }
        case VertexGadgetSpec::buoy: {
            p.g.kind = GadgetKind::buoy;
            int x = p.v("X", VRole::pv);
            int xb1 = p.v("Xb1", VRole::pv);
            int xb2 = p.v("Xb2", VRole::pv);
            int a = p.v("a", VRole::internal);
            int b = p.v("b", VRole::internal);
            int c = p.v("c", VRole::internal);
            p.e(xb1, a);
            p.e(a, xb2);
            p.e(xb2, b);
            p.e(b, xb1);
            p.e(b, c);
            p.e(c, x);
            p.g.sides = {{x, xb1}, {x, xb2}};
            break;
        }
        case VertexGadgetSpec::xorq: {
            const long q = spec.q;
            if (q < 1) throw PreconditionViolation("xor gadget needs order >= 1");
            if (q > 5) throw TooLarge("xor gadget order > 5 exceeds the enumeration guard");
            p.g.kind = GadgetKind::xorq;
            std::vector<int> a(q), b(q), m(q);
            for (long i = 0; i < q; ++i) {
                a[i] = p.v("a" + std::to_string(i + 1), VRole::pv);
                b[i] = p.v("b" + std::to_string(i + 1), VRole::pv);
                m[i] = p.v("m" + std::to_string(i + 1), VRole::internal);
            }
            for (long i = 0; i + 1 < q; ++i) {
                p.e(a[i], a[i + 1]);
                p.e(b[i], b[i + 1]);
            }
            for (long i = 0; i < q; ++i) {
                p.e(a[i], m[i]);
                p.e(m[i], b[i]);
            }
            // rung endpoints are the portals; interior path vertices are not
            for (long i = 0; i < q; ++i)
                if (i != 0 && i != q - 1) {
                    p.g.roles[a[i]] = VRole::internal;
                    p.g.roles[b[i]] = VRole::internal;
                }
            if (q % 2 == 0)
                p.g.sides = {{a[0], a[q - 1]}, {b[0], b[q - 1]}};
            else
                p.g.sides = {{a[0], b[q - 1]}, {b[0], a[q - 1]}};
            break;
        }
    }
    build_catalog(p.g);
    return p.g;
}

Gadget make_path_gadget(int t, std::vector<Rat> sigma, std::vector<Rat> delta) {
    if (t < 1 || t > 3) throw PreconditionViolation("path gadget arity must be 1..3");
    if (static_cast<int>(sigma.size()) != t - 1 || static_cast<int>(delta.size()) != t - 1)
        throw PreconditionViolation("path gadget needs t-1 sigma and delta parameters");
    Proto p;
    int z = p.v("Z", VRole::pp);
    int zb = p.v("Zb", VRole::pp);
    if (t == 1) {
        p.g.kind = GadgetKind::path1;
        int x1 = p.v("X1", VRole::pv);
        int xb1 = p.v("Xb1", VRole::pv);
        int s = p.v("S", VRole::internal);
        int sb = p.v("Sb", VRole::internal);
        p.e(z, s);
        p.e(s, x1);
        p.e(xb1, sb);
        p.e(sb, zb);
        p.e(s, sb);
        p.g.sides = {{x1, xb1}};
    } else if (t == 2) {
        p.g.kind = GadgetKind::path2;
        int x1 = p.v("X1", VRole::pv);
        int xb1 = p.v("Xb1", VRole::pv);
        int x2 = p.v("X2", VRole::pv);
        int xb2 = p.v("Xb2", VRole::pv);
        int y = p.v("Y", VRole::internal);
        int yb = p.v("Yb", VRole::internal);
        p.e(z, y);
        p.e(y, yb, sigma[0]);
        p.e(yb, zb);
        p.e(y, x1);
        p.e(yb, xb1, delta[0]);
        p.e(xb1, x2, sigma[0]);
        p.e(y, x2, delta[0]);
        p.e(yb, xb2);
        p.g.sides = {{x1, xb1}, {x2, xb2}};
    } else {
        p.g.kind = GadgetKind::path3;
        int x1 = p.v("X1", VRole::pv);
        int xb1 = p.v("Xb1", VRole::pv);
        int x2 = p.v("X2", VRole::pv);
        int xb2 = p.v("Xb2", VRole::pv);
        int x3 = p.v("X3", VRole::pv);
        int xb3 = p.v("Xb3", VRole::pv);
        int y = p.v("Y", VRole::internal);
        int yb = p.v("Yb", VRole::internal);
        p.e(z, y);
        p.e(y, yb, sigma[0] + sigma[1]);
        p.e(yb, zb);
        p.e(y, x1);
        p.e(yb, xb1, delta[0] + sigma[1]);
        p.e(xb1, x2, sigma[0]);
        p.e(y, x2, delta[0]);
        p.e(yb, xb2, delta[1]);
        p.e(xb2, x3, sigma[1]);
        p.e(y, x3, sigma[0] + delta[1]);
        p.e(yb, xb3);
        p.e(xb1, x3, delta[0] + delta[1]);
        p.g.sides = {{x1, xb1}, {x2, xb2}, {x3, xb3}};
    }
    p.g.sigma = std::move(sigma);
    p.g.delta = std::move(delta);
    build_catalog(p.g);
    return p.g;
}

Gadget make_node_gadget(bool regular) {
    Proto p;
    if (regular) {
        p.g.kind = GadgetKind::node_regular;
        int x = p.v("X", VRole::pv);
        p.g.sides = {{x, -1}};
    } else {
        p.g.kind = GadgetKind::node_irregular;
        int x = p.v("X", VRole::pv);
        int mid = p.v("m", VRole::internal);
        int xb = p.v("Xb", VRole::pv);
        p.e(x, mid);
        p.e(mid, xb);
        p.g.sides = {{x, xb}};
    }
    build_catalog(p.g);
    return p.g;
}

Gadget make_star_gadget(GadgetKind kind, std::vector<Rat> sigma, std::vector<Rat> delta,
                        std::optional<Rat> eps_tilde) {
    Proto p;
    p.g.kind = kind;
    switch (kind) {
        case GadgetKind::star1: {
            if (!sigma.empty() || !delta.empty())
                throw PreconditionViolation("star-1 takes no weight parameters");
            int x1 = p.v("X1", VRole::pv);
            int xb1 = p.v("Xb1", VRole::pv);
            int s = p.v("S", VRole::internal);
            int z = p.v("Z", VRole::pp);
            p.e(z, s);
            p.e(s, x1);
            p.e(s, xb1);
            p.g.sides = {{x1, xb1}};
            break;
        }
        case GadgetKind::star2_ir: {
            if (sigma.size() != 1 || delta.size() != 1)
                throw PreconditionViolation("star-2 needs one sigma and one delta");
            int x1 = p.v("X1", VRole::pv);
            int xb1 = p.v("Xb1", VRole::pv);
            int x2 = p.v("X2", VRole::pv);
            int y = p.v("Y", VRole::internal);
            int z = p.v("Z", VRole::pp);
            p.e(z, y);
            p.e(y, x2);
            p.e(y, x1, delta[0]);
            p.e(x2, x1, sigma[0]);
            p.e(y, xb1, sigma[0]);
            p.e(x2, xb1, delta[0]);
            p.g.sides = {{x1, xb1}, {x2, -1}};
            break;
        }
        case GadgetKind::star2_ii: {
            if (sigma.size() != 1 || delta.size() != 1)
                throw PreconditionViolation("star-2 needs one sigma and one delta");
            int x1 = p.v("X1", VRole::pv);
            int xb1 = p.v("Xb1", VRole::pv);
            int x2 = p.v("X2", VRole::pv);
            int xb2 = p.v("Xb2", VRole::pv);
            p.e(x1, x2, sigma[0]);
            p.e(x1, xb2, delta[0]);
            p.e(xb1, x2, delta[0]);
            p.e(xb1, xb2, sigma[0]);
            p.g.sides = {{x1, xb1}, {x2, xb2}};
            break;
        }
        case GadgetKind::star3: {
            if (sigma.size() != 2 || delta.size() != 2)
                throw PreconditionViolation("star-3 needs two sigmas and two deltas");
            int x1 = p.v("X1", VRole::pv);
            int x2 = p.v("X2", VRole::pv);
            int xb2 = p.v("Xb2", VRole::pv);
            int x3 = p.v("X3", VRole::pv);
            int xb3 = p.v("Xb3", VRole::pv);
            p.e(x1, x2, sigma[0]);
            p.e(x1, xb2, delta[0]);
            p.e(x1, x3, sigma[1]);
            p.e(x1, xb3, delta[1]);
            p.e(x2, x3, delta[0] + delta[1]);
            p.e(x2, xb3, delta[0] + sigma[1]);
            p.e(xb2, x3, sigma[0] + delta[1]);
            p.e(xb2, xb3, sigma[0] + sigma[1]);
            p.g.sides = {{x1, -1}, {x2, xb2}, {x3, xb3}};
            break;
        }
        case GadgetKind::star4: {
            if (!sigma.empty() || !delta.empty() || !eps_tilde)
                throw PreconditionViolation("star-4 takes only the eps-tilde parameter");
            const Rat& et = *eps_tilde;
            int x1 = p.v("X1", VRole::pv);
            int xb1 = p.v("Xb1", VRole::pv);
            int x2 = p.v("X2", VRole::pv);
            int x3 = p.v("X3", VRole::pv);
            int x4 = p.v("X4", VRole::pv);
            int y = p.v("Y", VRole::internal);
            int z = p.v("Z", VRole::pp);
            p.e(z, y);
            p.e(y, x4, -et);
            p.e(x4, x3);
            p.e(x3, x2);
            p.e(x2, y);
            p.e(y, xb1);
            p.e(xb1, x3);
            p.e(x3, x1, rat(-1));
            p.e(x1, x2);
            p.e(x2, xb1, rat(-1));
            p.e(xb1, x4, rat(-1));
            p.e(x4, x1);
            p.e(x1, y, rat(-1));
            p.g.sides = {{x1, xb1}, {x2, -1}, {x3, -1}, {x4, -1}};
            break;
        }
        default:
            throw PreconditionViolation("not a star gadget kind");
    }
    p.g.sigma = std::move(sigma);
    p.g.delta = std::move(delta);
    p.g.eps_tilde = std::move(eps_tilde);
    build_catalog(p.g);
    return p.g;
}

}  // namespace kadv
