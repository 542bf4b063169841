#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>

#include "kadv/gadgets.hpp"
#include "kadv/verify.hpp"

using namespace kadv;

namespace {

int find_vertex(const Gadget& g, const std::string& name) {
    for (int i = 0; i < g.vertex_count(); ++i)
        if (g.vnames[i] == name) return i;
    FAIL("no vertex ", name);
    return -1;
}

uint32_t edges_mask(const Gadget& g, const std::vector<std::pair<std::string, std::string>>& es) {
    uint32_t mask = 0;
    for (const auto& [a, b] : es) {
        int u = find_vertex(g, a), v = find_vertex(g, b);
        bool found = false;
        for (int e = 0; e < g.edge_count(); ++e)
            if ((g.edges[e].u == u && g.edges[e].v == v) ||
                (g.edges[e].u == v && g.edges[e].v == u)) {
                mask |= 1u << e;
                found = true;
            }
        if (!found) FAIL("no edge ", a, "-", b);
    }
    return mask;
}

const CatalogEntry& entry(const Gadget& g, const std::vector<int>& s) {
    return g.standard_subtour(SubtourLabel::bits(s));
}

}  // namespace

TEST_CASE("vertex gadgets") {
    auto stick = make_vertex_gadget(VertexGadgetSpec::make_stick());
    CHECK(stick.subtours.size() == 1);
    CHECK(stick.catalog.size() == 2);  // odd and even share the underlying path
    CHECK(involved_edges(stick, stick.catalog[0].mask, stick.catalog[1].mask) == 0);

    auto buoy = make_vertex_gadget(VertexGadgetSpec::make_buoy());
    CHECK(buoy.subtours.size() == 2);
    CHECK(buoy.catalog.size() == 2);
    CHECK(involved_edges(buoy, buoy.standard_subtour(SubtourLabel::odd_label()).mask,
                         buoy.standard_subtour(SubtourLabel::even_label()).mask) == 2);

    for (long q : {3L, 4L, 5L}) {
        auto x = make_vertex_gadget(VertexGadgetSpec::make_xor(q));
        CHECK(x.subtours.size() == 2);
        CHECK(x.catalog.size() == 2);
        CHECK(involved_edges(x, x.catalog[0].mask, x.catalog[1].mask) == 2 * q - 2);
        CHECK(check_xor_gadget(x, q).empty());
    }
    CHECK_THROWS_AS(make_vertex_gadget(VertexGadgetSpec::make_xor(0)), PreconditionViolation);
}

TEST_CASE("path gadget catalogs") {
    SUBCASE("path-1 has two zero-weight standard subtours") {
        auto g = make_path_gadget(1, {}, {});
        CHECK(g.catalog.size() == 2);
        for (const auto& e : g.catalog) CHECK(e.weight == 0);
    }
    SUBCASE("path-2 weights") {
        Rat s = rat(3, 7), d = rat(-2, 5);
        auto g = make_path_gadget(2, {s}, {d});
        CHECK(g.catalog.size() == 4);
        CHECK(entry(g, {1, 1}).weight == s);
        CHECK(entry(g, {0, 0}).weight == s);
        CHECK(entry(g, {0, 1}).weight == d);
        CHECK(entry(g, {1, 0}).weight == d);
    }
    SUBCASE("path-3 catalog and the quoted subtour") {
        Rat s12 = rat(2), s23 = rat(5), d12 = rat(-1), d23 = rat(7);
        auto g = make_path_gadget(3, {s12, s23}, {d12, d23});
        CHECK(g.catalog.size() == 8);
        CHECK(entry(g, {1, 0, 1}).weight == d12 + d23);
        // (1,1,1): paths (Z,Y,X1), (Zb,Yb,Xb3), (Xb1,X2), (Xb2,X3)
        uint32_t want = edges_mask(g, {{"Z", "Y"},
                                       {"Y", "X1"},
                                       {"Zb", "Yb"},
                                       {"Yb", "Xb3"},
                                       {"Xb1", "X2"},
                                       {"Xb2", "X3"}});
        CHECK(entry(g, {1, 1, 1}).mask == want);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(make_path_gadget(4, {}, {}), PreconditionViolation);
        CHECK_THROWS_AS(make_path_gadget(2, {}, {}), PreconditionViolation);
    }
    SUBCASE("verifier checks pass on fresh gadgets") {
        auto g2 = make_path_gadget(2, {rat(1, 3)}, {rat(4)});
        auto g3 = make_path_gadget(3, {rat(1), rat(2)}, {rat(3), rat(4)});
        CHECK(check_standard_catalog(g2, 4).empty());
        CHECK(check_standard_catalog(g3, 8).empty());
        CHECK(check_path_weight_formula(g2).empty());
        CHECK(check_path_weight_formula(g3).empty());
        CHECK(check_nonstandard_side_parity(g2).empty());
        CHECK(check_nonstandard_side_parity(g3).empty());
    }
}

TEST_CASE("involved-edge table") {
    auto g1 = make_path_gadget(1, {}, {});
    auto g2 = make_path_gadget(2, {rat(1)}, {rat(2)});
    auto g3 = make_path_gadget(3, {rat(1), rat(2)}, {rat(3), rat(4)});
    CHECK(check_involved_edge_table(g1).empty());
    CHECK(check_involved_edge_table(g2).empty());
    CHECK(check_involved_edge_table(g3).empty());
    // quoted rows
    CHECK(involved_edges(g3, entry(g3, {0, 1, 0}).mask, entry(g3, {1, 1, 1}).mask) == 6);
    CHECK(involved_edges(g3, entry(g3, {0, 0, 0}).mask, entry(g3, {1, 1, 1}).mask) == 5);
    CHECK(involved_edges(g3, entry(g3, {1, 0, 1}).mask, entry(g3, {1, 0, 1}).mask) == 0);
}

TEST_CASE("node gadgets") {
    auto reg = make_node_gadget(true);
    CHECK(reg.vertex_count() == 1);
    CHECK(reg.edge_count() == 0);
    CHECK(reg.subtours.size() == 1);
    auto irr = make_node_gadget(false);
    CHECK(irr.vertex_count() == 3);
    CHECK(irr.edge_count() == 2);
    REQUIRE(irr.subtours.size() == 1);
    CHECK(std::popcount(irr.subtours[0]) == 2);  // the whole 2-path
}

TEST_CASE("star gadgets") {
    Rat s = rat(5, 3), d = rat(-7, 2);
    SUBCASE("star-1") {
        auto g = make_star_gadget(GadgetKind::star1, {}, {});
        CHECK(g.catalog.size() == 2);
        // the (0)->(1) change swaps the two edges at S: a 2-change at the
        // irregular side
        auto cls = classify_change(g, entry(g, {0}).mask, entry(g, {1}).mask);
        CHECK(cls.kind == ChangeClass::two_change);
        CHECK(cls.side == 0);
    }
    SUBCASE("star-2-IR") {
        auto g = make_star_gadget(GadgetKind::star2_ir, {s}, {d});
        CHECK(g.catalog.size() == 4);
        CHECK(entry(g, {1, 1}).weight == s);
        CHECK(entry(g, {0, 0}).weight == s);
        CHECK(entry(g, {1, 0}).weight == d);
        CHECK(entry(g, {0, 1}).weight == d);
        // changing the regular side is a 2.5-change (triangle through X2)
        auto cls = classify_change(g, entry(g, {0, 0}).mask, entry(g, {0, 1}).mask);
        CHECK(cls.kind == ChangeClass::two_five_change);
        CHECK(cls.side == 1);
    }
    SUBCASE("star-2-II") {
        auto g = make_star_gadget(GadgetKind::star2_ii, {s}, {d});
        CHECK(g.catalog.size() == 4);
        auto cls = classify_change(g, entry(g, {0, 0}).mask, entry(g, {1, 0}).mask);
        CHECK(cls.kind == ChangeClass::two_change);
        CHECK(cls.side == 0);
        CHECK(check_star_weight_formula(g).empty());
    }
    SUBCASE("star-3") {
        auto g = make_star_gadget(GadgetKind::star3, {s, rat(2)}, {d, rat(9)});
        CHECK(g.catalog.size() == 8);
        CHECK(entry(g, {1, 0, 1}).weight == d + rat(2));  // delta12 + sigma13
        CHECK(check_star_weight_formula(g).empty());
        CHECK(check_star_change_classification(g).empty());
    }
    SUBCASE("star-4") {
        Rat et = rat_pow2(-4);
        auto g = make_star_gadget(GadgetKind::star4, {}, {}, et);
        CHECK(g.catalog.size() == 14);
        CHECK(check_star4_table(g, et).empty());
        CHECK(check_star4_pi_chain(g).empty());
        // quoted entries
        const auto& g_sub = entry(g, {1, 0, 0, 0});
        CHECK(g_sub.weight == rat(-1));
        CHECK_THROWS_AS(entry(g, {0, 1, 0, 1}), NoSuchSubtour);
        CHECK_THROWS_AS(entry(g, {0, 0, 1, 0}), NoSuchSubtour);
        // the X1X3 edge carries weight -1
        int x1 = find_vertex(g, "X1"), x3 = find_vertex(g, "X3");
        bool found = false;
        for (const auto& e : g.edges)
            if ((e.u == x1 && e.v == x3) || (e.u == x3 && e.v == x1)) {
                CHECK(e.w == rat(-1));
                found = true;
            }
        CHECK(found);
        // subtour (a) = the (0,1,1,1)-subtour through Y-X4: first in catalog order
        auto subtours_0111 = g.standard_subtours(SubtourLabel::bits({0, 1, 1, 1}));
        REQUIRE(subtours_0111.size() == 2);
        CHECK(subtours_0111[0]->weight == rat(-1) - et);  // (a)
        CHECK(subtours_0111[1]->weight == rat(-1));       // (m)
        uint32_t mask_a = edges_mask(
            g, {{"Z", "Y"}, {"Y", "X4"}, {"X4", "X3"}, {"X3", "X2"}, {"X2", "Xb1"}});
        CHECK(subtours_0111[0]->mask == mask_a);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(make_star_gadget(GadgetKind::star3, {s}, {d}), PreconditionViolation);
        CHECK_THROWS_AS(make_star_gadget(GadgetKind::star4, {s}, {}), PreconditionViolation);
        CHECK_THROWS_AS(make_star_gadget(GadgetKind::path1, {}, {}), PreconditionViolation);
    }
}

TEST_CASE("subtour enumeration guard") {
    auto big = make_vertex_gadget(VertexGadgetSpec::make_xor(5));
    CHECK(big.vertex_count() == 15);  // at the guard boundary
    CHECK_THROWS_AS(make_vertex_gadget(VertexGadgetSpec::make_xor(6)), TooLarge);
}

TEST_CASE("classify involved edges across gadgets rejects mismatch") {
    auto a = make_path_gadget(2, {rat(1)}, {rat(2)});
    CHECK(involved_edges(a, entry(a, {0, 0}).mask, entry(a, {0, 0}).mask) == 0);
}

TEST_CASE("full gadget verifier") {
    auto report = verify_gadget_lemmas();
    for (const auto& c : report.checks) CHECK_MESSAGE(c.pass, c.id, ": ", c.witness);
}

TEST_CASE("mutation sensitivity") {
    // Each documented construction mutation must break at least one check.
    SUBCASE("swapped sigma/delta placement on a path-2 gadget") {
        auto g = make_path_gadget(2, {rat(3)}, {rat(5)});
        for (auto& e : g.edges) {
            if (e.w == rat(3)) e.w = rat(5);
            else if (e.w == rat(5)) e.w = rat(3);
        }
        rebuild_catalog(g);
        CHECK(!check_path_weight_formula(g).empty());
    }
    SUBCASE("wrong weight sign on a star-4 edge") {
        Rat et = rat_pow2(-4);
        auto g = make_star_gadget(GadgetKind::star4, {}, {}, et);
        for (auto& e : g.edges)
            if (e.w == rat(-1)) {
                e.w = rat(1);
                break;
            }
        rebuild_catalog(g);
        CHECK(!check_star4_table(g, et).empty());
    }
    SUBCASE("dropped edge breaks uniqueness") {
        auto g = make_path_gadget(3, {rat(1), rat(2)}, {rat(3), rat(4)});
        g.edges.pop_back();  // drop Xb1-X3
        rebuild_catalog(g);
        CHECK((!check_standard_catalog(g, 8).empty() || !check_involved_edge_table(g).empty()));
    }
    SUBCASE("swapped portal roles break the star degree table") {
        auto g = make_star_gadget(GadgetKind::star2_ir, {rat(1)}, {rat(2)});
        std::swap(g.sides[0].x, g.sides[0].xbar);
        rebuild_catalog(g);
        CHECK(!check_star_weight_formula(g).empty());
    }
    SUBCASE("extra edge creates spurious subtours") {
        auto g = make_path_gadget(2, {rat(1)}, {rat(2)});
        int x1 = find_vertex(g, "X1"), xb2 = find_vertex(g, "Xb2");
        g.edges.push_back({x1, xb2, rat(0)});
        rebuild_catalog(g);
        CHECK((!check_standard_catalog(g, 4).empty() ||
               !check_involved_edge_table(g).empty() ||
               !check_nonstandard_side_parity(g).empty()));
    }
    SUBCASE("tampered eps-tilde placement") {
        Rat et = rat_pow2(-4);
        auto g = make_star_gadget(GadgetKind::star4, {}, {}, et);
        for (auto& e : g.edges)
            if (e.w == -et) e.w = rat(0);
        rebuild_catalog(g);
        CHECK(!check_star4_table(g, et).empty());
    }
}
