#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <functional>
#include <set>

#include "kadv/ms_family.hpp"
#include "kadv/reduction.hpp"
#include "kadv/rng.hpp"

using namespace kadv;

namespace {

// a path on six vertices; 2-path 2-coverable with all-1-path cover, infinite
// girth, so every k qualifies
WeightedGraph p6_graph(Rng& rng) {
    WeightedGraph h;
    for (int i = 0; i < 6; ++i) h.add_vertex(std::string(1, static_cast<char>('a' + i)));
    for (int i = 0; i + 1 < 6; ++i)
        h.add_edge(i, i + 1, rat(static_cast<long>(rng.below(19)) - 9,
                                 static_cast<long>(rng.below(5)) + 1));
    return h;
}

PathCover p6_cover() {
    return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0}, {5}};
}

// the six-vertex example graph: edges ab, bc, cd, af, bf, be (girth 3)
WeightedGraph example_graph() {
    WeightedGraph h;
    for (char c : {'a', 'b', 'c', 'd', 'e', 'f'}) h.add_vertex(std::string(1, c));
    h.add_edge(0, 1, rat(2));   // ab
    h.add_edge(1, 2, rat(-3));  // bc
    h.add_edge(2, 3, rat(5));   // cd
    h.add_edge(0, 5, rat(1));   // af
    h.add_edge(1, 5, rat(4));   // bf
    h.add_edge(1, 4, rat(-2));  // be
    return h;
}

PathCover example_cover() {
    // (a,b,c), (e,b,f), (f,a), (c,d), (d), (e)
    return {{0, 1, 2}, {4, 1, 5}, {5, 0}, {2, 3}, {3}, {4}};
}

}  // namespace

TEST_CASE("single-vertex instance for k = 4") {
    WeightedGraph h;
    h.add_vertex("v");
    PathCover cover{{0}, {0}};
    auto red = build_reduction(h, cover, 4);
    // buoy (6 vertices) + two path-1 gadgets (2 internal each) + 2 shared PP
    CHECK(red.tsp.vertex_count() == 6 + 2 * 2 + 2);
    CHECK(red.tsp.edge_count() == 6 + 5 + 5);

    Cut in_one{std::vector<char>{1}};
    Cut in_two{std::vector<char>{0}};
    Tour t1 = standard_tour_from_cut(red, in_one);
    Tour t2 = standard_tour_from_cut(red, in_two);
    CHECK(is_standard(red, t1).standard);
    CHECK(is_standard(red, t2).standard);
    CHECK(cut_from_standard_tour(red, t1) == in_one);
    CHECK(cut_from_standard_tour(red, t2) == in_two);
    // the two standard tours differ by a 4-swap
    std::vector<VPair> diff;
    std::set_difference(t1.edges.begin(), t1.edges.end(), t2.edges.begin(), t2.edges.end(),
                        std::back_inserter(diff));
    CHECK(diff.size() == 4);
    // weight correspondence: cut values are 0, so tour weights are 0
    CHECK(tour_weight(red.tsp, t1, red.big_m) == 0);
    CHECK(tour_weight(red.tsp, t2, red.big_m) == 0);
}

TEST_CASE("single-vertex instance for k = 3 and k = 5") {
    WeightedGraph h;
    h.add_vertex("v");
    PathCover cover{{0}, {0}};
    for (int k : {3, 5, 6}) {
        auto red = build_reduction(h, cover, k);
        Cut c{std::vector<char>{1}};
        Tour t = standard_tour_from_cut(red, c);
        CHECK(is_standard(red, t).standard);
        CHECK(cut_from_standard_tour(red, t) == c);
    }
}

TEST_CASE("exhaustive bijection and neighbor correspondence on a 6-vertex tree") {
    Rng rng(2024);
    auto h = p6_graph(rng);
    auto cover = p6_cover();
    REQUIRE(validate_cover(h, cover).empty());
    for (int k : {3, 4, 5}) {
        CAPTURE(k);
        auto red = build_reduction(h, cover, k);
        std::vector<Tour> tours;
        std::set<std::vector<VPair>> seen;
        for (uint32_t bits = 0; bits < 64; ++bits) {
            Cut c = Cut::all_two(6);
            for (int v = 0; v < 6; ++v) c.one[v] = (bits >> v) & 1;
            Tour t = standard_tour_from_cut(red, c);
            CHECK(seen.insert(t.edges).second);  // injective
            CHECK(cut_from_standard_tour(red, t) == c);
            CHECK(tour_weight(red.tsp, t, red.big_m) + cut_value(h, c) == 0);
            tours.push_back(t);
        }
        // flips <-> k-swaps, exhaustively over all pairs
        for (uint32_t b1 = 0; b1 < 64; ++b1)
            for (uint32_t b2 = b1 + 1; b2 < 64; ++b2) {
                std::vector<VPair> diff;
                std::set_difference(tours[b1].edges.begin(), tours[b1].edges.end(),
                                    tours[b2].edges.begin(), tours[b2].edges.end(),
                                    std::back_inserter(diff));
                int hamming = std::popcount(b1 ^ b2);
                if (hamming == 1)
                    CHECK(static_cast<int>(diff.size()) == k);
                else
                    CHECK(static_cast<int>(diff.size()) > k);
            }
    }
}

TEST_CASE("example graph with the (b d | a c e f) cut") {
    auto h = example_graph();
    auto cover = example_cover();
    REQUIRE(validate_cover(h, cover).empty());
    // girth 3: the closure precondition fails for k in {3,4}
    CHECK_THROWS_AS(build_reduction(h, cover, 3), GirthTooSmall);
    BuildOptions opts;
    opts.enforce_girth = false;
    auto red = build_reduction(h, cover, 3, opts);
    Cut bd = Cut::all_two(6);
    bd.one[1] = bd.one[3] = 1;  // V1 = {b, d}
    Tour t = standard_tour_from_cut(red, bd);
    CHECK(is_standard(red, t).standard);
    CHECK(cut_from_standard_tour(red, t) == bd);
    CHECK(tour_weight(red.tsp, t, red.big_m) + cut_value(h, bd) == 0);
}

TEST_CASE("the single-vertex instance admits only its two standard tours") {
    WeightedGraph h;
    h.add_vertex("v");
    PathCover cover{{0}, {0}};
    auto red = build_reduction(h, cover, 4);
    const int n = red.tsp.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : red.tsp.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> path{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    int nonstandard_count = 0, standard_count = 0;
    std::function<void()> rec = [&]() {
        int cur = path.back();
        if (static_cast<int>(path.size()) == n) {
            if (std::find(adj[cur].begin(), adj[cur].end(), 0) != adj[cur].end() &&
                path[1] < path.back()) {
                auto tour = Tour::from_order(path);
                if (is_standard(red, tour).standard)
                    ++standard_count;
                else
                    ++nonstandard_count;
            }
            return;
        }
        for (int nb : adj[cur]) {
            if (used[nb]) continue;
            used[nb] = 1;
            path.push_back(nb);
            rec();
            path.pop_back();
            used[nb] = 0;
        }
    };
    rec();
    CHECK(standard_count == 2);
    CHECK(nonstandard_count == 0);
}

TEST_CASE("build preconditions") {
    auto h = example_graph();
    CHECK_THROWS_AS(build_reduction(h, {{0, 1}}, 3), CoverInvalid);
    CHECK_THROWS_AS(build_reduction(h, example_cover(), 2), PreconditionViolation);
    // k >= 5 has no girth gate
    auto red = build_reduction(h, example_cover(), 5);
    CHECK(red.tsp.vertex_count() > 0);
}

TEST_CASE("hierarchy instance: counts audited against per-gadget sums") {
    auto ms = build_h_np(1, 3);
    auto cover = canonical_cover(ms);
    BuildOptions opts;
    opts.enforce_girth = false;  // girth 6 is fine for correspondence checks
    auto red = build_reduction(ms.graph, cover, 3, opts);

    long want_vertices = 0, want_edges = 0;
    want_vertices += 3 * ms.graph.vertex_count();  // sticks
    want_edges += 2 * ms.graph.vertex_count();
    for (const auto& path : cover) {
        // path-t gadget: 2 fresh internals and half of each of its 2 PP slots
        want_vertices += 2 + 1;
        switch (path.size()) {
            case 1: want_edges += 5; break;
            case 2: want_edges += 8; break;
            default: want_edges += 12; break;
        }
    }
    CHECK(red.tsp.vertex_count() == want_vertices);
    CHECK(red.tsp.edge_count() == want_edges);

    // weight correspondence on random cuts
    Rng rng(5);
    for (int rep = 0; rep < 25; ++rep) {
        Cut c = Cut::all_two(ms.graph.vertex_count());
        for (int v = 0; v < c.size(); ++v) c.one[v] = rng.below(2);
        Tour t = standard_tour_from_cut(red, c);
        CHECK(tour_weight(red.tsp, t, red.big_m) + cut_value(ms.graph, c) == 0);
        CHECK(cut_from_standard_tour(red, t) == c);
    }
}

TEST_CASE("girth-18 instance builds for k in {3,4} without overrides") {
    auto ms = build_h_np(1, 15);
    auto cover = canonical_cover(ms);
    auto red3 = build_reduction(ms.graph, cover, 3);
    auto red4 = build_reduction(ms.graph, cover, 4);
    CHECK(red3.tsp.vertex_count() > 0);
    CHECK(red4.tsp.vertex_count() > red3.tsp.vertex_count());
    // initial standard tour has weight equal to minus the initial cut value
    Tour t = standard_tour_from_cut(red3, ms.initial_cut);
    CHECK(tour_weight(red3.tsp, t, red3.big_m) == -cut_value(ms.graph, ms.initial_cut));
}
