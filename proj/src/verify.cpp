#include "kadv/verify.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "kadv/ms_family.hpp"
#include "kadv/reduction.hpp"
#include "kadv/reduction25.hpp"
#include "kadv/rng.hpp"

namespace kadv {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
    Report report;
    void run(const std::string& id, const std::string& anchor,
             const std::function<std::string()>& check) {
        auto t0 = Clock::now();
        std::string witness;
        try {
            witness = check();
        } catch (const std::exception& ex) {
            witness = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        report.checks.push_back({id, anchor, witness.empty(), witness, secs});
    }
};

Rat random_rat(Rng& rng) {
    long num = static_cast<long>(rng.below(41)) - 20;
    long den = static_cast<long>(rng.below(9)) + 1;
    return rat(num, den);
}

std::string bits_str(const std::vector<int>& s) {
    std::string out;
    for (int b : s) out += static_cast<char>('0' + b);
    return out;
}

int hamming(const std::vector<int>& a, const std::vector<int>& b) {
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace

std::string Report::summary() const {
    std::ostringstream out;
    for (const auto& c : checks)
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  [" << c.anchor << "]"
            << (c.pass ? "" : "  -- " + c.witness) << "\n";
    return out.str();
}

std::string check_standard_catalog(const Gadget& g, size_t expected) {
    if (g.catalog.size() != expected)
        return gadget_kind_name(g.kind) + ": " + std::to_string(g.catalog.size()) +
               " standard subtours, expected " + std::to_string(expected);
    if (g.kind == GadgetKind::star4) return "";
    std::set<std::string> labels;
    for (const auto& e : g.catalog)
        if (!labels.insert(e.label.str()).second)
            return gadget_kind_name(g.kind) + ": duplicate standard label " + e.label.str();
    return "";
}

std::string check_path_weight_formula(const Gadget& g) {
    for (const auto& e : g.catalog) {
        Rat want(0);
        const auto& s = e.label.s;
        for (size_t i = 0; i + 1 < s.size(); ++i)
            want += (s[i] == s[i + 1]) ? g.sigma[i] : g.delta[i];
        if (e.weight != want)
            return gadget_kind_name(g.kind) + " " + e.label.str() + ": weight " +
                   num_str(e.weight) + "/" + den_str(e.weight) + " != formula";
    }
    return "";
}

std::string check_star_weight_formula(const Gadget& g) {
    for (const auto& e : g.catalog) {
        Rat want(0);
        const auto& s = e.label.s;
        for (size_t i = 1; i < s.size(); ++i)
            want += (s[0] == s[i]) ? g.sigma[i - 1] : g.delta[i - 1];
        if (e.weight != want)
            return gadget_kind_name(g.kind) + " " + e.label.str() + ": weight != first-coordinate formula";
    }
    return "";
}

std::string check_involved_edge_table(const Gadget& g) {
    // expected involved-edge counts between distinct standard subtours
    std::map<std::pair<std::string, std::string>, int> expect;
    auto put = [&](const std::string& a, const std::string& b, int c) {
        expect[{a, b}] = c;
        expect[{b, a}] = c;
    };
    int t = static_cast<int>(g.sides.size());
    if (t == 1) {
        put("0", "1", 3);
    } else if (t == 2) {
        for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
                 {"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}})
            put(a, b, 3);
        put("00", "11", 4);
        put("01", "10", 4);
    } else {
        const char* three[] = {"000:001", "000:010", "000:100", "001:011", "001:101",
                               "010:011", "010:110", "100:101", "100:110", "011:111",
                               "101:111", "110:111"};
        const char* four[] = {"000:011", "000:101", "000:110", "001:010", "001:100",
                              "001:111", "010:100", "011:101", "100:111", "101:110"};
        const char* five[] = {"000:111", "001:110", "010:101", "100:011"};
        const char* six[] = {"010:111", "011:110"};
        for (auto* row : three) put(std::string(row).substr(0, 3), std::string(row).substr(4), 3);
        for (auto* row : four) put(std::string(row).substr(0, 3), std::string(row).substr(4), 4);
        for (auto* row : five) put(std::string(row).substr(0, 3), std::string(row).substr(4), 5);
        for (auto* row : six) put(std::string(row).substr(0, 3), std::string(row).substr(4), 6);
    }
    for (const auto& a : g.catalog)
        for (const auto& b : g.catalog) {
            if (a.label == b.label) continue;
            auto key = std::make_pair(bits_str(a.label.s), bits_str(b.label.s));
            auto it = expect.find(key);
            if (it == expect.end()) return "missing table row " + key.first + "/" + key.second;
            int got = involved_edges(g, a.mask, b.mask);
            if (got != it->second)
                return "pair {" + key.first + "," + key.second + "}: " + std::to_string(got) +
                       " involved edges, expected " + std::to_string(it->second);
        }
    return "";
}

std::string check_nonstandard_side_parity(const Gadget& g) {
    for (uint32_t mask : g.subtours) {
        auto label = g.classify_mask(mask);
        if (label) continue;  // standard
        auto deg = g.mask_degrees(mask);
        bool portal_deg2 = false;
        for (int x = 0; x < g.vertex_count(); ++x)
            if (g.roles[x] != VRole::internal && deg[x] >= 2) portal_deg2 = true;
        if (portal_deg2) continue;
        int odd_sides = 0;
        for (const auto& side : g.sides)
            if (std::abs(deg[side.x] - deg[side.xbar]) == 1) ++odd_sides;
        if (odd_sides != 2)
            return "non-standard subtour mask " + std::to_string(mask) + " has " +
                   std::to_string(odd_sides) + " inconsistent sides, expected 2";
    }
    return "";
}

std::string check_star_change_classification(const Gadget& g) {
    for (const auto& a : g.catalog)
        for (const auto& b : g.catalog) {
            if (a.label == b.label) continue;
            int d = hamming(a.label.s, b.label.s);
            auto cls = classify_change(g, a.mask, b.mask);
            if (d == 1) {
                size_t i = 0;
                while (a.label.s[i] == b.label.s[i]) ++i;
                bool want_two_five = g.sides[i].regular();
                if (cls.kind == ChangeClass::other)
                    return "hamming-1 pair " + a.label.str() + "/" + b.label.str() +
                           " not a 2- or 2.5-change";
                if (cls.side != static_cast<int>(i))
                    return "change at wrong side for " + a.label.str() + "/" + b.label.str();
                if (want_two_five != (cls.kind == ChangeClass::two_five_change))
                    return "change kind mismatch for " + a.label.str() + "/" + b.label.str();
            } else {
                if (cls.kind != ChangeClass::other)
                    return "hamming-" + std::to_string(d) + " pair " + a.label.str() + "/" +
                           b.label.str() + " classified as a change";
            }
        }
    return "";
}

std::string check_star4_table(const Gadget& g, const Rat& eps_tilde) {
    if (g.catalog.size() != 14)
        return "star-4 has " + std::to_string(g.catalog.size()) + " standard subtours";
    // label -> expected weight multiset
    std::map<std::string, std::multiset<std::string>> expect;
    auto w = [&](const Rat& r) { return num_str(r) + "/" + den_str(r); };
    Rat m1 = rat(-1), z = rat(0);
    expect["0111"] = {w(m1 - eps_tilde), w(m1)};
    expect["1111"] = {w(-eps_tilde), w(z)};
    expect["1011"] = {w(m1 - eps_tilde)};
    expect["0011"] = {w(-eps_tilde)};
    expect["0001"] = {w(m1 - eps_tilde)};
    expect["1001"] = {w(-eps_tilde)};
    expect["1000"] = {w(m1)};
    expect["0000"] = {w(z)};
    expect["0100"] = {w(m1)};
    expect["1100"] = {w(z)};
    expect["1110"] = {w(m1)};
    expect["0110"] = {w(z)};
    std::map<std::string, std::multiset<std::string>> got;
    for (const auto& e : g.catalog) got[bits_str(e.label.s)].insert(w(e.weight));
    if (got != expect) {
        for (const auto& [label, weights] : expect) {
            auto it = got.find(label);
            if (it == got.end()) return "star-4 label " + label + " missing";
            if (it->second != weights) return "star-4 label " + label + " has wrong weights";
        }
        return "star-4 has unexpected labels";
    }
    return "";
}

std::string check_star4_pi_chain(const Gadget& g) {
    auto is_n_subtour = [&](const CatalogEntry& e) {
        return bits_str(e.label.s) == "1111" && e.weight == 0;
    };
    for (const auto& e : g.catalog) {
        PiState s{e.label.s[0], e.label.s[1], e.label.s[2], e.label.s[3]};
        if (!pi_on_cycle(s)) return "standard label " + e.label.str() + " off the state cycle";
        if (is_n_subtour(e)) continue;
        PiState nxt = pi_successor(s);
        bool found = false;
        for (const auto& e2 : g.catalog) {
            if (!(e2.label.s == std::vector<int>{nxt[0], nxt[1], nxt[2], nxt[3]})) continue;
            auto cls = classify_change(g, e.mask, e2.mask);
            if (cls.kind != ChangeClass::other) found = true;
        }
        if (!found)
            return "no 2-/2.5-change from " + e.label.str() + " toward its successor state";
    }
    return "";
}

std::string check_xor_gadget(const Gadget& g, long q) {
    if (q >= 3 && g.subtours.size() != 2)
        return "xor(" + std::to_string(q) + ") has " + std::to_string(g.subtours.size()) +
               " subtours, expected 2";
    if (g.catalog.size() != 2) return "xor gadget catalog size != 2";
    int inv = involved_edges(g, g.catalog[0].mask, g.catalog[1].mask);
    if (inv != 2 * q - 2)
        return "odd/even change involves " + std::to_string(inv) + " edges, expected " +
               std::to_string(2 * q - 2);
    return "";
}

Report verify_gadget_lemmas() {
    Runner r;
    Rng rng(0xfeedbeef);

    for (int t = 1; t <= 3; ++t) {
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Rat> sigma, delta;
            for (int i = 0; i + 1 < t; ++i) {
                sigma.push_back(random_rat(rng));
                delta.push_back(random_rat(rng));
            }
            auto g = make_path_gadget(t, sigma, delta);
            std::string tag = "path-" + std::to_string(t) + "#" + std::to_string(rep);
            r.run(tag + "/uniqueness", "one subtour per label",
                  [&] { return check_standard_catalog(g, 1u << t); });
            r.run(tag + "/weights", "subtour weight formula",
                  [&] { return check_path_weight_formula(g); });
            r.run(tag + "/involved", "involved-edge table",
                  [&] { return check_involved_edge_table(g); });
            r.run(tag + "/ns-parity", "two inconsistent sides in non-standard subtours",
                  [&] { return check_nonstandard_side_parity(g); });
        }
    }

    for (int rep = 0; rep < 3; ++rep) {
        std::vector<Rat> s1{random_rat(rng)}, d1{random_rat(rng)};
        std::vector<Rat> s2{random_rat(rng)}, d2{random_rat(rng)};
        std::vector<Rat> s3{random_rat(rng), random_rat(rng)},
            d3{random_rat(rng), random_rat(rng)};
        auto star1 = make_star_gadget(GadgetKind::star1, {}, {});
        auto star2ir = make_star_gadget(GadgetKind::star2_ir, s1, d1);
        auto star2ii = make_star_gadget(GadgetKind::star2_ii, s2, d2);
        auto star3 = make_star_gadget(GadgetKind::star3, s3, d3);
        std::string tag = "star#" + std::to_string(rep);
        r.run(tag + "/uniqueness", "one subtour per label", [&] {
            std::string w = check_standard_catalog(star1, 2);
            if (w.empty()) w = check_standard_catalog(star2ir, 4);
            if (w.empty()) w = check_standard_catalog(star2ii, 4);
            if (w.empty()) w = check_standard_catalog(star3, 8);
            return w;
        });
        r.run(tag + "/weights", "first-coordinate weight formula", [&] {
            std::string w = check_star_weight_formula(star2ir);
            if (w.empty()) w = check_star_weight_formula(star2ii);
            if (w.empty()) w = check_star_weight_formula(star3);
            return w;
        });
        r.run(tag + "/changes", "hamming-1 pairs are 2-/2.5-changes", [&] {
            std::string w = check_star_change_classification(star1);
            if (w.empty()) w = check_star_change_classification(star2ir);
            if (w.empty()) w = check_star_change_classification(star2ii);
            if (w.empty()) w = check_star_change_classification(star3);
            return w;
        });
    }

    Rat et = rat_pow2(-4);
    auto star4 = make_star_gadget(GadgetKind::star4, {}, {}, et);
    r.run("star4/catalog", "the 14 standard subtours with table weights",
          [&] { return check_star4_table(star4, et); });
    r.run("star4/pi-chain", "successor states reachable by 2-/2.5-changes",
          [&] { return check_star4_pi_chain(star4); });

    for (long q : {3L, 4L, 5L}) {
        auto g = make_vertex_gadget(VertexGadgetSpec::make_xor(q));
        r.run("xor" + std::to_string(q), "only standard subtours; 2q-2 involved edges",
              [&] { return check_xor_gadget(g, q); });
    }
    r.run("stick", "(0)-vertex gadget", [&] {
        auto g = make_vertex_gadget(VertexGadgetSpec::make_stick());
        if (g.catalog.size() != 2) return std::string("stick catalog size != 2");
        if (involved_edges(g, g.catalog[0].mask, g.catalog[1].mask) != 0)
            return std::string("odd/even change of a stick involves edges");
        return std::string();
    });
    r.run("buoy", "(2)-vertex gadget", [&] {
        auto g = make_vertex_gadget(VertexGadgetSpec::make_buoy());
        if (g.catalog.size() != 2) return std::string("buoy catalog size != 2");
        if (involved_edges(g, g.catalog[0].mask, g.catalog[1].mask) != 2)
            return std::string("odd/even change of a buoy does not involve 2 edges");
        return std::string();
    });
    r.run("node-gadgets", "single standard subtour", [&] {
        auto reg = make_node_gadget(true);
        auto irr = make_node_gadget(false);
        if (reg.subtours.size() != 1 || irr.subtours.size() != 1)
            return std::string("node gadget subtour count != 1");
        if (irr.catalog.front().mask != 3u)
            return std::string("irregular node subtour is not the whole 2-path");
        return std::string();
    });
    return r.report;
}

namespace {

Cut random_cut(Rng& rng, int n) {
    Cut c = Cut::all_two(n);
    for (int i = 0; i < n; ++i) c.one[i] = rng.below(2);
    return c;
}

// Random cut whose length-4 sequence states stay on the state cycle, so a
// standard tour exists.
Cut random_cut_25(Rng& rng, const Reduction25& red) {
    Cut c = random_cut(rng, red.ms.graph.vertex_count());
    for (const auto& s : red.sequences) {
        if (s.verts.size() != 4) continue;
        const auto& cyc = pi_cycle();
        PiState st = cyc[rng.below(cyc.size())];
        for (int i = 0; i < 4; ++i) c.one[s.verts[i]] = st[i];
    }
    return c;
}

}  // namespace

Report verify_reduction(long n, long p, const std::string& k) {
    Runner r;
    if (k == "2.5") {
        Reduction25 red = build_reduction_25(n, p);
        r.run("build/simple", "portal identifications keep the graph simple",
              [&] { return std::string(); });  // build_reduction_25 would have thrown
        r.run("tau0/standard", "initial tour is standard and maps to the initial cut", [&] {
            Tour t0 = initial_tour_tau0(red);
            auto chk = is_standard_25(red, t0);
            if (!chk.standard) return std::string("tau0 not standard");
            if (!(phi(red, t0) == red.ms.initial_cut))
                return std::string("phi(tau0) != initial cut");
            return std::string();
        });
        r.run("objective/band", "tour weight + cut value within [-n*eps~, 0]", [&] {
            Rng rng(42);
            Rat lo = -Rat(n) * red.eps_tilde;
            for (int rep = 0; rep < 100; ++rep) {
                Cut c = random_cut_25(rng, red);
                Tour t = standard_tour_from_cut_25(red, c);
                Rat sum = tour_weight(red.tsp, t, red.big_m) + cut_value(red.ms.graph, c);
                if (sum < lo || sum > 0)
                    return "cut #" + std::to_string(rep) + ": sum outside the band";
            }
            return std::string();
        });
        r.run("run/standardness+progress", "improving runs stay standard and keep pace", [&] {
            TspInstance inst{red.tsp, red.big_m};
            Tour tour = initial_tour_tau0(red);
            std::string witness;
            long flips_expected = 0;
            {
                auto ft = run_flip(red.ms.graph, red.ms.initial_cut, PivotRule::first(),
                                   1000000);
                flips_expected = static_cast<long>(ft.length());
            }
            long steps = 0;
            Cut prev_cut = phi(red, tour);
            long flips_seen = 0;
            while (steps < 20 * flips_expected + 100) {
                bool want_more = !improving_flips(red.ms.graph, prev_cut).empty();
                auto cands = enumerate_improving_swaps(inst, tour, KSpec::twofive());
                if (cands.empty()) {
                    if (want_more) return std::string("no improving swap despite improving flip");
                    break;
                }
                tour = apply_swap(tour, cands.front().swap);
                ++steps;
                auto chk = is_standard_25(red, tour);
                if (!chk.standard)
                    return "non-standard tour after step " + std::to_string(steps);
                Cut cut = phi(red, tour);
                int d = 0;
                for (int v = 0; v < cut.size(); ++v) d += cut.one[v] != prev_cut.one[v];
                if (d > 1) return std::string("phi jumped by more than one flip");
                if (d == 1) {
                    Rat before = cut_value(red.ms.graph, prev_cut);
                    Rat after = cut_value(red.ms.graph, cut);
                    if (!(after > before))
                        return std::string("projected flip is not improving");
                    ++flips_seen;
                }
                prev_cut = cut;
            }
            if (flips_seen != flips_expected)
                return "projected " + std::to_string(flips_seen) + " flips, expected " +
                       std::to_string(flips_expected);
            if (steps < flips_expected) return std::string("swap run shorter than flip run");
            return witness;
        });
        return r.report;
    }

    int kk = std::stoi(k);
    MSInstance ms = build_h_np(n, p);
    PathCover cover = canonical_cover(ms);
    Reduction red = build_reduction(ms.graph, cover, kk);
    r.run("build/simple", "portal identifications keep the graph simple",
          [&] { return std::string(); });
    r.run("girth/precondition", "girth exceeds 4k for k in {3,4}", [&] {
        auto g = girth(ms.graph);
        if ((kk == 3 || kk == 4) && g && *g <= 4 * kk) return std::string("girth too small");
        return std::string();
    });
    r.run("objective/zero-sum", "tour weight + cut value = 0", [&] {
        Rng rng(7);
        for (int rep = 0; rep < 100; ++rep) {
            Cut c = random_cut(rng, ms.graph.vertex_count());
            Tour t = standard_tour_from_cut(red, c);
            if (tour_weight(red.tsp, t, red.big_m) + cut_value(ms.graph, c) != 0)
                return "cut #" + std::to_string(rep) + " breaks the zero sum";
        }
        return std::string();
    });
    r.run("bijection/round-trip", "cut -> standard tour -> cut identity", [&] {
        Rng rng(11);
        std::set<std::vector<VPair>> tours;
        for (int rep = 0; rep < 100; ++rep) {
            Cut c = random_cut(rng, ms.graph.vertex_count());
            Tour t = standard_tour_from_cut(red, c);
            tours.insert(t.edges);
            if (!(cut_from_standard_tour(red, t) == c))
                return "round trip failed at cut #" + std::to_string(rep);
        }
        return std::string();
    });
    r.run("neighbors/sampled", "flip neighbors <-> k-swaps", [&] {
        Rng rng(13);
        for (int rep = 0; rep < 50; ++rep) {
            Cut c1 = random_cut(rng, ms.graph.vertex_count());
            int v = static_cast<int>(rng.below(ms.graph.vertex_count()));
            Cut c2 = apply_flip(c1, v);
            Tour t1 = standard_tour_from_cut(red, c1);
            Tour t2 = standard_tour_from_cut(red, c2);
            std::vector<VPair> diff;
            std::set_difference(t1.edges.begin(), t1.edges.end(), t2.edges.begin(),
                                t2.edges.end(), std::back_inserter(diff));
            if (static_cast<int>(diff.size()) != kk)
                return "flip neighbor at rep " + std::to_string(rep) + " differs by " +
                       std::to_string(diff.size()) + " edges, expected " + std::to_string(kk);
        }
        for (int rep = 0; rep < 20; ++rep) {
            Cut c1 = random_cut(rng, ms.graph.vertex_count());
            Cut c2 = c1;
            int a = static_cast<int>(rng.below(ms.graph.vertex_count()));
            int b = (a + 1 + static_cast<int>(rng.below(ms.graph.vertex_count() - 1))) %
                    ms.graph.vertex_count();
            c2.one[a] = !c2.one[a];
            c2.one[b] = !c2.one[b];
            Tour t1 = standard_tour_from_cut(red, c1);
            Tour t2 = standard_tour_from_cut(red, c2);
            std::vector<VPair> diff;
            std::set_difference(t1.edges.begin(), t1.edges.end(), t2.edges.begin(),
                                t2.edges.end(), std::back_inserter(diff));
            if (static_cast<int>(diff.size()) <= kk)
                return std::string("two-flip neighbor reachable by a k-swap");
        }
        return std::string();
    });
    if (kk == 3 || kk == 4) {
        r.run("closure/sampled", "no k-swap leaves the standard tours", [&] {
            Rng rng(17);
            TspInstance inst{red.tsp, red.big_m};
            for (int rep = 0; rep < 3; ++rep) {
                Tour t = standard_tour_from_cut(red, random_cut(rng, ms.graph.vertex_count()));
                auto cands =
                    enumerate_swaps(inst, t, KSpec::kswap(kk), EnumOptions{false, false});
                for (const auto& cand : cands) {
                    Tour t2 = apply_swap(t, cand.swap);
                    if (!is_standard(red, t2).standard)
                        return std::string("a k-swap reached a non-standard tour");
                }
            }
            return std::string();
        });
    }
    return r.report;
}

ScalingReport verify_scaling(const std::vector<long>& n_range, long p, const std::string& k,
                             const std::vector<PivotRule>& pivots) {
    Runner r;
    std::ostringstream csv;
    csv << "n,pivot,flip_len,kopt_len\n";

    const bool prime_side = k.empty() || k == "2.5";
    std::map<long, long> flip_len;

    for (long n : n_range) {
        MSInstance ms = prime_side ? build_h_prime_np(n, p) : build_h_np(n, p);
        std::vector<char> excluded(ms.graph.vertex_count(), 0);
        if (prime_side)
            for (const auto& name : projection_exclusions(n)) excluded[ms.vertex(name)] = 1;
        std::vector<std::string> want;
        if (prime_side) want = predict_flip_projection(n, p);

        for (const auto& pivot : pivots) {
            auto trace = run_flip(ms.graph, ms.initial_cut, pivot, 100000000L);
            std::string tag = "n=" + std::to_string(n) + "/" + pivot.name();
            if (flip_len.count(n) && flip_len[n] != static_cast<long>(trace.length())) {
                r.report.checks.push_back({tag + "/len", "pivot-independent run length", false,
                                           "length differs between pivots", 0.0});
            }
            flip_len[n] = static_cast<long>(trace.length());
            csv << n << "," << pivot.name() << "," << trace.length() << ",\n";
            if (trace.reason != FlipTrace::local_optimum)
                r.report.checks.push_back(
                    {tag + "/terminates", "flip run reaches a local optimum", false, "", 0.0});

            if (prime_side) {
                r.run(tag + "/projection", "projected flip order matches the recursion", [&] {
                    auto proj = project_trace(trace, excluded);
                    if (proj.size() != want.size())
                        return "projection length " + std::to_string(proj.size()) +
                               " != " + std::to_string(want.size());
                    for (size_t i = 0; i < proj.size(); ++i)
                        if (ms.graph.labels[proj[i]] != want[i])
                            return "projection differs at step " + std::to_string(i);
                    // independent count: projection length plus one subdivision
                    // flip per ladder vertex per pass
                    long u_flips = 0;
                    for (long i = 1; i <= n; ++i) {
                        long passes = 1;
                        for (long j = i; j < n; ++j) passes *= 3;
                        u_flips += 3 * passes;
                    }
                    if (static_cast<long>(trace.length()) !=
                        static_cast<long>(want.size()) + u_flips)
                        return std::string("run length != projection length + ladder flips");
                    return std::string();
                });
                r.run(tag + "/pi", "quadruple states follow the cycle", [&] {
                    bool quoted_seen = false;
                    Cut cut = ms.initial_cut;
                    std::vector<std::array<int, 4>> quads;
                    for (long i = 1; i <= n; ++i)
                        quads.push_back({ms.vertex(ms_vname(i - 1, 8)),
                                         ms.vertex(ms_vname(i, 3)), ms.vertex(ms_vname(i, 5)),
                                         ms.vertex(ms_vname(i, 7))});
                    auto state = [&](const std::array<int, 4>& q) {
                        return PiState{cut.one[q[0]], cut.one[q[1]], cut.one[q[2]],
                                       cut.one[q[3]]};
                    };
                    std::vector<PiState> prev;
                    for (const auto& q : quads) prev.push_back(state(q));
                    for (const auto& step : trace.steps) {
                        cut.one[step.vertex] = !cut.one[step.vertex];
                        for (size_t qi = 0; qi < quads.size(); ++qi) {
                            const auto& q = quads[qi];
                            bool member = false;
                            for (int x : q) member |= x == step.vertex;
                            if (!member) continue;
                            PiState now = state(quads[qi]);
                            PiState expect = pi_successor(prev[qi]);
                            if (now != expect)
                                return "state transition off the cycle at vertex " +
                                       ms.graph.labels[step.vertex];
                            if (prev[qi] == PiState{1, 1, 1, 1} && now == PiState{1, 0, 1, 1})
                                quoted_seen = true;
                            prev[qi] = now;
                        }
                    }
                    if (!quoted_seen)
                        return std::string("(1,1,1,1)->(1,0,1,1) transition never observed");
                    return std::string();
                });
            }
        }
    }

    if (k.empty()) {
        r.run("growth/ratios", "consecutive run-length ratios within [2.5, 3.5]", [&] {
            std::string witness;
            for (size_t i = 1; i < n_range.size(); ++i) {
                long a = flip_len[n_range[i - 1]], b = flip_len[n_range[i]];
                double ratio = static_cast<double>(b) / static_cast<double>(a);
                if (ratio < 2.5 || ratio > 3.5)
                    witness += "len(" + std::to_string(n_range[i]) + ")/len(" +
                               std::to_string(n_range[i - 1]) + ") = " + std::to_string(ratio) +
                               " outside [2.5, 3.5]; ";
            }
            return witness;
        });
    }

    if (!k.empty()) {
        for (long n : n_range) {
            if (k == "2.5") {
                Reduction25 red = build_reduction_25(n, p);
                TspInstance inst{red.tsp, red.big_m};
                Tour tau0 = initial_tour_tau0(red);
                for (const auto& pivot : pivots) {
                    std::string tag = "kopt2.5/n=" + std::to_string(n) + "/" + pivot.name();
                    r.run(tag, "swap run covers the flip run through standard tours", [&] {
                        std::string witness;
                        long bound = 40 * flip_len[n] + 1000;
                        auto trace = run_kopt(inst, tau0, KSpec::twofive(), pivot, bound,
                                              [&](const Tour& t, const SwapStep&) {
                                                  if (witness.empty() &&
                                                      !is_standard_25(red, t).standard)
                                                      witness = "non-standard tour visited";
                                              });
                        if (!witness.empty()) return witness;
                        if (trace.reason != SwapTrace::local_optimum)
                            return std::string("run hit the step bound");
                        if (static_cast<long>(trace.length()) < flip_len[n])
                            return std::string("swap run shorter than the flip run");
                        if (!improving_flips(red.ms.graph, phi(red, trace.final)).empty())
                            return std::string("final cut is not a flip local optimum");
                        csv << n << "," << pivot.name() << "," << flip_len[n] << ","
                            << trace.length() << "\n";
                        return std::string();
                    });
                }
            } else {
                int kk = std::stoi(k);
                MSInstance ms = build_h_np(n, p);
                Reduction red = build_reduction(ms.graph, canonical_cover(ms), kk);
                TspInstance inst{red.tsp, red.big_m};
                Tour start = standard_tour_from_cut(red, ms.initial_cut);
                for (const auto& pivot : pivots) {
                    std::string tag = "kopt" + k + "/n=" + std::to_string(n) + "/" +
                                      pivot.name();
                    r.run(tag, "swap run mirrors the flip run exactly", [&] {
                        std::string witness;
                        long bound = 4 * flip_len[n] + 1000;
                        auto trace = run_kopt(inst, start, KSpec::kswap(kk), pivot, bound,
                                              [&](const Tour& t, const SwapStep&) {
                                                  if (witness.empty() &&
                                                      !is_standard(red, t).standard)
                                                      witness = "non-standard tour visited";
                                              });
                        if (!witness.empty()) return witness;
                        if (trace.reason != SwapTrace::local_optimum)
                            return std::string("run hit the step bound");
                        if (static_cast<long>(trace.length()) != flip_len[n])
                            return "swap run length " + std::to_string(trace.length()) +
                                   " != flip run length " + std::to_string(flip_len[n]);
                        csv << n << "," << pivot.name() << "," << flip_len[n] << ","
                            << trace.length() << "\n";
                        return std::string();
                    });
                }
            }
        }
    }

    return {std::move(r.report), csv.str()};
}

}  // namespace kadv
