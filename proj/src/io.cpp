#include "kadv/io.hpp"

#include <fstream>
#include <sstream>

namespace kadv {

Json rat_to_json(const Rat& r) { return Json{{"num", num_str(r)}, {"den", den_str(r)}}; }

Rat rat_from_json(const Json& j) {
    return rat_parse(j.at("num").get<std::string>(), j.at("den").get<std::string>());
}

Json graph_to_json(const WeightedGraph& g) {
    Json j;
    j["labels"] = g.labels;
    Json edges = Json::array();
    for (const auto& e : g.edges) edges.push_back(Json::array({e.u, e.v, rat_to_json(e.w)}));
    j["edges"] = std::move(edges);
    return j;
}

WeightedGraph graph_from_json(const Json& j) {
    WeightedGraph g;
    for (const auto& label : j.at("labels")) g.add_vertex(label.get<std::string>());
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>(), rat_from_json(e.at(2)));
    return g;
}

Json cut_to_json(const Cut& c) {
    std::string bits(c.one.size(), '0');
    for (int i = 0; i < c.size(); ++i)
        if (c.one[i]) bits[i] = '1';
    return Json(bits);
}

Cut cut_from_json(const Json& j) {
    auto bits = j.get<std::string>();
    Cut c;
    c.one.reserve(bits.size());
    for (char b : bits) {
        if (b != '0' && b != '1') throw ParseError("bad cut bit string");
        c.one.push_back(b == '1');
    }
    return c;
}

Json tour_to_json(const Tour& t) {
    Json edges = Json::array();
    for (const auto& [u, v] : t.edges) edges.push_back(Json::array({u, v}));
    return edges;
}

Tour tour_from_json(const Json& j, int n) {
    std::vector<VPair> edges;
    for (const auto& e : j) edges.push_back(vpair(e.at(0).get<int>(), e.at(1).get<int>()));
    return Tour::from_edges(n, std::move(edges));
}

Json swap_to_json(const Swap& s) {
    Json j;
    Json rm = Json::array(), ad = Json::array();
    for (const auto& [u, v] : s.removed) rm.push_back(Json::array({u, v}));
    for (const auto& [u, v] : s.added) ad.push_back(Json::array({u, v}));
    j["removed"] = std::move(rm);
    j["added"] = std::move(ad);
    return j;
}

Swap swap_from_json(const Json& j) {
    Swap s;
    for (const auto& e : j.at("removed")) s.removed.push_back(vpair(e.at(0), e.at(1)));
    for (const auto& e : j.at("added")) s.added.push_back(vpair(e.at(0), e.at(1)));
    return s;
}

namespace {

Json placed_gadget_to_json(const PlacedGadget& pg) {
    Json j;
    j["kind"] = gadget_kind_name(pg.proto.kind);
    j["entity"] = pg.h_entity;
    j["vertices"] = pg.global;
    Json names = Json::array();
    for (const auto& nm : pg.proto.vnames) names.push_back(nm);
    j["local_names"] = std::move(names);
    if (!pg.proto.sigma.empty()) {
        Json s = Json::array();
        for (const auto& r : pg.proto.sigma) s.push_back(rat_to_json(r));
        j["sigma"] = std::move(s);
    }
    if (!pg.proto.delta.empty()) {
        Json d = Json::array();
        for (const auto& r : pg.proto.delta) d.push_back(rat_to_json(r));
        j["delta"] = std::move(d);
    }
    return j;
}

}  // namespace

Json maxcut_instance_to_json(const MSInstance& inst, const std::string& family) {
    Json j;
    j["format"] = 1;
    j["kind"] = "maxcut";
    j["params"] = Json{{"family", family},
                       {"n", inst.n},
                       {"p", inst.p},
                       {"eps", rat_to_json(inst.eps)}};
    j["graph"] = graph_to_json(inst.graph);
    j["initial_cut"] = cut_to_json(inst.initial_cut);
    return j;
}

Json tsp_instance_to_json(const Reduction& red, const Tour& initial, long n, long p) {
    Json j;
    j["format"] = 1;
    j["kind"] = "tsp";
    j["params"] = Json{{"k", std::to_string(red.k)}, {"n", n}, {"p", p}};
    j["graph"] = graph_to_json(red.tsp);
    j["big_m"] = rat_to_json(red.big_m);
    j["initial_tour"] = tour_to_json(initial);
    Json reg;
    Json cover = Json::array();
    for (const auto& path : red.cover) cover.push_back(path);
    reg["cover"] = std::move(cover);
    Json labels = Json::array();
    for (const auto& l : red.labels) labels.push_back(l);
    reg["labels"] = std::move(labels);
    Json gadgets = Json::array();
    for (const auto& pg : red.gadgets) gadgets.push_back(placed_gadget_to_json(pg));
    reg["gadgets"] = std::move(gadgets);
    reg["maxcut_graph"] = graph_to_json(red.h);
    j["registry"] = std::move(reg);
    return j;
}

Json tsp_instance_to_json(const Reduction25& red, const Tour& initial) {
    Json j;
    j["format"] = 1;
    j["kind"] = "tsp";
    j["params"] = Json{{"k", "2.5"},
                       {"n", red.ms.n},
                       {"p", red.ms.p},
                       {"eps", rat_to_json(red.ms.eps)},
                       {"eps_tilde", rat_to_json(red.eps_tilde)}};
    j["graph"] = graph_to_json(red.tsp);
    j["big_m"] = rat_to_json(red.big_m);
    j["initial_tour"] = tour_to_json(initial);
    Json reg;
    Json seqs = Json::array();
    for (const auto& s : red.sequences)
        seqs.push_back(Json{{"verts", s.verts},
                            {"label", s.label},
                            {"kind", gadget_kind_name(s.kind)}});
    reg["sequences"] = std::move(seqs);
    Json nodes = Json::array();
    for (const auto& pg : red.node_gadgets) nodes.push_back(placed_gadget_to_json(pg));
    reg["node_gadgets"] = std::move(nodes);
    Json stars = Json::array();
    for (const auto& pg : red.star_gadgets) stars.push_back(placed_gadget_to_json(pg));
    reg["star_gadgets"] = std::move(stars);
    reg["maxcut_graph"] = graph_to_json(red.ms.graph);
    reg["initial_cut"] = cut_to_json(red.ms.initial_cut);
    j["registry"] = std::move(reg);
    return j;
}

LoadedInstance load_instance(const Json& j) {
    LoadedInstance out;
    out.raw = j;
    if (j.at("format").get<int>() != 1) throw ParseError("unknown format version");
    out.kind = j.at("kind").get<std::string>();
    out.graph = graph_from_json(j.at("graph"));
    const auto& params = j.at("params");
    if (params.contains("n")) out.n = params.at("n").get<long>();
    if (params.contains("p")) out.p = params.at("p").get<long>();
    if (out.kind == "maxcut") {
        out.initial_cut = cut_from_json(j.at("initial_cut"));
        if (out.initial_cut.size() != out.graph.vertex_count())
            throw ParseError("initial cut does not match graph");
    } else if (out.kind == "tsp") {
        out.big_m = rat_from_json(j.at("big_m"));
        out.initial_tour = tour_from_json(j.at("initial_tour"), out.graph.vertex_count());
        out.k = params.at("k").get<std::string>();
    } else {
        throw ParseError("unknown instance kind: " + out.kind);
    }
    return out;
}

LoadedInstance load_instance_file(const std::string& path) {
    return load_instance(Json::parse(read_file(path)));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tsplib_full_matrix(const WeightedGraph& g, const Rat& big_m, long n,
                               const std::string& name) {
    const mpz_class limit = mpz_class(1) << 62;
    const Rat scale = rat_pow2(2 * n);
    const int m = g.vertex_count();
    std::ostringstream out;
    out << "NAME: " << name << "\n";
    out << "TYPE: TSP\n";
    out << "COMMENT: weights scaled by 2^" << 2 * n << "\n";
    out << "DIMENSION: " << m << "\n";
    out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
    out << "EDGE_WEIGHT_SECTION\n";
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            Rat w = u == v ? Rat(0) : Rat(0);
            if (u != v) {
                auto e = g.find_edge(u, v);
                w = e ? g.edges[*e].w : big_m;
            }
            Rat scaled = w * scale;
            if (scaled.get_den() != 1)
                throw PreconditionViolation("weight " + num_str(w) + "/" + den_str(w) +
                                            " does not scale to an integer");
            if (abs(scaled.get_num()) > limit)
                throw TooLarge("scaled weight exceeds 2^62");
            out << scaled.get_num().get_str() << (v + 1 == m ? "" : " ");
        }
        out << "\n";
    }
    out << "EOF\n";
    return out.str();
}

std::string flip_trace_csv_unified(const WeightedGraph& g, const FlipTrace& trace) {
    std::ostringstream out;
    out << "step,move_kind,detail,delta_num,delta_den,objective_num,objective_den\n";
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        out << i << ",flip," << g.labels[s.vertex] << ',' << num_str(s.gain) << ','
            << den_str(s.gain) << ',' << num_str(s.value) << ',' << den_str(s.value) << '\n';
    }
    return out.str();
}

std::string swap_trace_csv_unified(const SwapTrace& trace) {
    std::ostringstream out;
    out << "step,move_kind,detail,delta_num,delta_den,objective_num,objective_den\n";
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        std::ostringstream detail;
        detail << "-[";
        for (size_t e = 0; e < s.swap.removed.size(); ++e)
            detail << (e ? " " : "") << s.swap.removed[e].first << '-'
                   << s.swap.removed[e].second;
        detail << "]+[";
        for (size_t e = 0; e < s.swap.added.size(); ++e)
            detail << (e ? " " : "") << s.swap.added[e].first << '-' << s.swap.added[e].second;
        detail << ']';
        out << i << ",swap," << detail.str() << ',' << num_str(s.delta) << ','
            << den_str(s.delta) << ',' << num_str(s.weight) << ',' << den_str(s.weight) << '\n';
    }
    return out.str();
}

}  // namespace kadv
