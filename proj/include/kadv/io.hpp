#pragma once

#include <string>

#include "kadv/kopt.hpp"
#include "kadv/ms_family.hpp"
#include "kadv/reduction.hpp"
#include "kadv/reduction25.hpp"

#include <json.hpp>

namespace kadv {

using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);

Json cut_to_json(const Cut& c);
Cut cut_from_json(const Json& j);

Json tour_to_json(const Tour& t);
Tour tour_from_json(const Json& j, int n);

Json swap_to_json(const Swap& s);
Swap swap_from_json(const Json& j);

// Instance files. kind "maxcut": graph + initial cut + params.
// kind "tsp": construction graph + big_m + initial tour + registry.
Json maxcut_instance_to_json(const MSInstance& inst, const std::string& family);
Json tsp_instance_to_json(const Reduction& red, const Tour& initial, long n, long p);
Json tsp_instance_to_json(const Reduction25& red, const Tour& initial);

struct LoadedInstance {
    std::string kind;  // "maxcut" or "tsp"
    WeightedGraph graph;
    Cut initial_cut;    // maxcut
    Tour initial_tour;  // tsp
    Rat big_m;          // tsp
    long n = 0, p = 0;
    std::string k;  // tsp: "3", "4", "5", ..., "2.5"
    Json raw;       // full document, reserialized bit-exactly
};

LoadedInstance load_instance(const Json& j);
LoadedInstance load_instance_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// FULL_MATRIX explicit-weight export with all weights scaled by 2^(2n) to
// integers; throws if a scaled weight exceeds 2^62.
std::string tsplib_full_matrix(const WeightedGraph& g, const Rat& big_m, long n,
                               const std::string& name);

// Unified trace CSV: step,move_kind,detail,delta_num,delta_den,objective_num,objective_den
std::string flip_trace_csv_unified(const WeightedGraph& g, const FlipTrace& trace);
std::string swap_trace_csv_unified(const SwapTrace& trace);

}  // namespace kadv
