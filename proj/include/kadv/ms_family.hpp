#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kadv/cover.hpp"
#include "kadv/graph.hpp"
#include "kadv/maxcut.hpp"

namespace kadv {

// Vertex naming used by the hierarchical Max-Cut families:
//   v[i][j]        main vertices, i = level, j in 1..8 (level 0 has j in {1,8})
//   u[i][j][k]^t   t-th interior vertex of the length-p path from v[i][j]
//                  toward v[.][k], t in 1..p-1
//   u[i][j][k]     single subdivision vertex between v[i][j] and v[i][k]
//   v'1, v'2       anchor pair
std::string ms_vname(long i, long j);
std::string ms_uname(long i, long j, long k, long t);
std::string ms_subname(long i, long j);  // u[i][j][j-1]

struct MSInstance {
    WeightedGraph graph;
    Cut initial_cut;
    long n = 0, p = 3;
    Rat eps;
    bool prime = false;  // true for the subdivided variant
    std::unordered_map<std::string, int> name_index;

    int vertex(const std::string& name) const {
        auto it = name_index.find(name);
        if (it == name_index.end()) throw IndexError("no vertex named " + name);
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return name_index.count(name) != 0; }
};

// Hierarchy with the three per-level ladder edges kept as single edges.
// n = 0 yields just the level-0 path (no anchor pair).
MSInstance build_h_np(long n, long p, std::optional<Rat> eps = std::nullopt);

// Same topology with the per-level ladder edges v[i][j]-v[i][j-1],
// j in {3,5,7}, subdivided by u[i][j][j-1]. Requires n >= 1.
MSInstance build_h_prime_np(long n, long p, std::optional<Rat> eps = std::nullopt);

// The canonical 2-path 2-cover of build_h_np(n, p); n >= 1.
PathCover canonical_cover(const MSInstance& inst);
PathCover canonical_cover(long n, long p);

// The predicted flip order of the subdivided instance, projected away from
// the u[i][j][j-1] vertices: L'_0 = v[0][1]..v[0][8] along the level-0 path,
// L'_i = v[i][1] ~> v[i][2] ~> L'_{i-1} ~> v[i][3] ~> v[i][4] ~> L'_{i-1}
//        ~> v[i][5] ~> v[i][6] ~> L'_{i-1} ~> v[i][7] ~> v[i][8].
std::vector<std::string> predict_flip_projection(long n, long p);

// The vertices excluded by the projection: u[i][3][2], u[i][5][4], u[i][7][6].
std::vector<std::string> projection_exclusions(long n);

// State of a quadruple (v[i-1][8], v[i][3], v[i][5], v[i][7]): bit = 1 iff
// the vertex is in the 1-set.
using PiState = std::array<int, 4>;

// Next state clockwise on the 12-state cycle; throws OffCycle for the four
// states not on it.
PiState pi_successor(const PiState& s);
bool pi_on_cycle(const PiState& s);
const std::vector<PiState>& pi_cycle();

std::vector<int> project_trace(const FlipTrace& trace, const std::vector<char>& excluded);

}  // namespace kadv
