#include "kadv/ms_family.hpp"

#include <algorithm>
#include <set>

namespace kadv {

std::string ms_vname(long i, long j) {
    return "v[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

std::string ms_uname(long i, long j, long k, long t) {
    return "u[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(k) +
           "]^" + std::to_string(t);
}

std::string ms_subname(long i, long j) {
    return "u[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(j - 1) +
           "]";
}

namespace {

struct Builder {
    MSInstance inst;

    int vertex(const std::string& name) {
        auto it = inst.name_index.find(name);
        if (it != inst.name_index.end()) return it->second;
        int id = inst.graph.add_vertex(name);
        inst.name_index.emplace(name, id);
        return id;
    }

    void set_side(int v, bool one) {
        if (static_cast<int>(inst.initial_cut.one.size()) <= v)
            inst.initial_cut.one.resize(v + 1, 0);
        inst.initial_cut.one[v] = one ? 1 : 0;
    }

    // Length-p path from `from` toward `to` with interior names u[i][j][k]^t.
    // Weights start at w0 and move by `step` per edge. Interior vertex t goes
    // to the same cut side as `from` iff t is even, unless forced by
    // `force_side` (0/1), used for the all-even negative paths.
    void add_path(long i, long j, long k, int from, int to, const Rat& w0, const Rat& step,
                  long p, bool from_one, int force_side) {
        int prev = from;
        for (long t = 1; t < p; ++t) {
            int u = vertex(ms_uname(i, j, k, t));
            bool side = force_side >= 0 ? force_side != 0 : (t % 2 == 0 ? from_one : !from_one);
            set_side(u, side);
            inst.graph.add_edge(prev, u, w0 + (t - 1) * step);
            prev = u;
        }
        inst.graph.add_edge(prev, to, w0 + (p - 1) * step);
    }
};

void check_params(long n, long p) {
    if (n < 0) throw PreconditionViolation("n must be >= 0");
    if (p < 3 || p % 2 == 0) throw PreconditionViolation("p must be odd and >= 3");
}

// The default step must satisfy (p-1)*eps < 1: the level-1 budget at the
// bottom connector vertex is 8 - (p-1)*eps against the level-0 edge of
// weight 7. A power of two keeps all weights dyadic.
Rat default_eps(long n, long p) {
    long q = 1;
    while ((1L << q) <= p) ++q;
    return rat_pow2(-(n + q));
}

MSInstance build_family(long n, long p, std::optional<Rat> eps_opt, bool prime) {
    check_params(n, p);
    if (prime && n < 1) throw PreconditionViolation("subdivided family needs n >= 1");

    Builder b;
    b.inst.n = n;
    b.inst.p = p;
    b.inst.prime = prime;
    b.inst.eps = eps_opt ? *eps_opt : default_eps(n, p);
    const Rat& eps = b.inst.eps;

    // Level 0: v[0][1] -- v[0][8] path, weights 7, 7-eps, ...
    int v01 = b.vertex(ms_vname(0, 1));
    b.set_side(v01, true);
    int v08 = b.vertex(ms_vname(0, 8));
    b.set_side(v08, false);
    b.add_path(0, 1, 8, v01, v08, rat(7), -eps, p, true, -1);

    for (long i = 1; i <= n; ++i) {
        const Rat scale = rat_pow(8, i);
        std::array<int, 9> v{};
        for (long j = 1; j <= 8; ++j) {
            v[j] = b.vertex(ms_vname(i, j));
            b.set_side(v[j], j % 2 == 1);
        }
        // rungs of the level-i ladder
        for (long j : {1L, 3L, 5L, 7L})
            b.add_path(i, j, j + 1, v[j], v[j + 1], (8 - j) * scale, -eps, p, true, -1);
        // ladder edges v[i][j]-v[i][j-1], kept single or subdivided; the
        // subdivided pair puts the dominant negative weight on the lower
        // edge so the middle vertex unlocks when v[i][j-1] flips
        for (long j : {3L, 5L, 7L}) {
            Rat w = (8 - j) * scale;
            if (prime) {
                int u = b.vertex(ms_subname(i, j));
                b.set_side(u, false);
                b.inst.graph.add_edge(v[j], u, w - eps);
                b.inst.graph.add_edge(u, v[j - 1], -w);
            } else {
                b.inst.graph.add_edge(v[j], v[j - 1], w);
            }
        }
        // connectors down to v[i-1][1]
        int below1 = b.vertex(ms_vname(i - 1, 1));
        b.add_path(i, 2, 1, v[2], below1, scale, -eps, p, false, -1);
        b.add_path(i, 6, 1, v[6], below1, scale, -eps, p, false, -1);
        b.add_path(i, 4, 1, v[4], below1, -scale, eps, p, false, 0);
        // connectors from v[i-1][8]
        int below8 = b.vertex(ms_vname(i - 1, 8));
        b.inst.graph.add_edge(below8, v[3], rat(1));
        b.inst.graph.add_edge(below8, v[5], rat(-1));
        b.inst.graph.add_edge(below8, v[7], rat(1));
    }

    if (n >= 1) {
        int vp1 = b.vertex("v'1");
        b.set_side(vp1, true);
        int vp2 = b.vertex("v'2");
        b.set_side(vp2, false);
        b.inst.graph.add_edge(b.inst.name_index.at(ms_vname(n, 1)), vp1, rat_pow(8, n + 1));
        b.inst.graph.add_edge(vp1, vp2, 2 * rat_pow(8, n + 1));
    }

    b.inst.initial_cut.one.resize(b.inst.graph.vertex_count(), 0);
    return b.inst;
}

}  // namespace

MSInstance build_h_np(long n, long p, std::optional<Rat> eps) {
    return build_family(n, p, eps, false);
}

MSInstance build_h_prime_np(long n, long p, std::optional<Rat> eps) {
    return build_family(n, p, eps, true);
}

PathCover canonical_cover(const MSInstance& inst) {
    if (inst.prime) throw PreconditionViolation("cover is defined for the unsubdivided family");
    if (inst.n < 1) throw PreconditionViolation("cover needs n >= 1");
    const long n = inst.n, p = inst.p;
    auto id = [&](const std::string& s) { return inst.vertex(s); };

    PathCover cover;
    for (long i = 1; i <= n; ++i) {
        cover.push_back({id(ms_vname(i, 2)), id(ms_vname(i, 3)), id(ms_uname(i, 3, 4, 1))});
        cover.push_back({id(ms_vname(i, 4)), id(ms_vname(i, 5)), id(ms_uname(i, 5, 6, 1))});
        cover.push_back({id(ms_vname(i, 6)), id(ms_vname(i, 7)), id(ms_uname(i, 7, 8, 1))});
    }
    for (long i = 1; i <= n; ++i) {
        cover.push_back({id(ms_uname(i, 1, 2, p - 1)), id(ms_vname(i, 2)), id(ms_uname(i, 2, 1, 1))});
        cover.push_back({id(ms_uname(i, 3, 4, p - 1)), id(ms_vname(i, 4)), id(ms_uname(i, 4, 1, 1))});
        cover.push_back({id(ms_uname(i, 5, 6, p - 1)), id(ms_vname(i, 6)), id(ms_uname(i, 6, 1, 1))});
    }
    for (long i = 2; i <= n; ++i) {
        cover.push_back({id(ms_uname(i, 2, 1, p - 1)), id(ms_vname(i - 1, 1)), id(ms_uname(i, 6, 1, p - 1))});
        cover.push_back({id(ms_uname(i, 4, 1, p - 1)), id(ms_vname(i - 1, 1)), id(ms_uname(i - 1, 1, 2, 1))});
        cover.push_back({id(ms_vname(i, 3)), id(ms_vname(i - 1, 8)), id(ms_vname(i, 7))});
        cover.push_back({id(ms_vname(i, 5)), id(ms_vname(i - 1, 8)), id(ms_uname(i - 1, 7, 8, p - 1))});
    }
    cover.push_back({id(ms_uname(1, 2, 1, p - 1)), id(ms_vname(0, 1)), id(ms_uname(1, 6, 1, p - 1))});
    cover.push_back({id(ms_uname(1, 4, 1, p - 1)), id(ms_vname(0, 1)), id(ms_uname(0, 1, 8, 1))});
    cover.push_back({id(ms_vname(1, 3)), id(ms_vname(0, 8)), id(ms_vname(1, 7))});
    cover.push_back({id(ms_vname(1, 5)), id(ms_vname(0, 8)), id(ms_uname(0, 1, 8, p - 1))});

    std::set<std::pair<int, int>> covered;
    for (const auto& path : cover)
        for (size_t i = 0; i + 1 < path.size(); ++i)
            covered.insert(std::minmax(path[i], path[i + 1]));
    for (const auto& e : inst.graph.edges)
        if (!covered.count({e.u, e.v})) cover.push_back({e.u, e.v});

    cover.push_back({id("v'2")});
    cover.push_back({id(ms_vname(n, 8))});
    return cover;
}

PathCover canonical_cover(long n, long p) { return canonical_cover(build_h_np(n, p)); }

namespace {

void append_interiors(std::vector<std::string>& out, long i, long j, long k, long p) {
    for (long t = 1; t < p; ++t) out.push_back(ms_uname(i, j, k, t));
}

}  // namespace

std::vector<std::string> predict_flip_projection(long n, long p) {
    check_params(n, p);
    std::vector<std::string> seq;
    seq.push_back(ms_vname(0, 1));
    append_interiors(seq, 0, 1, 8, p);
    seq.push_back(ms_vname(0, 8));
    for (long i = 1; i <= n; ++i) {
        std::vector<std::string> next;
        next.push_back(ms_vname(i, 1));
        append_interiors(next, i, 1, 2, p);
        next.push_back(ms_vname(i, 2));
        append_interiors(next, i, 2, 1, p);
        next.insert(next.end(), seq.begin(), seq.end());
        next.push_back(ms_vname(i, 3));
        append_interiors(next, i, 3, 4, p);
        next.push_back(ms_vname(i, 4));
        append_interiors(next, i, 4, 1, p);
        next.insert(next.end(), seq.begin(), seq.end());
        next.push_back(ms_vname(i, 5));
        append_interiors(next, i, 5, 6, p);
        next.push_back(ms_vname(i, 6));
        append_interiors(next, i, 6, 1, p);
        next.insert(next.end(), seq.begin(), seq.end());
        next.push_back(ms_vname(i, 7));
        append_interiors(next, i, 7, 8, p);
        next.push_back(ms_vname(i, 8));
        seq = std::move(next);
    }
    return seq;
}

std::vector<std::string> projection_exclusions(long n) {
    std::vector<std::string> out;
    for (long i = 1; i <= n; ++i)
        for (long j : {3L, 5L, 7L}) out.push_back(ms_subname(i, j));
    return out;
}

const std::vector<PiState>& pi_cycle() {
    // Successor order; the quoted edge is (1,1,1,1) -> (1,0,1,1).
    static const std::vector<PiState> cycle = {
        {1, 1, 1, 1}, {1, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 0},
        {0, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 0}, {0, 1, 1, 1},
    };
    return cycle;
}

bool pi_on_cycle(const PiState& s) {
    const auto& cyc = pi_cycle();
    return std::find(cyc.begin(), cyc.end(), s) != cyc.end();
}

PiState pi_successor(const PiState& s) {
    const auto& cyc = pi_cycle();
    auto it = std::find(cyc.begin(), cyc.end(), s);
    if (it == cyc.end())
        throw OffCycle("state (" + std::to_string(s[0]) + "," + std::to_string(s[1]) + "," +
                       std::to_string(s[2]) + "," + std::to_string(s[3]) + ") is not on the cycle");
    size_t idx = static_cast<size_t>(it - cyc.begin());
    return cyc[(idx + 1) % cyc.size()];
}

std::vector<int> project_trace(const FlipTrace& trace, const std::vector<char>& excluded) {
    std::vector<int> out;
    for (const auto& s : trace.steps) {
        if (s.vertex < static_cast<int>(excluded.size()) && excluded[s.vertex]) continue;
        out.push_back(s.vertex);
    }
    return out;
}

}  // namespace kadv
