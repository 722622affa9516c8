#include "splab/digraph.hpp"

#include <cmath>
#include <map>

#include "splab/util.hpp"

namespace splab {

std::uint64_t SpDigraph::common_out(Vertex u, Vertex v) const {
    const MatRing& r = *ring_;
    std::uint64_t count = 0;
    for (MatIndex b = 0; b < Q_; ++b) {
        MatIndex d1 = r.sub_index(r.mul_index(u.a, b), u.c);
        MatIndex d2 = r.sub_index(r.mul_index(v.a, b), v.c);
        if (d1 == d2) ++count;
    }
    return count;
}

std::uint64_t SpDigraph::common_in(Vertex u, Vertex v) const {
    const MatRing& r = *ring_;
    std::uint64_t count = 0;
    for (MatIndex z = 0; z < Q_; ++z) {
        MatIndex c1 = r.sub_index(r.mul_index(z, u.a), u.c);
        MatIndex c2 = r.sub_index(r.mul_index(z, v.a), v.c);
        if (c1 == c2) ++count;
    }
    return count;
}

std::uint64_t SpDigraph::predicted_common(Vertex u, Vertex v) const {
    if (u == v) return Q_;
    const MatRing& r = *ring_;
    Mat da = r.decode(r.sub_index(u.a, v.a));
    Mat dc = r.decode(r.sub_index(u.c, v.c));
    SolveCount sc = solve_matrix_equation(da, dc);
    return sc.solvable ? sc.count : 0;
}

SpDigraph::PairClass SpDigraph::classify(Vertex u, Vertex v) const {
    if (u == v) return {"diagonal", 0, 0, Q_};
    const MatRing& r = *ring_;
    MatIndex dai = r.sub_index(u.a, v.a);
    MatIndex dci = r.sub_index(u.c, v.c);
    std::uint32_t n = r.n();
    std::uint32_t m = r.rank_index(dai);
    std::uint32_t k = r.rank_index(dci);
    if (m == n) return {"invertible-difference", m, k, 1};
    if (k == n) return {"det-obstructed", m, k, 0};
    if (m < k) return {"rank-obstructed", m, k, 0};
    SolveCount sc = solve_matrix_equation(r.decode(dai), r.decode(dci));
    if (!sc.solvable) return {"unsolvable", m, k, 0};
    return {"solvable", m, k, sc.count};
}

PairAuditReport SpDigraph::audit_pairs(bool check_in, bool tally_classes,
                                       std::uint64_t sample_pairs, std::uint64_t seed,
                                       std::size_t example_cap) const {
    PairAuditReport rep;
    std::map<std::string, std::uint64_t> tally;
    std::uint64_t n_vertices = vertex_count();

    auto examine = [&](Vertex u, Vertex v) {
        std::uint64_t predicted;
        if (tally_classes) {
            PairClass pc = classify(u, v);
            ++tally[pc.label];
            predicted = pc.predicted;
        } else {
            predicted = predicted_common(u, v);
        }
        std::uint64_t out = common_out(u, v);
        if (out != predicted) {
            ++rep.out_mismatches;
            if (rep.examples.size() < example_cap)
                rep.examples.push_back({u.a, u.c, v.a, v.c, predicted, out, "out"});
        }
        if (check_in) {
            std::uint64_t in = common_in(u, v);
            if (in != predicted) {
                ++rep.in_mismatches;
                if (rep.examples.size() < example_cap)
                    rep.examples.push_back({u.a, u.c, v.a, v.c, predicted, in, "in"});
            }
        }
        ++rep.pairs_checked;
    };

    if (sample_pairs == 0) {
        for (std::uint64_t x = 0; x < n_vertices; ++x)
            for (std::uint64_t y = 0; y < n_vertices; ++y) examine(unpack(x), unpack(y));
    } else {
        std::uint64_t state = seed;
        auto next = [&state] {
            state += 0x9e3779b97f4a7c15ull;
            return splitmix64(state);
        };
        for (std::uint64_t i = 0; i < sample_pairs; ++i) {
            Vertex u = unpack(next() % n_vertices);
            Vertex v = unpack(next() % n_vertices);
            examine(u, v);
        }
    }
    rep.class_tally.assign(tally.begin(), tally.end());
    return rep;
}

PairAuditReport SpDigraph::check_normal_exhaustive(std::size_t example_cap) const {
    return audit_pairs(true, false, 0, 0, example_cap);
}
PairAuditReport SpDigraph::check_normal_sampled(std::uint64_t pairs, std::uint64_t seed,
                                                std::size_t example_cap) const {
    return audit_pairs(true, false, pairs, seed, example_cap);
}
PairAuditReport SpDigraph::gram_audit_exhaustive(std::size_t example_cap) const {
    return audit_pairs(false, true, 0, 0, example_cap);
}
PairAuditReport SpDigraph::gram_audit_sampled(std::uint64_t pairs, std::uint64_t seed,
                                              std::size_t example_cap) const {
    return audit_pairs(false, true, pairs, seed, example_cap);
}

BigInt SpDigraph::edge_count(const VertexSet& U, const VertexSet& V) const {
    std::uint64_t total = 0;
    U.bits().for_each([&](std::uint64_t packed) {
        Vertex u = unpack(packed);
        std::uint64_t hits = 0;
        out_neighbors(u, [&](Vertex w) {
            if (V.contains(w)) ++hits;
        });
        total += hits;
    });
    return BigInt(total);
}

MixingReport SpDigraph::mixing_check(const VertexSet& U, const VertexSet& V,
                                     double lambda) const {
    MixingReport rep;
    rep.edges = edge_count(U, V);
    BigInt sizes = BigInt(U.size()) * BigInt(V.size());
    rep.expected = BigRat(BigInt(degree()) * sizes, BigInt(vertex_count()));
    BigRat dev = BigRat(rep.edges) - rep.expected;
    if (dev < 0) dev = -dev;
    rep.deviation = dev.convert_to<double>();
    double root = std::sqrt(sizes.convert_to<double>());
    rep.bound = lambda * root;
    rep.holds = rep.deviation <= rep.bound;
    rep.holds_with_degree = rep.deviation <= static_cast<double>(degree()) * root;
    return rep;
}

bool SpDigraph::strongly_connected() const {
    std::uint64_t n_vertices = vertex_count();
    auto bfs = [&](bool forward) {
        IndexSet seen(n_vertices);
        std::vector<std::uint64_t> frontier{0};
        seen.insert(0);
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (std::uint64_t packed : frontier) {
                auto visit = [&](Vertex w) {
                    std::uint64_t p = pack(w);
                    if (!seen.contains(p)) {
                        seen.insert(p);
                        next.push_back(p);
                    }
                };
                if (forward)
                    out_neighbors(unpack(packed), visit);
                else
                    in_neighbors(unpack(packed), visit);
            }
            frontier = std::move(next);
        }
        return seen.size() == n_vertices;
    };
    return bfs(true) && bfs(false);
}

}  // namespace splab
