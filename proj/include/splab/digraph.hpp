#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splab/counting.hpp"
#include "splab/matrix.hpp"
#include "splab/matset.hpp"

namespace splab {

struct Vertex {
    MatIndex a = 0;
    MatIndex c = 0;
    bool operator==(const Vertex&) const = default;
};

// Subset of the vertex set M_n x M_n, packed as a*q^{n^2} + c.
class VertexSet {
  public:
    VertexSet(std::uint32_t n, std::uint64_t q)
        : Q_(mat_universe(n, q)), bits_(Q_ * Q_) {}

    std::uint64_t pack(Vertex v) const { return v.a * Q_ + v.c; }
    Vertex unpack(std::uint64_t x) const { return {x / Q_, x % Q_}; }

    void insert(Vertex v) { bits_.insert(pack(v)); }
    bool contains(Vertex v) const { return bits_.contains(pack(v)); }
    std::uint64_t size() const { return bits_.size(); }
    std::uint64_t side() const { return Q_; }
    const IndexSet& bits() const { return bits_; }
    IndexSet& bits() { return bits_; }

  private:
    std::uint64_t Q_;
    IndexSet bits_;
};

// One disagreement between a measured neighbor count and its prediction.
struct PairCounterexample {
    MatIndex a1, c1, a2, c2;
    std::uint64_t expected;
    std::uint64_t actual;
    std::string which;  // "out" or "in"
};

struct PairAuditReport {
    std::uint64_t pairs_checked = 0;
    std::uint64_t out_mismatches = 0;  // common_out vs predicted
    std::uint64_t in_mismatches = 0;   // common_in vs predicted
    std::vector<PairCounterexample> examples;  // capped sample
    std::vector<std::pair<std::string, std::uint64_t>> class_tally;
    bool out_pass() const { return out_mismatches == 0; }
    bool pass() const { return out_mismatches == 0 && in_mismatches == 0; }
};

struct MixingReport {
    BigInt edges;
    BigRat expected;   // d|U||V|/N
    double deviation;  // |edges - expected|
    double bound;      // lambda * sqrt(|U||V|)
    bool holds;
    bool holds_with_degree;  // same test with lambda = d, for diagnosis
};

// The sum-product digraph on M_n(F_q) x M_n(F_q):
// edge (A,C) -> (B,D) iff A*B = C + D.
class SpDigraph {
  public:
    explicit SpDigraph(const MatRing& ring) : ring_(&ring), Q_(ring.size()) {}

    const MatRing& ring() const { return *ring_; }
    std::uint64_t vertex_count() const { return Q_ * Q_; }  // N
    std::uint64_t degree() const { return Q_; }             // d

    std::uint64_t pack(Vertex v) const { return v.a * Q_ + v.c; }
    Vertex unpack(std::uint64_t x) const { return {x / Q_, x % Q_}; }

    // {(B, A*B - C) : B}; exactly q^{n^2} vertices.
    template <typename Fn>
    void out_neighbors(Vertex v, Fn&& fn) const {
        for (MatIndex b = 0; b < Q_; ++b)
            fn(Vertex{b, ring_->sub_index(ring_->mul_index(v.a, b), v.c)});
    }
    // {(A, A*B - D) : A} for v = (B,D).
    template <typename Fn>
    void in_neighbors(Vertex v, Fn&& fn) const {
        for (MatIndex a = 0; a < Q_; ++a)
            fn(Vertex{a, ring_->sub_index(ring_->mul_index(a, v.a), v.c)});
    }

    // Streaming neighborhood intersections; independent of the solver oracle.
    std::uint64_t common_out(Vertex u, Vertex v) const;
    std::uint64_t common_in(Vertex u, Vertex v) const;

    // Case analysis on (A1-A2)X = C1-C2: q^{n(n-m)} if solvable else 0;
    // diagonal pairs return the full degree.
    std::uint64_t predicted_common(Vertex u, Vertex v) const;

    // Pair classification backing the Gram-matrix entry formula.
    struct PairClass {
        std::string label;
        std::uint32_t rank_da = 0;
        std::uint32_t rank_dc = 0;
        std::uint64_t predicted = 0;
    };
    PairClass classify(Vertex u, Vertex v) const;

    PairAuditReport check_normal_exhaustive(std::size_t example_cap = 8) const;
    PairAuditReport check_normal_sampled(std::uint64_t pairs, std::uint64_t seed,
                                         std::size_t example_cap = 8) const;
    // Same pair walk, but tallies the entry-formula class of every pair and
    // compares only the measured out-counts against the formula.
    PairAuditReport gram_audit_exhaustive(std::size_t example_cap = 8) const;
    PairAuditReport gram_audit_sampled(std::uint64_t pairs, std::uint64_t seed,
                                       std::size_t example_cap = 8) const;

    BigInt edge_count(const VertexSet& U, const VertexSet& V) const;
    MixingReport mixing_check(const VertexSet& U, const VertexSet& V, double lambda) const;

    // Strong connectivity: BFS out from vertex 0 and in to vertex 0.
    bool strongly_connected() const;

  private:
    PairAuditReport audit_pairs(bool check_in, bool tally_classes, std::uint64_t sample_pairs,
                                std::uint64_t seed, std::size_t example_cap) const;

    const MatRing* ring_;
    std::uint64_t Q_;
};

}  // namespace splab
