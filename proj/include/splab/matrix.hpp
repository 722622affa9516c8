#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splab/field.hpp"

namespace splab {

using MatIndex = std::uint64_t;

// Dense n x n matrix over one field; entries are element indices, row-major.
struct Mat {
    const Field* field = nullptr;
    std::uint32_t n = 0;
    std::vector<std::uint32_t> e;

    Mat() = default;
    Mat(const Field& f, std::uint32_t dim)
        : field(&f), n(dim), e(static_cast<std::size_t>(dim) * dim, 0) {}

    std::uint32_t& at(std::uint32_t r, std::uint32_t c) { return e[static_cast<std::size_t>(r) * n + c]; }
    std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return e[static_cast<std::size_t>(r) * n + c]; }

    bool operator==(const Mat& o) const { return n == o.n && e == o.e; }
};

Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_mul(const Mat& a, const Mat& b);

// Gaussian elimination, pivoting on the first nonzero entry scanning down.
std::uint32_t det(const Mat& a);
std::uint32_t rank(const Mat& a);
Mat inverse(const Mat& a);  // throws std::domain_error on singular input

struct SolveCount {
    bool solvable = false;
    std::uint64_t count = 0;  // q^{n(n-m)} when solvable, m = rank(A)
};
// Decides AX = C over the matrix ring and counts its solutions.
SolveCount solve_matrix_equation(const Mat& a, const Mat& c);

// Matrix strata used throughout: the full ring, the invertible group, the
// determinant-one subgroup, a fixed rank, or a fixed determinant class.
enum class StratumKind { All, Invertible, UnitDet, Rank, Det, Singular };

struct Stratum {
    StratumKind kind = StratumKind::All;
    std::uint32_t param = 0;  // rank m or determinant index alpha

    static Stratum all() { return {StratumKind::All, 0}; }
    static Stratum gl() { return {StratumKind::Invertible, 0}; }
    static Stratum sl() { return {StratumKind::UnitDet, 0}; }
    static Stratum of_rank(std::uint32_t m) { return {StratumKind::Rank, m}; }
    static Stratum of_det(std::uint32_t alpha) { return {StratumKind::Det, alpha}; }
    static Stratum singular() { return {StratumKind::Singular, 0}; }

    std::string name() const;
    // Accepts ALL | GL | SL | SINGULAR | RANK:<m> | DET:<alpha>.
    static Stratum parse(const std::string& text);
};

struct RingOptions {
    std::uint64_t max_index_space = 1ull << 32;  // cap on q^{n^2}
    std::uint64_t pair_table_max = 2048;         // Q*Q op tables up to this Q
    std::uint64_t scan_table_max = 1u << 20;     // per-index det/rank tables up to this Q
};

// M_n(F_q) with the canonical base-q row-major index encoding. Owns its Field
// and all lookup tables; immutable after construction, shareable across threads.
class MatRing {
  public:
    MatRing(Field f, std::uint32_t n, RingOptions opts = {});

    const Field& field() const { return field_; }
    std::uint32_t n() const { return n_; }
    std::uint64_t q() const { return field_.q(); }
    std::uint64_t size() const { return size_; }  // q^{n^2}

    MatIndex encode(const Mat& a) const;
    Mat decode(MatIndex idx) const;

    Mat zero() const { return Mat(field_, n_); }
    Mat identity() const;
    // diag(alpha^{-1}, 1, ..., 1): left/right factor normalizing det alpha to 1.
    Mat det_normalizer(std::uint32_t alpha) const;

    // Index-level ring operations (table-backed when available).
    MatIndex mul_index(MatIndex a, MatIndex b) const {
        if (!mul_ptab_.empty()) return mul_ptab_[check(a) * size_ + check(b)];
        return encode(mat_mul(decode(a), decode(b)));
    }
    MatIndex add_index(MatIndex a, MatIndex b) const {
        if (!add_ptab_.empty()) return add_ptab_[check(a) * size_ + check(b)];
        return add_index_raw(a, b);
    }
    MatIndex sub_index(MatIndex a, MatIndex b) const {
        if (!sub_ptab_.empty()) return sub_ptab_[check(a) * size_ + check(b)];
        return add_index_raw(check(a), neg_index(b));
    }
    MatIndex neg_index(MatIndex a) const;

    std::uint32_t det_index(MatIndex idx) const {
        if (!det_tab_.empty()) return det_tab_[check(idx)];
        return det(decode(idx));
    }
    std::uint32_t rank_index(MatIndex idx) const {
        if (!rank_tab_.empty()) return rank_tab_[check(idx)];
        return rank(decode(idx));
    }

    bool in_stratum(MatIndex idx, Stratum s) const;

    // Full ascending scan over the stratum; each qualifying index once.
    template <typename Fn>
    void for_each(Stratum s, Fn&& fn) const {
        validate(s);
        for (MatIndex i = 0; i < size_; ++i)
            if (in_stratum(i, s)) fn(i);
    }
    std::vector<MatIndex> indices(Stratum s) const;
    std::uint64_t stratum_size(Stratum s) const;

    // Q*Q tables for the streaming engines; empty when Q exceeds the budget.
    const std::vector<std::uint32_t>& mul_table() const { return mul_ptab_; }
    const std::vector<std::uint32_t>& sub_table() const { return sub_ptab_; }
    bool has_pair_tables() const { return !mul_ptab_.empty(); }

  private:
    std::uint64_t check(MatIndex i) const;
    MatIndex add_index_raw(MatIndex a, MatIndex b) const;
    void validate(Stratum s) const;

    Field field_;
    std::uint32_t n_ = 0;
    std::uint64_t size_ = 0;
    std::vector<std::uint32_t> mul_ptab_, add_ptab_, sub_ptab_;  // Q*Q
    std::vector<std::uint32_t> det_tab_;                         // Q
    std::vector<std::uint8_t> rank_tab_;                         // Q
};

}  // namespace splab
