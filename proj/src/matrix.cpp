#include "splab/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace splab {

namespace {

const Field& common_field(const Mat& a, const Mat& b) {
    if (a.field == nullptr || b.field == nullptr) throw std::invalid_argument("matrix without field");
    if (!a.field->same_spec(*b.field)) throw std::invalid_argument("matrices over different fields");
    if (a.n != b.n) throw std::invalid_argument("matrix dimension mismatch");
    return *a.field;
}

void require_square(const Mat& a) {
    if (a.field == nullptr) throw std::invalid_argument("matrix without field");
    if (a.e.size() != static_cast<std::size_t>(a.n) * a.n) throw std::invalid_argument("malformed matrix");
}

// In-place elimination to row echelon form on an n x w matrix (w >= n), using
// only the first n columns for pivots. Returns rank and det of the left block.
struct EchelonResult {
    std::uint32_t rank = 0;
    std::uint32_t det = 0;
};

EchelonResult echelon(const Field& f, std::vector<std::uint32_t>& m, std::uint32_t n, std::uint32_t w) {
    auto at = [&](std::uint32_t r, std::uint32_t c) -> std::uint32_t& { return m[static_cast<std::size_t>(r) * w + c]; };
    std::uint32_t row = 0;
    std::uint32_t detv = 1;
    bool neg = false;
    for (std::uint32_t col = 0; col < n && row < n; ++col) {
        std::uint32_t pivot = row;
        while (pivot < n && at(pivot, col) == 0) ++pivot;
        if (pivot == n) {
            detv = 0;
            continue;
        }
        if (pivot != row) {
            for (std::uint32_t c = col; c < w; ++c) std::swap(at(pivot, c), at(row, c));
            neg = !neg;
        }
        std::uint32_t pv = at(row, col);
        detv = f.mul(detv, pv);
        std::uint32_t pinv = f.inv(pv);
        for (std::uint32_t r = row + 1; r < n; ++r) {
            std::uint32_t factor = f.mul(at(r, col), pinv);
            if (factor == 0) continue;
            for (std::uint32_t c = col; c < w; ++c)
                at(r, c) = f.sub(at(r, c), f.mul(factor, at(row, c)));
        }
        ++row;
    }
    if (row < n) detv = 0;
    if (neg) detv = f.neg(detv);
    return {row, detv};
}

}  // namespace

Mat mat_add(const Mat& a, const Mat& b) {
    const Field& f = common_field(a, b);
    Mat r(f, a.n);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = f.add(a.e[i], b.e[i]);
    return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    const Field& f = common_field(a, b);
    Mat r(f, a.n);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = f.sub(a.e[i], b.e[i]);
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    const Field& f = common_field(a, b);
    Mat r(f, a.n);
    for (std::uint32_t i = 0; i < a.n; ++i)
        for (std::uint32_t k = 0; k < a.n; ++k) {
            std::uint32_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::uint32_t j = 0; j < a.n; ++j)
                r.at(i, j) = f.add(r.at(i, j), f.mul(aik, b.at(k, j)));
        }
    return r;
}

std::uint32_t det(const Mat& a) {
    require_square(a);
    std::vector<std::uint32_t> work = a.e;
    return echelon(*a.field, work, a.n, a.n).det;
}

std::uint32_t rank(const Mat& a) {
    require_square(a);
    std::vector<std::uint32_t> work = a.e;
    return echelon(*a.field, work, a.n, a.n).rank;
}

Mat inverse(const Mat& a) {
    require_square(a);
    const Field& f = *a.field;
    std::uint32_t n = a.n;
    std::uint32_t w = 2 * n;
    std::vector<std::uint32_t> m(static_cast<std::size_t>(n) * w, 0);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) m[static_cast<std::size_t>(r) * w + c] = a.at(r, c);
        m[static_cast<std::size_t>(r) * w + n + r] = 1;
    }
    EchelonResult ech = echelon(f, m, n, w);
    if (ech.rank < n) throw std::domain_error("matrix is singular");
    auto at = [&](std::uint32_t r, std::uint32_t c) -> std::uint32_t& { return m[static_cast<std::size_t>(r) * w + c]; };
    // Back-substitution: normalize pivots, clear above.
    for (std::uint32_t r = n; r-- > 0;) {
        std::uint32_t pinv = f.inv(at(r, r));
        for (std::uint32_t c = r; c < w; ++c) at(r, c) = f.mul(pinv, at(r, c));
        for (std::uint32_t up = 0; up < r; ++up) {
            std::uint32_t factor = at(up, r);
            if (factor == 0) continue;
            for (std::uint32_t c = r; c < w; ++c)
                at(up, c) = f.sub(at(up, c), f.mul(factor, at(r, c)));
        }
    }
    Mat inv(f, n);
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c) inv.at(r, c) = at(r, n + c);
    return inv;
}

SolveCount solve_matrix_equation(const Mat& a, const Mat& c) {
    const Field& f = common_field(a, c);
    std::uint32_t n = a.n;
    std::uint32_t w = 2 * n;
    std::vector<std::uint32_t> m(static_cast<std::size_t>(n) * w, 0);
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t col = 0; col < n; ++col) {
            m[static_cast<std::size_t>(r) * w + col] = a.at(r, col);
            m[static_cast<std::size_t>(r) * w + n + col] = c.at(r, col);
        }
    std::uint32_t ra = rank(a);
    // AX = C is solvable iff augmenting by C does not raise the row rank,
    // i.e. every column of C lies in the column span of A.
    std::vector<std::uint32_t> aug = m;
    std::uint32_t r_aug = 0;
    {
        // Rank of the n x 2n augmented matrix: eliminate over all 2n columns.
        auto at = [&](std::uint32_t r, std::uint32_t col) -> std::uint32_t& {
            return aug[static_cast<std::size_t>(r) * w + col];
        };
        std::uint32_t row = 0;
        for (std::uint32_t col = 0; col < w && row < n; ++col) {
            std::uint32_t pivot = row;
            while (pivot < n && at(pivot, col) == 0) ++pivot;
            if (pivot == n) continue;
            if (pivot != row)
                for (std::uint32_t cc = col; cc < w; ++cc) std::swap(at(pivot, cc), at(row, cc));
            std::uint32_t pinv = f.inv(at(row, col));
            for (std::uint32_t r = row + 1; r < n; ++r) {
                std::uint32_t factor = f.mul(at(r, col), pinv);
                if (factor == 0) continue;
                for (std::uint32_t cc = col; cc < w; ++cc)
                    at(r, cc) = f.sub(at(r, cc), f.mul(factor, at(row, cc)));
            }
            ++row;
        }
        r_aug = row;
    }
    // Column rank of [A | C] equals the row rank computed above; comparing
    // against rank(A) detects any C column outside the span.
    SolveCount out;
    out.solvable = (r_aug == ra);
    if (out.solvable) {
        std::uint64_t count = 1;
        std::uint64_t exponent = static_cast<std::uint64_t>(n) * (n - ra);
        for (std::uint64_t i = 0; i < exponent; ++i) {
            if (count > (~0ull) / f.q()) throw std::overflow_error("solution count exceeds 64 bits");
            count *= f.q();
        }
        out.count = count;
    }
    return out;
}

std::string Stratum::name() const {
    switch (kind) {
        case StratumKind::All: return "ALL";
        case StratumKind::Invertible: return "GL";
        case StratumKind::UnitDet: return "SL";
        case StratumKind::Singular: return "SINGULAR";
        case StratumKind::Rank: return "RANK:" + std::to_string(param);
        case StratumKind::Det: return "DET:" + std::to_string(param);
    }
    return "?";
}

Stratum Stratum::parse(const std::string& text) {
    if (text == "ALL") return all();
    if (text == "GL") return gl();
    if (text == "SL") return sl();
    if (text == "SINGULAR") return singular();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        std::uint32_t v = static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)));
        if (head == "RANK") return of_rank(v);
        if (head == "DET") return of_det(v);
    }
    throw std::invalid_argument("unknown stratum: " + text);
}

MatRing::MatRing(Field f, std::uint32_t n, RingOptions opts) : field_(std::move(f)), n_(n) {
    if (n == 0 || n > 8) throw std::invalid_argument("matrix dimension out of range");
    std::uint64_t q = field_.q();
    size_ = 1;
    for (std::uint32_t i = 0; i < n * n; ++i) {
        if (size_ > opts.max_index_space / q) throw std::invalid_argument("index space q^(n^2) too large");
        size_ *= q;
    }
    if (size_ <= opts.scan_table_max) {
        det_tab_.resize(size_);
        rank_tab_.resize(size_);
        for (MatIndex i = 0; i < size_; ++i) {
            Mat m = decode(i);
            rank_tab_[i] = static_cast<std::uint8_t>(rank(m));
            det_tab_[i] = det(m);
        }
    }
    if (size_ <= opts.pair_table_max) {
        std::size_t total = static_cast<std::size_t>(size_) * size_;
        mul_ptab_.resize(total);
        add_ptab_.resize(total);
        sub_ptab_.resize(total);
        std::vector<Mat> mats;
        mats.reserve(size_);
        for (MatIndex i = 0; i < size_; ++i) mats.push_back(decode(i));
        for (MatIndex a = 0; a < size_; ++a)
            for (MatIndex b = 0; b < size_; ++b) {
                std::size_t slot = static_cast<std::size_t>(a) * size_ + b;
                mul_ptab_[slot] = static_cast<std::uint32_t>(encode(mat_mul(mats[a], mats[b])));
                add_ptab_[slot] = static_cast<std::uint32_t>(encode(mat_add(mats[a], mats[b])));
                sub_ptab_[slot] = static_cast<std::uint32_t>(encode(mat_sub(mats[a], mats[b])));
            }
    }
}

std::uint64_t MatRing::check(MatIndex i) const {
    if (i >= size_) throw std::out_of_range("matrix index out of range");
    return i;
}

MatIndex MatRing::encode(const Mat& a) const {
    if (a.field == nullptr || !a.field->same_spec(field_) || a.n != n_)
        throw std::invalid_argument("matrix does not belong to this ring");
    MatIndex idx = 0;
    std::uint64_t q = field_.q();
    for (std::size_t pos = a.e.size(); pos-- > 0;) {
        if (a.e[pos] >= q) throw std::invalid_argument("matrix entry out of range");
        idx = idx * q + a.e[pos];
    }
    return idx;
}

Mat MatRing::decode(MatIndex idx) const {
    check(idx);
    Mat m(field_, n_);
    std::uint64_t q = field_.q();
    for (std::size_t pos = 0; pos < m.e.size(); ++pos) {
        m.e[pos] = static_cast<std::uint32_t>(idx % q);
        idx /= q;
    }
    return m;
}

Mat MatRing::identity() const {
    Mat m(field_, n_);
    for (std::uint32_t i = 0; i < n_; ++i) m.at(i, i) = 1;
    return m;
}

Mat MatRing::det_normalizer(std::uint32_t alpha) const {
    Mat m = identity();
    m.at(0, 0) = field_.inv(alpha);
    return m;
}

MatIndex MatRing::neg_index(MatIndex a) const {
    Mat m = decode(a);
    for (auto& v : m.e) v = field_.neg(v);
    return encode(m);
}

MatIndex MatRing::add_index_raw(MatIndex a, MatIndex b) const {
    check(a);
    check(b);
    // Digitwise base-q add without materializing Mat objects.
    std::uint64_t q = field_.q();
    MatIndex out = 0;
    MatIndex scale = 1;
    for (std::uint32_t pos = 0; pos < n_ * n_; ++pos) {
        std::uint32_t da = static_cast<std::uint32_t>(a % q);
        std::uint32_t db = static_cast<std::uint32_t>(b % q);
        out += static_cast<MatIndex>(field_.add(da, db)) * scale;
        scale *= q;
        a /= q;
        b /= q;
    }
    return out;
}

bool MatRing::in_stratum(MatIndex idx, Stratum s) const {
    switch (s.kind) {
        case StratumKind::All: return true;
        case StratumKind::Invertible: return det_index(idx) != 0;
        case StratumKind::UnitDet: return det_index(idx) == 1;
        case StratumKind::Singular: return det_index(idx) == 0;
        case StratumKind::Rank: return rank_index(idx) == s.param;
        case StratumKind::Det: return det_index(idx) == s.param;
    }
    return false;
}

void MatRing::validate(Stratum s) const {
    if (s.kind == StratumKind::Rank && s.param > n_) throw std::invalid_argument("rank exceeds dimension");
    if (s.kind == StratumKind::Det && s.param >= field_.q()) throw std::invalid_argument("determinant index out of range");
}

std::vector<MatIndex> MatRing::indices(Stratum s) const {
    std::vector<MatIndex> out;
    for_each(s, [&](MatIndex i) { out.push_back(i); });
    return out;
}

std::uint64_t MatRing::stratum_size(Stratum s) const {
    std::uint64_t c = 0;
    for_each(s, [&](MatIndex) { ++c; });
    return c;
}

}  // namespace splab
