#include "splab/counting.hpp"

#include <stdexcept>

namespace splab {

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
    BigInt b = base;
    return boost::multiprecision::pow(b, static_cast<unsigned>(exp));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= BigInt(n - i);
        r /= BigInt(i + 1);
    }
    return r;
}

BigInt gaussian_binomial(std::uint32_t n, std::uint32_t m, std::uint64_t q) {
    if (m > n) return 0;
    BigInt num = 1, den = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        num *= big_pow(q, n - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    // Always divides exactly; the quotient counts subspaces.
    return num / den;
}

BigInt count_all(std::uint32_t n, std::uint64_t q) {
    return big_pow(q, static_cast<std::uint64_t>(n) * n);
}

BigInt count_gl(std::uint32_t n, std::uint64_t q) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    BigInt qn = big_pow(q, n);
    BigInt r = 1;
    BigInt qi = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        r *= qn - qi;
        qi *= q;
    }
    return r;
}

BigInt count_singular(std::uint32_t n, std::uint64_t q) {
    return count_all(n, q) - count_gl(n, q);
}

BigInt count_det_stratum(std::uint32_t n, std::uint64_t q, std::uint64_t alpha) {
    if (alpha >= q) throw std::invalid_argument("determinant index out of range");
    if (alpha == 0) return count_singular(n, q);
    // det: GL -> F_q^* is a surjective homomorphism, so all q-1 fibers match.
    return count_gl(n, q) / BigInt(q - 1);
}

BigInt count_rank(std::uint32_t n, std::uint32_t m, std::uint64_t q) {
    if (m > n) throw std::invalid_argument("rank exceeds dimension");
    // Choose row space and column space, then a rank-m pairing: the count is
    // binom(n,m)_q^2 * |GL_m|.
    BigInt gb = gaussian_binomial(n, m, q);
    return gb * gb * (m == 0 ? BigInt(1) : count_gl(m, q));
}

BigInt stratum_count(std::uint32_t n, std::uint64_t q, Stratum s) {
    switch (s.kind) {
        case StratumKind::All: return count_all(n, q);
        case StratumKind::Invertible: return count_gl(n, q);
        case StratumKind::UnitDet: return count_det_stratum(n, q, 1);
        case StratumKind::Singular: return count_singular(n, q);
        case StratumKind::Rank: return count_rank(n, s.param, q);
        case StratumKind::Det: return count_det_stratum(n, q, s.param);
    }
    throw std::invalid_argument("unknown stratum");
}

CountReport rank_bound_report(std::uint32_t n, std::uint32_t m, std::uint64_t q) {
    CountReport rep;
    rep.n = n;
    rep.q = q;
    rep.stratum = Stratum::of_rank(m).name();
    rep.exact = count_rank(n, m, q);
    rep.bound = big_pow(q, 2ull * m * n - static_cast<std::uint64_t>(m) * m);
    rep.ratio = BigRat(rep.exact, rep.bound);
    return rep;
}

SolvableTargets count_solvable_targets(const MatRing& ring, const Mat& a, std::uint32_t k) {
    std::uint32_t n = ring.n();
    std::uint64_t q = ring.q();
    std::uint32_t m = rank(a);
    SolvableTargets out;
    out.count = 0;
    if (k <= m) {
        ring.for_each(Stratum::of_rank(k), [&](MatIndex ci) {
            if (solve_matrix_equation(a, ring.decode(ci)).solvable) ++out.count;
        });
    }
    BigInt bound = binomial(m, k);
    for (std::uint32_t i = 0; i < k; ++i) bound *= big_pow(q, n) - big_pow(q, i);
    bound *= big_pow(q, static_cast<std::uint64_t>(k) * (m - std::min(m, k)));
    out.bound = bound;
    std::uint64_t e = static_cast<std::uint64_t>(n) * k + static_cast<std::uint64_t>(m) * k -
                      static_cast<std::uint64_t>(k) * k;
    out.scale = big_pow(q, e);
    out.ratio = BigRat(out.count, out.scale);
    out.within_bound = out.count <= out.bound;
    return out;
}

}  // namespace splab
