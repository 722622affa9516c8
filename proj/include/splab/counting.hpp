#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "splab/matrix.hpp"

namespace splab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt big_pow(std::uint64_t base, std::uint64_t exp);
BigInt binomial(std::uint64_t n, std::uint64_t k);
// q-analogue of the binomial coefficient: #{m-dim subspaces of F_q^n}.
BigInt gaussian_binomial(std::uint32_t n, std::uint32_t m, std::uint64_t q);

// Closed-form cardinalities in M_n(F_q). All exact, arbitrary precision.
BigInt count_all(std::uint32_t n, std::uint64_t q);       // q^{n^2}
BigInt count_gl(std::uint32_t n, std::uint64_t q);        // prod (q^n - q^i)
BigInt count_singular(std::uint32_t n, std::uint64_t q);  // q^{n^2} - |GL|
BigInt count_det_stratum(std::uint32_t n, std::uint64_t q, std::uint64_t alpha);
BigInt count_rank(std::uint32_t n, std::uint32_t m, std::uint64_t q);

BigInt stratum_count(std::uint32_t n, std::uint64_t q, Stratum s);

// Exact count set against a reference quantity; ratio is exact rational.
struct CountReport {
    std::uint32_t n = 0;
    std::uint64_t q = 0;
    std::string stratum;
    BigInt exact;
    BigInt bound;
    BigRat ratio;  // exact / bound
};

// Rank-stratum size against the scale q^{2mn-m^2} it is bounded by.
CountReport rank_bound_report(std::uint32_t n, std::uint32_t m, std::uint64_t q);

// Matrices C of rank k for which AX = C is solvable, counted exhaustively,
// against both the exact combinatorial bound binom(m,k)(q^n-1)...(q^n-q^{k-1})
// q^{k(m-k)} and the scale q^{nk+mk-k^2}, where m = rank(A).
struct SolvableTargets {
    BigInt count;
    BigInt bound;       // combinatorial upper bound
    BigInt scale;       // q^{nk+mk-k^2}
    BigRat ratio;       // count / scale
    bool within_bound = false;
};
SolvableTargets count_solvable_targets(const MatRing& ring, const Mat& a, std::uint32_t k);

}  // namespace splab
