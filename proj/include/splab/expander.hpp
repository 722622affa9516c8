#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splab/counting.hpp"
#include "splab/digraph.hpp"
#include "splab/matrix.hpp"
#include "splab/matset.hpp"

namespace splab {

enum class Polynomial { XPlusYZ, XTimesYPlusZ, XYPlusZPlusT, SumSet, ProductSet };
Polynomial parse_polynomial(const std::string& name);
std::string polynomial_name(Polynomial p);

// Exact set arithmetic over the ring, bitset-backed.
MatSet sum_set(const MatRing& ring, const MatSet& a, const MatSet& b);
MatSet product_set(const MatRing& ring, const MatSet& a, const MatSet& b);
std::uint64_t sp_max(const MatRing& ring, const MatSet& a);  // max(|A+A|, |AA|)

struct ImageResult {
    MatSet image;
    bool covers_all = false;
};
// {a + b*c}: product pass then sum pass.
ImageResult image_x_plus_yz(const MatRing& ring, const MatSet& a, const MatSet& b, const MatSet& c);
// {a * (b + c)}.
ImageResult image_x_times_y_plus_z(const MatRing& ring, const MatSet& a, const MatSet& b,
                                   const MatSet& c);
// {a1*a2 + a3 + a4} over a single set.
ImageResult image_xy_plus_z_plus_t(const MatRing& ring, const MatSet& a);

ImageResult image_of(const MatRing& ring, Polynomial p, const MatSet& a);

// Disjoint cover of S by determinant value; every alpha in [0,q) is present.
std::map<std::uint32_t, MatSet> det_strata_partition(const MatRing& ring, const MatSet& s);

struct EqualSizeCheck {
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    bool pass = false;
    bool sizes_preserved = false;  // the scaled copies kept their cardinality
};
// |Da * Db| = |{l_a x} * {y l_b}| with both scaled factors inside SL_n.
EqualSizeCheck scaled_product_check(const MatRing& ring, const MatSet& da, const MatSet& db,
                                    std::uint32_t alpha, std::uint32_t beta);
// |X + Y| = |{l_a x} + {l_a y}| for X inside the det-alpha stratum.
EqualSizeCheck scaled_sum_check(const MatRing& ring, const MatSet& x, const MatSet& y,
                                std::uint32_t alpha);

struct LargestClass {
    std::uint32_t alpha = 0;
    MatSet subset;
};
// Most populous nonzero-determinant class; ties break to the smallest alpha.
LargestClass largest_det_class(const MatRing& ring, const MatSet& a);

/// Edge-count identities behind the image lower bounds: each triple of inputs
// contributes one distinct digraph edge between the stated vertex sets.
struct EmbeddingReport {
    BigInt edges;
    BigInt required;
    bool pass = false;
    std::uint64_t size_u = 0;
    std::uint64_t size_v = 0;
};
// U = {(a^{-1}, b)}, V = A(B+C) x C; e(U,V) >= |A||B||C|. Needs A in GL.
EmbeddingReport embed_check_x_times_y_plus_z(const MatRing& ring, const MatSet& a,
                                             const MatSet& b, const MatSet& c);
// U = {(b, -a)}, V = C x (A+BC); e(U,V) >= |A||B||C|.
EmbeddingReport embed_check_x_plus_yz(const MatRing& ring, const MatSet& a, const MatSet& b,
                                      const MatSet& c);
// U = {(a1, target - a3)}, V = {(a2, -a4)}; an edge exists iff target is hit.
EmbeddingReport embed_check_xy_plus_z_plus_t(const MatRing& ring, const MatSet& a,
                                             MatIndex target);
// V = {(a, a*b)}, U = (A+A) x (AA); e(V,U) >= |A|^3. Needs A in GL.
EmbeddingReport embed_check_sum_product(const MatRing& ring, const MatSet& a);

// ceil(density * domain_size), density an exact rational in (0,1].
std::uint64_t sample_count(const BigRat& density, std::uint64_t domain_size);
// Uniform without-replacement draw, deterministic per seed.
MatSet random_subset(const MatSet& domain, std::uint64_t count, std::uint64_t seed);

/// Stratum name (ALL, GL, SL, SINGULAR, RANK:m, DET:a) or @path to a set file.
MatSet resolve_domain(const MatRing& ring, const std::string& name);

struct SweepConfig {
    Polynomial polynomial = Polynomial::XPlusYZ;
    std::string domain = "ALL";
    std::vector<BigRat> densities;  // ascending, in (0,1]
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
};

struct SweepRow {
    BigRat density;
    std::uint64_t trial = 0;
    std::uint64_t size_a = 0, size_b = 0, size_c = 0, size_d = 0;
    std::uint64_t image = 0;
    double coverage = 0.0;
    bool covers_all = false;
    std::uint64_t seed = 0;  // the per-trial derived seed
};

// Predicted coverage-threshold density for the polynomial over the domain;
// empty when no closed-form prediction applies (the pure sum/product sets).
std::optional<double> predicted_threshold(Polynomial p, const std::string& domain,
                                          std::uint32_t n, std::uint64_t q);

std::vector<SweepRow> threshold_sweep(const MatRing& ring, const SweepConfig& config);

}  // namespace splab
