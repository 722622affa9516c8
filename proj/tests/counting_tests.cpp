#include "doctest.h"

#include "splab/counting.hpp"

using namespace splab;

TEST_CASE("binomials and gaussian binomials") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(gaussian_binomial(2, 1, 3) == 4);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(3, 3, 5) == 1);
    CHECK(big_pow(3, 4) == 81);
}

TEST_CASE("closed forms at small parameters") {
    CHECK(count_all(2, 3) == 81);
    CHECK(count_gl(2, 3) == 48);
    CHECK(count_singular(2, 3) == 33);
    CHECK(count_rank(2, 0, 3) == 1);
    CHECK(count_rank(2, 1, 3) == 32);
    CHECK(count_rank(2, 2, 3) == 48);
    CHECK(count_det_stratum(2, 3, 0) == 33);
    CHECK(count_det_stratum(2, 3, 1) == 24);
    CHECK(count_det_stratum(2, 3, 2) == 24);
    CHECK(count_gl(2, 5) == 480);
    CHECK(count_singular(2, 5) == 145);
    CHECK(count_gl(3, 3) == 11232);
    CHECK(count_rank(3, 1, 3) == 338);
    CHECK(count_rank(3, 2, 3) == 8112);
}

TEST_CASE("closed forms equal enumeration wherever the ring is scannable") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{3, 1},
                        {5, 1},
                        {7, 1},
                        {3, 2},
                        {5, 2},
                        {3, 3}}) {
        MatRing r(build_field(p, 1), n);
        std::uint64_t q = r.q();
        CHECK(count_gl(n, q) == BigInt(r.stratum_size(Stratum::gl())));
        CHECK(count_singular(n, q) == BigInt(r.stratum_size(Stratum::singular())));
        for (std::uint32_t m = 0; m <= n; ++m)
            CHECK(count_rank(n, m, q) == BigInt(r.stratum_size(Stratum::of_rank(m))));
        for (std::uint32_t a = 0; a < q; ++a)
            CHECK(count_det_stratum(n, q, a) == BigInt(r.stratum_size(Stratum::of_det(a))));
        CHECK(stratum_count(n, q, Stratum::sl()) == BigInt(r.stratum_size(Stratum::sl())));
    }
}

TEST_CASE("rank strata sit inside four times their q-power scale") {
    SUBCASE("frozen ratios at (2,3)") {
        CountReport r1 = rank_bound_report(2, 1, 3);
        CHECK(r1.exact == 32);
        CHECK(r1.bound == 27);
        CHECK(r1.ratio == BigRat(32, 27));
        CountReport r2 = rank_bound_report(2, 2, 3);
        CHECK(r2.exact == 48);
        CHECK(r2.bound == 81);
        CHECK(r2.ratio == BigRat(48, 81));
    }
    SUBCASE("bounded ratio over the configured grid") {
        for (std::uint32_t n = 1; n <= 3; ++n)
            for (std::uint64_t q : {3, 5, 7, 9, 11, 13})
                for (std::uint32_t m = 1; m <= n; ++m) {
                    CountReport rep = rank_bound_report(n, m, q);
                    CHECK(rep.ratio <= 4);
                    CHECK(rep.ratio > 0);
                }
    }
}

TEST_CASE("solvable target census") {
    MatRing r(build_field(3, 1), 2);
    SUBCASE("identity source hits every rank stratum") {
        for (std::uint32_t k = 0; k <= 2; ++k) {
            SolvableTargets st = count_solvable_targets(r, r.identity(), k);
            CHECK(st.count == count_rank(2, k, 3));
            CHECK(st.within_bound);
        }
    }
    SUBCASE("rank one source") {
        Mat e11 = r.decode(1);
        SolvableTargets st0 = count_solvable_targets(r, e11, 0);
        CHECK(st0.count == 1);
        SolvableTargets st1 = count_solvable_targets(r, e11, 1);
        CHECK(st1.count == 8);   // targets A*X of rank 1
        CHECK(st1.bound == 8);   // the combinatorial bound is exact here
        CHECK(st1.within_bound);
        CHECK(st1.scale == 9);
        CHECK(st1.ratio == BigRat(8, 9));
        SolvableTargets st2 = count_solvable_targets(r, e11, 2);
        CHECK(st2.count == 0);   // rank cannot grow under left multiplication
    }
    SUBCASE("zero source") {
        SolvableTargets st = count_solvable_targets(r, r.zero(), 0);
        CHECK(st.count == 1);
        CHECK(st.within_bound);
    }
}
