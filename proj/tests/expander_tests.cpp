#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "splab/expander.hpp"
#include "splab/util.hpp"

using namespace splab;

namespace {

MatRing ring_2_3() { return MatRing(build_field(3, 1), 2); }

MatSet singleton(std::uint32_t n, std::uint64_t q, MatIndex i) {
    return matset_from_indices(n, q, {i});
}

}  // namespace

TEST_CASE("polynomial names parse both spellings") {
    CHECK(parse_polynomial("X_PLUS_YZ") == Polynomial::XPlusYZ);
    CHECK(parse_polynomial("x+yz") == Polynomial::XPlusYZ);
    CHECK(parse_polynomial("X_TIMES_Y_PLUS_Z") == Polynomial::XTimesYPlusZ);
    CHECK(parse_polynomial("xy+z+t") == Polynomial::XYPlusZPlusT);
    CHECK(parse_polynomial("SUM_SET") == Polynomial::SumSet);
    CHECK(parse_polynomial("xy") == Polynomial::ProductSet);
    CHECK_THROWS_AS(parse_polynomial("x^2"), std::invalid_argument);
    CHECK(polynomial_name(Polynomial::XYPlusZPlusT) == "XY_PLUS_Z_PLUS_T");
}

TEST_CASE("sum and product sets of {0, I}") {
    MatRing r = ring_2_3();
    MatSet a = matset_from_indices(2, 3, {0, 28});
    MatSet sums = sum_set(r, a, a);
    CHECK(sums.size() == 3);  // 0, I, 2I
    CHECK(sums.elems.contains(56));
    MatSet prods = product_set(r, a, a);
    CHECK(prods.size() == 2);  // 0, I
    CHECK(sp_max(r, a) == 3);
}

TEST_CASE("images of degenerate inputs") {
    MatRing r = ring_2_3();
    MatSet zero = singleton(2, 3, 0);
    ImageResult res = image_x_plus_yz(r, zero, zero, zero);
    CHECK(res.image.size() == 1);
    CHECK(res.image.elems.contains(0));
    CHECK_FALSE(res.covers_all);

    MatSet ident = singleton(2, 3, 28);
    res = image_x_times_y_plus_z(r, ident, ident, ident);
    CHECK(res.image.size() == 1);
    CHECK(res.image.elems.contains(56));  // I*(I+I) = 2I

    res = image_xy_plus_z_plus_t(r, zero);
    CHECK(res.image.size() == 1);
    CHECK_FALSE(res.covers_all);
}

TEST_CASE("group closure: {0} + GL*GL = GL") {
    MatRing r = ring_2_3();
    MatSet zero = singleton(2, 3, 0);
    MatSet gl = matset_from_stratum(r, Stratum::gl());
    ImageResult res = image_x_plus_yz(r, zero, gl, gl);
    CHECK(res.image.size() == 48);
    CHECK(res.image.elems == gl.elems);
}

TEST_CASE("full domain covers for xy+z+t") {
    MatRing r = ring_2_3();
    MatSet all = matset_from_stratum(r, Stratum::all());
    ImageResult res = image_xy_plus_z_plus_t(r, all);
    CHECK(res.covers_all);
    CHECK(res.image.size() == 81);
}

TEST_CASE("singular absorption") {
    MatRing r = ring_2_3();
    MatSet sing = matset_from_stratum(r, Stratum::singular());
    MatSet all = matset_from_stratum(r, Stratum::all());
    ImageResult res = image_x_times_y_plus_z(r, sing, all, all);
    CHECK(res.image.size() == 33);
    CHECK(res.image.elems == sing.elems);
    res.image.elems.for_each([&](std::uint64_t x) { CHECK(r.det_index(x) == 0); });
}

TEST_CASE("image monotonicity under domain growth") {
    MatRing r = ring_2_3();
    MatSet all = matset_from_stratum(r, Stratum::all());
    MatSet small = random_subset(all, 10, derive_seed(5, "mono"));
    MatSet big = small;
    MatSet extra = random_subset(all, 30, derive_seed(6, "mono"));
    extra.elems.for_each([&](std::uint64_t x) { big.elems.insert(x); });
    ImageResult ri = image_x_plus_yz(r, small, small, small);
    ImageResult rj = image_x_plus_yz(r, big, big, big);
    ri.image.elems.for_each([&](std::uint64_t x) { CHECK(rj.image.elems.contains(x)); });
    CHECK(rj.image.size() >= ri.image.size());
}

TEST_CASE("determinant partition covers and separates") {
    MatRing r = ring_2_3();
    MatSet all = matset_from_stratum(r, Stratum::all());
    MatSet s = random_subset(all, 40, derive_seed(7, "part"));
    auto parts = det_strata_partition(r, s);
    CHECK(parts.size() == 3);
    std::uint64_t total = 0;
    for (const auto& [alpha, part] : parts) {
        total += part.size();
        part.elems.for_each([&](std::uint64_t x) { CHECK(r.det_index(x) == alpha); });
    }
    CHECK(total == s.size());
}

TEST_CASE("largest invertible class obeys the pigeonhole floor") {
    MatRing r = ring_2_3();
    MatSet gl = matset_from_stratum(r, Stratum::gl());
    LargestClass lc = largest_det_class(r, gl);
    CHECK(lc.subset.size() == 24);
    CHECK(lc.alpha == 1);  // ties break to the smallest alpha
    MatSet sing = matset_from_stratum(r, Stratum::singular());
    CHECK_THROWS_AS(largest_det_class(r, sing), std::domain_error);
}

TEST_CASE("scaled product check on whole strata") {
    MatRing r = ring_2_3();
    MatSet d1 = matset_from_stratum(r, Stratum::of_det(1));
    MatSet d2 = matset_from_stratum(r, Stratum::of_det(2));
    EqualSizeCheck chk = scaled_product_check(r, d1, d2, 1, 2);
    CHECK(chk.pass);
    CHECK(chk.sizes_preserved);
    CHECK(chk.lhs == 24);  // SL * (det 2 stratum) stays one stratum
    CHECK(chk.rhs == 24);
    CHECK_THROWS_AS(scaled_product_check(r, d1, d2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(scaled_product_check(r, d1, d2, 0, 2), std::invalid_argument);
}

TEST_CASE("scaled sum check keeps sumset sizes") {
    MatRing r = ring_2_3();
    MatSet d2 = matset_from_stratum(r, Stratum::of_det(2));
    MatSet all = matset_from_stratum(r, Stratum::all());
    MatSet y = random_subset(all, 20, derive_seed(8, "ssum"));
    EqualSizeCheck chk = scaled_sum_check(r, d2, y, 2);
    CHECK(chk.pass);
    CHECK(chk.sizes_preserved);
    CHECK_THROWS_AS(scaled_sum_check(r, d2, y, 1), std::invalid_argument);
}

TEST_CASE("embedding bound for the sum-product pair at (1,3)") {
    MatRing r(build_field(3, 1), 1);
    MatSet a = matset_from_indices(1, 3, {1, 2});
    EmbeddingReport rep = embed_check_sum_product(r, a);
    CHECK(rep.edges == 8);
    CHECK(rep.required == 8);
    CHECK(rep.pass);
    CHECK(rep.size_v == 4);   // {(a, ab)}
    CHECK(rep.size_u == 6);   // (A+A) x (AA)
    MatSet with_zero = matset_from_indices(1, 3, {0, 1});
    CHECK_THROWS_AS(embed_check_sum_product(r, with_zero), std::invalid_argument);
}

TEST_CASE("embedding bounds for the three-variable forms at (1,3)") {
    MatRing r(build_field(3, 1), 1);
    MatSet a = matset_from_indices(1, 3, {1, 2});
    MatSet b = matset_from_indices(1, 3, {0, 1});
    MatSet c = matset_from_indices(1, 3, {1});
    EmbeddingReport rep = embed_check_x_times_y_plus_z(r, a, b, c);
    CHECK(rep.pass);
    CHECK(rep.required == 4);
    rep = embed_check_x_plus_yz(r, b, a, c);
    CHECK(rep.pass);
    CHECK(rep.required == 4);
}

TEST_CASE("target embedding flags unreachable targets") {
    MatRing r(build_field(3, 1), 1);
    MatSet zero = matset_from_indices(1, 3, {0});
    EmbeddingReport rep = embed_check_xy_plus_z_plus_t(r, zero, 0);
    CHECK(rep.pass);  // 0*0 + 0 + 0 = 0
    rep = embed_check_xy_plus_z_plus_t(r, zero, 1);
    CHECK_FALSE(rep.pass);
    CHECK(rep.edges == 0);
}

TEST_CASE("random subsets are deterministic and well sized") {
    MatRing r = ring_2_3();
    MatSet gl = matset_from_stratum(r, Stratum::gl());
    MatSet s1 = random_subset(gl, 12, 77);
    MatSet s2 = random_subset(gl, 12, 77);
    CHECK(s1.elems == s2.elems);
    CHECK(s1.size() == 12);
    s1.elems.for_each([&](std::uint64_t x) { CHECK(gl.elems.contains(x)); });
    MatSet s3 = random_subset(gl, 12, 78);
    CHECK(s3.size() == 12);
    CHECK_FALSE(s3.elems == s1.elems);  // overwhelmingly likely, frozen by seed
    CHECK_THROWS_AS(random_subset(gl, 49, 1), std::invalid_argument);
}

TEST_CASE("sample counts are exact ceilings") {
    CHECK(sample_count(BigRat(1), 48) == 48);
    CHECK(sample_count(BigRat(1, 48), 48) == 1);
    CHECK(sample_count(BigRat(1, 3), 10) == 4);
    CHECK(sample_count(BigRat(1, 2), 81) == 41);
    CHECK_THROWS_AS(sample_count(BigRat(3, 2), 10), std::invalid_argument);
}

TEST_CASE("domain resolution") {
    MatRing r = ring_2_3();
    CHECK(resolve_domain(r, "GL").size() == 48);
    CHECK(resolve_domain(r, "DET:2").size() == 24);
    CHECK_THROWS_AS(resolve_domain(r, "NOPE"), std::invalid_argument);
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "splab_domain_test.txt";
    matset_from_indices(2, 3, {4, 9}).save(tmp);
    MatSet loaded = resolve_domain(r, "@" + tmp.string());
    CHECK(loaded.size() == 2);
    fs::remove(tmp);
}

TEST_CASE("sweep validation and trivial coverage") {
    MatRing r = ring_2_3();
    SweepConfig cfg;
    cfg.polynomial = Polynomial::XYPlusZPlusT;
    cfg.domain = "ALL";
    cfg.trials = 0;
    cfg.densities = {BigRat(1)};
    CHECK_THROWS_AS(threshold_sweep(r, cfg), std::invalid_argument);
    cfg.trials = 2;
    cfg.densities = {BigRat(1, 2), BigRat(1, 2)};
    CHECK_THROWS_AS(threshold_sweep(r, cfg), std::invalid_argument);
    cfg.densities = {BigRat(1, 2), BigRat(1)};
    auto rows = threshold_sweep(r, cfg);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        if (row.density == 1) {
            CHECK(row.covers_all);
            CHECK(row.coverage == 1.0);
        }
        CHECK(row.size_a == sample_count(row.density, 81));
        CHECK(row.size_d == row.size_a);
    }
    // per-trial seeds reproduce the exact rows
    auto rows2 = threshold_sweep(r, cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].image == rows2[i].image);
        CHECK(rows[i].seed == rows2[i].seed);
    }
}

TEST_CASE("predicted thresholds") {
    CHECK(*predicted_threshold(Polynomial::XPlusYZ, "SL", 2, 3) ==
          doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(*predicted_threshold(Polynomial::XPlusYZ, "ALL", 2, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(*predicted_threshold(Polynomial::XTimesYPlusZ, "ALL", 2, 3) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(*predicted_threshold(Polynomial::XYPlusZPlusT, "ALL", 2, 3) ==
          doctest::Approx(std::pow(3.0, -0.25)));
    CHECK_FALSE(predicted_threshold(Polynomial::SumSet, "ALL", 2, 3).has_value());
}
