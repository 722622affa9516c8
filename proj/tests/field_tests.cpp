#include "doctest.h"

#include <stdexcept>

#include "splab/field.hpp"

using namespace splab;

namespace {

void check_axioms_exhaustive(const Field& f) {
    std::uint64_t q = f.q();
    for (std::uint32_t a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        for (std::uint32_t b = 0; b < q; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            for (std::uint32_t c = 0; c < q; ++c) {
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

}  // namespace

TEST_CASE("prime power factorization") {
    PrimePower pp = factor_prime_power(9);
    CHECK(pp.p == 3);
    CHECK(pp.k == 2);
    pp = factor_prime_power(121);
    CHECK(pp.p == 11);
    CHECK(pp.k == 2);
    pp = factor_prime_power(7);
    CHECK(pp.p == 7);
    CHECK(pp.k == 1);
    CHECK_THROWS_AS(factor_prime_power(12), std::invalid_argument);
    CHECK_THROWS_AS(factor_prime_power(1), std::invalid_argument);
    CHECK_THROWS_AS(factor_prime_power(0), std::invalid_argument);
}

TEST_CASE("even characteristic needs the override") {
    CHECK_THROWS_AS(build_field(2, 1), std::invalid_argument);
    FieldOptions opts;
    opts.allow_even = true;
    Field f2 = build_field(2, 1, opts);
    CHECK(f2.q() == 2);
    CHECK(f2.add(1, 1) == 0);
}

TEST_CASE("F_9 uses the least irreducible modulus t^2 + 1") {
    Field f = build_field(3, 2);
    CHECK(f.modulus() == std::vector<std::uint32_t>{1, 0, 1});
    // index 3 encodes t; t*t = -1 = 2
    CHECK(f.mul(3, 3) == 2);
}

TEST_CASE("inverse oracle in F_7") {
    Field f = build_field(7, 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.mul(3, 5) == 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("field axioms exhaustive for q <= 9") {
    check_axioms_exhaustive(build_field(3, 1));
    check_axioms_exhaustive(build_field(5, 1));
    check_axioms_exhaustive(build_field(7, 1));
    check_axioms_exhaustive(build_field(3, 2));
}

TEST_CASE("unit group order for q <= 121") {
    for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{3, 2},
                        {5, 2},
                        {3, 3},
                        {7, 2},
                        {3, 4},
                        {11, 2}}) {
        Field f = build_field(p, k);
        for (std::uint32_t a = 1; a < f.q(); ++a) {
            CHECK(f.pow(a, static_cast<std::int64_t>(f.q()) - 1) == 1);
            CHECK(f.pow(a, -1) == f.inv(a));
        }
    }
}

TEST_CASE("coefficient round trip") {
    Field f = build_field(3, 2);
    for (std::uint32_t a = 0; a < f.q(); ++a) CHECK(f.from_coeffs(f.to_coeffs(a)) == a);
    CHECK_THROWS_AS(f.from_coeffs({1, 2, 0}), std::invalid_argument);
}

TEST_CASE("checked elements reject field mixing") {
    Field f3 = build_field(3, 1);
    Field f5 = build_field(5, 1);
    Felt a{1, &f3}, b{1, &f5};
    CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
    Felt c{2, &f3};
    CHECK((a + c).index == 0);
    CHECK((a * c).index == 2);
    CHECK(c.inverse().index == 2);
}

TEST_CASE("out of range indices are rejected") {
    Field f = build_field(3, 1);
    CHECK_THROWS_AS(f.add(3, 0), std::out_of_range);
    CHECK_THROWS_AS(f.mul(0, 7), std::out_of_range);
}
