#include "doctest.h"

#include <cmath>
#include <vector>

#include "splab/spectral.hpp"
#include "splab/util.hpp"

using namespace splab;

namespace {

constexpr double kTight = 1e-9;

MatRing scalar_ring(std::uint32_t p) { return MatRing(build_field(p, 1), 1); }

}  // namespace

TEST_CASE("matrix action fixes the all-ones direction") {
    MatRing r(build_field(3, 1), 2);
    SpectralEngine eng(r);
    std::uint64_t N = eng.vertex_count();
    double d = static_cast<double>(eng.degree());
    std::vector<double> ones(N, 1.0), y(N), z(N);
    eng.apply_M(ones.data(), y.data(), 1);
    for (double v : y) CHECK(v == d);
    eng.apply_Mt(ones.data(), y.data(), 1);
    for (double v : y) CHECK(v == d);
    eng.apply_M(y.data(), z.data(), 1);
    for (double v : z) CHECK(v == d * d);
}

TEST_CASE("matrix action is linear") {
    MatRing r = scalar_ring(5);
    SpectralEngine eng(r);
    std::uint64_t N = eng.vertex_count();
    std::vector<double> x1(N), x2(N), sum(N), y1(N), y2(N), ysum(N);
    std::uint64_t state = 99;
    for (std::uint64_t i = 0; i < N; ++i) {
        state += 0x9e3779b97f4a7c15ull;
        x1[i] = static_cast<double>(splitmix64(state) % 1000) / 1000.0;
        state += 0x9e3779b97f4a7c15ull;
        x2[i] = static_cast<double>(splitmix64(state) % 1000) / 1000.0;
        sum[i] = 2.0 * x1[i] - 3.0 * x2[i];
    }
    eng.apply_M(x1.data(), y1.data(), 1);
    eng.apply_M(x2.data(), y2.data(), 1);
    eng.apply_M(sum.data(), ysum.data(), 1);
    for (std::uint64_t i = 0; i < N; ++i)
        CHECK(std::abs(ysum[i] - (2.0 * y1[i] - 3.0 * y2[i])) <= 1e-12);
}

TEST_CASE("dense spectra of the scalar digraphs are sqrt(q)") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        MatRing r = scalar_ring(p);
        SpectralReport rep = second_eigenvalue(r, SpectralMethod::DenseExact);
        CHECK(rep.N == static_cast<std::uint64_t>(p) * p);
        CHECK(rep.d == p);
        CHECK(rep.connected);
        CHECK(rep.converged);
        CHECK(std::abs(rep.lambda2 - std::sqrt(static_cast<double>(p))) <= kTight * p);
        CHECK(rep.residual <= kTight);
        // lambda / q^{1/2} = 1 in the scalar case
        CHECK(std::abs(rep.c_measured - 1.0) <= 1e-6);
        CHECK(rep.lambda2 < static_cast<double>(rep.d));
    }
}

TEST_CASE("power iteration agrees with the dense solver") {
    MatRing r = scalar_ring(7);
    SpectralReport dense = second_eigenvalue(r, SpectralMethod::DenseExact);
    SpectralOptions opts;
    opts.seed = 42;
    SpectralReport power = second_eigenvalue(r, SpectralMethod::DeflatedPower, opts);
    CHECK(power.converged);
    CHECK(power.iterations > 0);
    CHECK(std::abs(power.lambda2 - dense.lambda2) <= 1e-6 * dense.lambda2);
}

TEST_CASE("power iteration at (2,3) finds the q^3 singular value") {
    MatRing r(build_field(3, 1), 2);
    SpectralOptions opts;
    opts.tol = 1e-10;
    SpectralReport rep = second_eigenvalue(r, SpectralMethod::DeflatedPower, opts);
    CHECK(rep.converged);
    CHECK(rep.connected);
    // MM^t is a Cayley matrix of the additive group, so its spectrum comes
    // from character sums: the second eigenvalue is q^{n^2} * q^{n(n-1)}.
    CHECK(std::abs(rep.lambda2 - 27.0) <= 1e-6 * 27.0);
    CHECK(rep.lambda2 < static_cast<double>(rep.d));
    CHECK(std::abs(rep.c_measured - 27.0 / std::pow(3.0, 3.5)) <= 1e-9);
}

TEST_CASE("method parsing") {
    CHECK(parse_method("dense-exact") == SpectralMethod::DenseExact);
    CHECK(parse_method("deflated-power") == SpectralMethod::DeflatedPower);
    CHECK_THROWS_AS(parse_method("qr"), std::invalid_argument);
    CHECK(method_name(SpectralMethod::DenseExact) == "dense-exact");
    CHECK(method_name(SpectralMethod::DeflatedPower) == "deflated-power");
}

TEST_CASE("dense budget is enforced") {
    MatRing r(build_field(3, 1), 2);
    SpectralOptions opts;
    opts.dense_max_n = 100;  // N = 6561 exceeds this
    opts.check_connectivity = false;
    CHECK_THROWS_AS(second_eigenvalue(r, SpectralMethod::DenseExact, opts),
                    std::invalid_argument);
}
