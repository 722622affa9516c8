#include "doctest.h"

#include <stdexcept>

#include "json.hpp"
#include "splab/verify.hpp"

using namespace splab;

TEST_CASE("level names") {
    CHECK(parse_level("quick") == VerifyLevel::Quick);
    CHECK(parse_level("full") == VerifyLevel::Full);
    CHECK_THROWS_AS(parse_level("deep"), std::invalid_argument);
}

TEST_CASE("full verify run over the scalar ring") {
    MatRing ring(build_field(3, 1), 1);
    RunManifest m = run_verify(ring, VerifyLevel::Full, 1, 1);
    CHECK(m.pass());
    CHECK(m.n == 1);
    CHECK(m.q == 3);
    CHECK(m.level == "full");
    REQUIRE(m.suites.size() == 7);
    const char* expected[] = {"field-axioms",  "matrix-ring", "counting",
                              "digraph-oracles", "normality",   "scaled-identities",
                              "embedding-bounds"};
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(m.suites[i].name == expected[i]);
        CHECK(m.suites[i].pass);
        CHECK(m.suites[i].failures == 0);
        CHECK(m.suites[i].checks > 0);
    }
}

TEST_CASE("quick verify run stays green at (1,5)") {
    MatRing ring(build_field(5, 1), 1);
    RunManifest m = run_verify(ring, VerifyLevel::Quick, 7, 1);
    CHECK(m.pass());
    CHECK(m.level == "quick");
}

TEST_CASE("manifest serializes to parseable json") {
    MatRing ring(build_field(3, 1), 1);
    RunManifest m = run_verify(ring, VerifyLevel::Quick, 1, 1);
    m.outputs.push_back("somewhere.json");
    nlohmann::json j = nlohmann::json::parse(m.to_json());
    CHECK(j["n"] == 1);
    CHECK(j["q"] == 3);
    CHECK(j["level"] == "quick");
    CHECK(j["seed"] == 1);
    CHECK(j["pass"] == true);
    CHECK(j["suites"].size() == 7);
    CHECK(j["suites"][0]["name"] == "field-axioms");
    CHECK(j["suites"][0]["checks"].get<std::uint64_t>() > 0);
    CHECK(j["outputs"][0] == "somewhere.json");
}
