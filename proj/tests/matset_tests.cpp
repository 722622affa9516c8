#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "splab/matset.hpp"

using namespace splab;

TEST_CASE("index set maintains count and order") {
    IndexSet s(200);
    CHECK(s.empty());
    s.insert(7);
    s.insert(130);
    s.insert(7);
    CHECK(s.size() == 2);
    CHECK(s.contains(7));
    CHECK_FALSE(s.contains(8));
    s.erase(7);
    s.erase(7);
    CHECK(s.size() == 1);
    s.insert(3);
    s.insert(64);
    CHECK(s.to_vector() == std::vector<std::uint64_t>{3, 64, 130});
    s.clear();
    CHECK(s.empty());
}

TEST_CASE("universe size guards") {
    CHECK(mat_universe(2, 3) == 81);
    CHECK(mat_universe(3, 3) == 19683);
    CHECK_THROWS_AS(mat_universe(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(mat_universe(9, 3), std::invalid_argument);
    CHECK_THROWS_AS(mat_universe(4, 1024), std::invalid_argument);
}

TEST_CASE("text round trip") {
    MatSet s = matset_from_indices(2, 3, {0, 5, 28, 80});
    std::string text = s.to_text();
    CHECK(text == "2 3 4\n0\n5\n28\n80\n");
    MatSet back = MatSet::from_text(text);
    CHECK(back.n == 2);
    CHECK(back.q == 3);
    CHECK(back.elems == s.elems);
}

TEST_CASE("malformed text is rejected") {
    CHECK_THROWS_AS(MatSet::from_text(""), std::invalid_argument);
    CHECK_THROWS_AS(MatSet::from_text("2 x 1\n0\n"), std::invalid_argument);
    CHECK_THROWS_AS(MatSet::from_text("2 3 2\n0\n"), std::invalid_argument);       // missing index
    CHECK_THROWS_AS(MatSet::from_text("2 3 1\n0\n5\n"), std::invalid_argument);    // extra index
    CHECK_THROWS_AS(MatSet::from_text("2 3 1\n81\n"), std::invalid_argument);      // out of range
    CHECK_THROWS_AS(MatSet::from_text("2 3 2\n5\n5\n"), std::invalid_argument);    // not ascending
    CHECK_THROWS_AS(MatSet::from_text("2 3 2\n5\n3\n"), std::invalid_argument);
}

TEST_CASE("file round trip") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "splab_matset_test.txt";
    MatSet s = matset_from_indices(2, 3, {1, 2, 3});
    s.save(tmp);
    MatSet back = MatSet::load(tmp);
    CHECK(back.elems == s.elems);
    fs::remove(tmp);
    CHECK_THROWS_AS(MatSet::load(tmp), std::runtime_error);
}

TEST_CASE("stratum sets match stratum sizes") {
    MatRing r(build_field(3, 1), 2);
    for (const char* name : {"ALL", "GL", "SL", "SINGULAR", "RANK:1", "DET:2"}) {
        Stratum s = Stratum::parse(name);
        MatSet set = matset_from_stratum(r, s);
        CHECK(set.size() == r.stratum_size(s));
        set.elems.for_each([&](std::uint64_t i) { CHECK(r.in_stratum(i, s)); });
    }
}

TEST_CASE("compatibility tagging") {
    MatSet a(2, 3), b(2, 3), c(2, 5);
    CHECK(a.compatible(b));
    CHECK_FALSE(a.compatible(c));
    CHECK_THROWS_AS(matset_from_indices(2, 3, {81}), std::invalid_argument);
}
