#include "doctest.h"

#include "dshift/index_space.hpp"

using namespace dshift;

TEST_CASE("integer enumeration interleaves around zero") {
    const IndexSpace z = IndexSpace::integers();
    const std::vector<std::int64_t> want = {0, 1, -1, 2, -2, 3, -3};
    for (std::size_t m = 0; m < want.size(); ++m)
        CHECK(z.at(m) == Index::scalar(want[m]));
}

TEST_CASE("grid enumeration walks diagonals of N x Z") {
    const IndexSpace g = IndexSpace::grid();
    CHECK(g.at(0) == Index::pair(0, 0));
    CHECK(g.at(1) == Index::pair(0, 1));
    CHECK(g.at(2) == Index::pair(1, 0));
    CHECK(g.at(3) == Index::pair(0, -1));
    CHECK(g.at(4) == Index::pair(1, 1));
    CHECK(g.at(5) == Index::pair(2, 0));
}

TEST_CASE("rank inverts the enumeration on every kind") {
    for (const IndexSpace& space :
         {IndexSpace::integers(), IndexSpace::naturals(), IndexSpace::grid(),
          IndexSpace::tree_path()})
        for (std::size_t m = 0; m < 300; ++m)
            CHECK(space.rank(space.at(m)) == m);
}

TEST_CASE("windows are enumeration prefixes") {
    const IndexSpace g = IndexSpace::grid();
    const auto w = g.window(4);
    REQUIRE(w.size() == 4);
    for (std::size_t m = 0; m < 4; ++m) CHECK(w[m] == g.at(m));
}

TEST_CASE("membership respects the kind") {
    CHECK(IndexSpace::integers().contains(Index::scalar(-5)));
    CHECK_FALSE(IndexSpace::naturals().contains(Index::scalar(-1)));
    CHECK(IndexSpace::grid().contains(Index::pair(0, -7)));
    CHECK_FALSE(IndexSpace::grid().contains(Index::pair(-1, 0)));
}

TEST_CASE("table spaces are finite with named indices") {
    const IndexSpace t = IndexSpace::table({"a", "b", "c"});
    CHECK(t.finite());
    CHECK(t.table_size() == 3);
    CHECK(t.to_string(Index::scalar(1)) == "b");
    CHECK(t.window(10).size() == 3);
    CHECK_FALSE(t.contains(Index::scalar(3)));
}
