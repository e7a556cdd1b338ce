#include "doctest.h"

#include <cmath>

#include "dshift/space_model.hpp"

using namespace dshift;

namespace {
const IndexSpace kNat = IndexSpace::naturals();
const SpaceModel kL2 =
    SpaceModel::weighted_lp(kNat, 2.0, [](Index) { return 0.0; });
}  // namespace

TEST_CASE("basis vectors have the declared norm") {
    const SpaceModel w = SpaceModel::weighted_lp(
        kNat, 1.0, [](Index i) { return -static_cast<double>(i.a); });
    CHECK(w.basis_lognorm(Index::scalar(0)) == 0.0);
    CHECK(w.basis_lognorm(Index::scalar(3)) == -3.0);
    CHECK(std::isinf(w.basis_lognorm(std::nullopt)));
}

TEST_CASE("l2 norm of e0 + e1 is sqrt 2") {
    const FinVector x = FinVector::basis(kNat, Index::scalar(0)) +
                        FinVector::basis(kNat, Index::scalar(1));
    CHECK(kL2.vector_norm(x) == doctest::Approx(std::sqrt(2.0)));
    CHECK(kL2.vector_lognorm(x) == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("norms of coefficients like 2^8192 stay finite in the log") {
    FinVector x(kNat);
    x.add_term(Index::scalar(0),
               LogScalar::from_log(8192.0 * std::log(2.0)));
    x.add_term(Index::scalar(1),
               LogScalar::from_log(-8192.0 * std::log(2.0)));
    const double ln = kL2.vector_lognorm(x);
    CHECK(std::isfinite(ln));
    CHECK(ln == doctest::Approx(8192.0 * std::log(2.0)));
}

TEST_CASE("the zero vector has lognorm -inf") {
    CHECK(std::isinf(kL2.vector_lognorm(FinVector(kNat))));
    CHECK(kL2.vector_norm(FinVector(kNat)) == 0.0);
}

TEST_CASE("FinVector keeps support sorted, drops zeros, cancels exactly") {
    FinVector x(kNat);
    x.add_term(Index::scalar(4), LogScalar::from_real(2.0));
    x.add_term(Index::scalar(1), LogScalar::from_real(3.0));
    x.add_term(Index::scalar(4), LogScalar::from_real(-2.0));
    REQUIRE(x.terms().size() == 1);
    CHECK(x.terms()[0].first == Index::scalar(1));
    const FinVector d = x - x;
    CHECK(d.is_zero());
}

TEST_CASE("tree validation rejects cycles and large outdegree") {
    const IndexSpace t3 = IndexSpace::table({"a", "b", "c"});
    CHECK_THROWS_AS(
        TreeSpace::from_parent(
            t3, [](Index v) { return Index::scalar((v.a + 1) % 3); },
            [](Index) { return 0.0; }, 2.0, 3),
        TreeError);
    CHECK_THROWS_AS(
        TreeSpace::from_parent(
            t3, [](Index) { return Index::scalar(0); },
            [](Index) { return 0.0; }, 2.0, 3),
        TreeError);
}

TEST_CASE("tree space on the bi-infinite path exposes parent and child") {
    const TreeSpace tree = TreeSpace::from_parent(
        IndexSpace::tree_path(),
        [](Index v) { return Index::scalar(v.a + 1); },
        [](Index v) { return -std::abs(static_cast<double>(v.a)); }, 2.0);
    CHECK(tree.parent(Index::scalar(0)) == Index::scalar(1));
    CHECK(tree.child(Index::scalar(0)) == Index::scalar(-1));
    const SpaceModel space = SpaceModel::tree_lp(tree);
    // ||e_v|| = lambda_v^{1/p}
    CHECK(space.basis_lognorm(Index::scalar(4)) == -4.0 / 2.0);
}
