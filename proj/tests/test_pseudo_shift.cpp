#include "doctest.h"

#include <cmath>
#include <random>

#include "dshift/pseudo_shift.hpp"

using namespace dshift;

namespace {

// weighted bilateral shift with pseudo-random but deterministic weights
PseudoShift make_shift(std::uint32_t seed, std::int64_t step = 1) {
    const IndexSpace z = IndexSpace::integers();
    return PseudoShift(
        SpaceModel::weighted_lp(z, 2.0, [](Index) { return 0.0; }),
        ShiftMap::translate(z, step), [seed](Index i) {
            std::mt19937 gen(seed ^ static_cast<std::uint32_t>(i.a * 2654435761u));
            std::uniform_real_distribution<double> mag(-1.0, 1.0);
            return LogScalar::from_log(mag(gen));
        });
}

}  // namespace

TEST_CASE("empty products are one") {
    const PseudoShift T = make_shift(7);
    const LogScalar p = forward_product(T, Index::scalar(3), 0);
    CHECK(p.log_mag == 0.0);
    const auto [bp, landing] = backward_product(T, Index::scalar(3), 0);
    CHECK(bp.log_mag == 0.0);
    CHECK(landing == Index::scalar(3));
}

TEST_CASE("backward walks annihilate after leaving phi(I)") {
    const IndexSpace n = IndexSpace::naturals();
    const PseudoShift T(
        SpaceModel::weighted_lp(n, 2.0, [](Index) { return 0.0; }),
        ShiftMap::translate(n, 1),
        [](Index) { return LogScalar::from_real(2.0); });
    const auto [p, landing] = backward_product(T, Index::scalar(2), 3);
    CHECK(p.is_zero());
    CHECK_FALSE(landing.has_value());
    // T e_0 = 0 for the backward-shift convention
    CHECK(apply(T, FinVector::basis(n, Index::scalar(0))).is_zero());
    CHECK(power_apply(T, FinVector::basis(n, Index::scalar(1)), 2).is_zero());
}

TEST_CASE("power_apply equals iterated apply on basis vectors, exactly") {
    const PseudoShift T = make_shift(11);
    const IndexSpace z = IndexSpace::integers();
    for (std::int64_t a = -3; a <= 3; ++a)
        for (std::size_t n = 0; n <= 20; ++n) {
            FinVector iterated = FinVector::basis(z, Index::scalar(a));
            for (std::size_t v = 0; v < n; ++v) iterated = apply(T, iterated);
            const FinVector direct =
                power_apply(T, FinVector::basis(z, Index::scalar(a)), n);
            REQUIRE(direct.terms().size() == iterated.terms().size());
            for (std::size_t t = 0; t < direct.terms().size(); ++t) {
                CHECK(direct.terms()[t].first == iterated.terms()[t].first);
                CHECK(direct.terms()[t].second.log_mag ==
                      iterated.terms()[t].second.log_mag);
                CHECK(direct.terms()[t].second.arg ==
                      iterated.terms()[t].second.arg);
            }
        }
}

TEST_CASE("power_apply composes: T^m T^n = T^(m+n) up to float slack") {
    const PseudoShift T = make_shift(13);
    const IndexSpace z = IndexSpace::integers();
    FinVector x(z);
    x.add_term(Index::scalar(0), LogScalar::from_real(1.0));
    x.add_term(Index::scalar(2), LogScalar::from_real(-0.5));
    for (std::size_t m = 0; m <= 10; ++m)
        for (std::size_t n = 0; m + n <= 20; ++n) {
            const FinVector lhs = power_apply(T, power_apply(T, x, m), n);
            const FinVector rhs = power_apply(T, x, m + n);
            REQUIRE(lhs.terms().size() == rhs.terms().size());
            for (std::size_t t = 0; t < lhs.terms().size(); ++t) {
                CHECK(lhs.terms()[t].first == rhs.terms()[t].first);
                CHECK(lhs.terms()[t].second.log_mag ==
                      doctest::Approx(rhs.terms()[t].second.log_mag)
                          .epsilon(1e-12));
            }
        }
}

TEST_CASE("T^{rn} s_map is the identity on basis vectors, exactly") {
    for (std::uint32_t seed : {3u, 17u, 101u}) {
        const PseudoShift T = make_shift(seed);
        const IndexSpace z = IndexSpace::integers();
        for (std::size_t r : {1u, 2u, 3u})
            for (std::size_t n : {1u, 5u, 12u})
                for (std::int64_t a = -2; a <= 2; ++a) {
                    const Index i = Index::scalar(a);
                    const FinVector back =
                        power_apply(T, s_map(T, r, n, i), r * n);
                    CHECK((back - FinVector::basis(z, i)).is_zero());
                }
    }
}

TEST_CASE("s_map_linear extends s_map linearly") {
    const PseudoShift T = make_shift(23);
    const IndexSpace z = IndexSpace::integers();
    FinVector x(z);
    x.add_term(Index::scalar(-1), LogScalar::from_real(2.0));
    x.add_term(Index::scalar(3), LogScalar::from_real(0.25));
    const FinVector y = s_map_linear(T, 2, 4, x);
    const FinVector back = power_apply(T, y, 8);
    CHECK((back - x).is_zero());
}
