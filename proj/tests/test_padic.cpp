#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "padic_ctqw/padic.hpp"

using namespace ctqw;

TEST_CASE("valuation of residue differences") {
    const Level l4(4);
    CHECK(valuation2(BallIndex(0, l4), BallIndex(2, l4)) == 1);
    CHECK(valuation2(BallIndex(12, l4), BallIndex(0, l4)) == 2);
    CHECK(valuation2(BallIndex(1, l4), BallIndex(2, l4)) == 0);

    const Level l3(3);
    CHECK(valuation2(BallIndex(5, l3), BallIndex(5, l3)) == 3);

    CHECK_THROWS_AS(static_cast<void>(valuation2(BallIndex(0, l3), BallIndex(0, l4))),
                    std::invalid_argument);
}

TEST_CASE("valuation agrees with a trailing-zero count") {
    const Level l(6);
    for (std::uint32_t a = 0; a < l.dim(); ++a) {
        for (std::uint32_t b = 0; b < l.dim(); ++b) {
            const int got = valuation2(BallIndex(a, l), BallIndex(b, l));
            const std::uint32_t diff = (a - b) & (static_cast<std::uint32_t>(l.dim()) - 1);
            const int expected = diff == 0 ? l.value() : oracles::trailing_zeros(diff);
            CHECK(got == expected);
        }
    }
}

TEST_CASE("ultrametric distance between balls") {
    const Level l4(4);
    CHECK(ultra_distance(BallIndex(0, l4), BallIndex(2, l4)) == 0.5);
    CHECK(ultra_distance(BallIndex(1, l4), BallIndex(2, l4)) == 1.0);

    // Equal residues sit 2^-l apart: the partition cannot resolve closer.
    const Level l3(3);
    CHECK(ultra_distance(BallIndex(5, l3), BallIndex(5, l3)) == 0.125);
}

TEST_CASE("distance is symmetric and ultrametric, exhaustively to depth 5") {
    for (int lv = 0; lv <= 5; ++lv) {
        const Level l(lv);
        for (std::uint32_t a = 0; a < l.dim(); ++a) {
            for (std::uint32_t b = 0; b < l.dim(); ++b) {
                const double dab = ultra_distance(BallIndex(a, l), BallIndex(b, l));
                CHECK(dab == ultra_distance(BallIndex(b, l), BallIndex(a, l)));
                for (std::uint32_t c = 0; c < l.dim(); ++c) {
                    const double dac = ultra_distance(BallIndex(a, l), BallIndex(c, l));
                    const double dcb = ultra_distance(BallIndex(c, l), BallIndex(b, l));
                    CHECK(dab <= std::max(dac, dcb));
                }
            }
        }
    }
}

TEST_CASE("refinement of a ball enumerates its children") {
    const auto children = refine_indices(BallIndex(1, Level(1)), Level(3));
    REQUIRE(children.size() == 4);
    CHECK(children[0].value() == 1);
    CHECK(children[1].value() == 3);
    CHECK(children[2].value() == 5);
    CHECK(children[3].value() == 7);
    for (const auto& child : children) CHECK(child.level() == Level(3));

    const auto self = refine_indices(BallIndex(0, Level(2)), Level(2));
    REQUIRE(self.size() == 1);
    CHECK(self[0].value() == 0);

    const auto whole = refine_indices(BallIndex(0, Level(0)), Level(2));
    REQUIRE(whole.size() == 4);
    CHECK(whole[3].value() == 3);

    CHECK_THROWS_AS(static_cast<void>(refine_indices(BallIndex(0, Level(3)), Level(2))),
                    std::invalid_argument);
}

TEST_CASE("children partition the parent: disjoint, exhaustive, measure preserved") {
    std::mt19937_64 rng(20260822);
    std::uniform_int_distribution<int> level_dist(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const Level l(level_dist(rng));
        const Level r(l.value() + std::uniform_int_distribution<int>(0, 4)(rng));
        const std::uint32_t value =
            std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(l.dim()) - 1)(rng);
        const BallIndex parent(value, l);

        const auto children = refine_indices(parent, r);
        CHECK(children.size() == (std::size_t{1} << (r.value() - l.value())));

        std::set<std::uint32_t> seen;
        for (const auto& child : children) {
            CHECK(coarse_parent(child.value(), l) == value);
            seen.insert(child.value());
        }
        CHECK(seen.size() == children.size());

        // Total measure of the children equals the parent ball's measure.
        const double total =
            static_cast<double>(children.size()) * r.ball_measure();
        CHECK(total == l.ball_measure());
    }
}

TEST_CASE("level bounds and the level cap") {
    CHECK_THROWS_AS(Level(-1), std::invalid_argument);
    CHECK_THROWS_AS(Level(level_cap() + 1), std::invalid_argument);
    CHECK(Level(0).dim() == 1);
    CHECK(Level(0).ball_measure() == 1.0);
    CHECK(Level(10).dim() == 1024);
}

TEST_CASE("ball index range checking") {
    CHECK_THROWS_AS(BallIndex(4, Level(2)), std::invalid_argument);
    CHECK_NOTHROW(BallIndex(3, Level(2)));
}

TEST_CASE("support sets are canonical and validated") {
    const SupportSet s(Level(3), {5, 1, 3});
    CHECK(s.size() == 3);
    CHECK(s.values() == std::vector<std::uint32_t>{1, 3, 5});
    CHECK(s.position(3) == 1);
    CHECK(!s.position(2).has_value());
    CHECK(s.at(2).value() == 5);

    CHECK_THROWS_AS(SupportSet(Level(3), {}), std::invalid_argument);
    CHECK_THROWS_AS(SupportSet(Level(3), {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SupportSet(Level(3), {8}), std::invalid_argument);

    const SupportSet full = SupportSet::full(Level(2));
    CHECK(full.size() == 4);
    CHECK(full.is_full());
}

TEST_CASE("support refinement and coarsening are inverse on tilings") {
    const SupportSet s(Level(2), {1, 2});
    const SupportSet fine = s.refined(Level(4));
    CHECK(fine.size() == 8);
    for (const std::uint32_t v : fine.values()) {
        CHECK(s.contains(coarse_parent(v, Level(2))));
    }
    CHECK(fine.coarsened(Level(2)) == s);

    // Coarsening alone may merge: both residues share the parent 1 mod 2.
    CHECK(s.coarsened(Level(1)).size() == 2);
    CHECK(SupportSet(Level(2), {1, 3}).coarsened(Level(1)).size() == 1);
}
