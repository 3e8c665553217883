#include "doctest.h"

#include "fpp/errors.hpp"
#include "fpp/lattice.hpp"
#include "fpp/weights.hpp"

#include <algorithm>
#include <limits>

using namespace fpp;

namespace {

// seeded pseudorandom int in [lo, hi]
std::int64_t rnd_int(std::uint64_t& state, std::int64_t lo, std::int64_t hi) {
    state = mix64(state);
    return lo + static_cast<std::int64_t>(state % static_cast<std::uint64_t>(hi - lo + 1));
}

Point rnd_point(std::uint64_t& state, std::size_t dim, std::int64_t radius) {
    Point p(dim);
    for (auto& c : p) c = rnd_int(state, -radius, radius);
    return p;
}

} // namespace

TEST_CASE("construction validates the generating set") {
    CHECK_THROWS_AS(CayleyLattice(2, {Point{1, 0}}), ConfigError); // not symmetric
    CHECK_NOTHROW(CayleyLattice(2, {Point{1, 0}, Point{0, 1}}, /*symmetrize=*/true));
    CHECK_THROWS_AS(CayleyLattice(2, {Point{0, 0}}), ConfigError);
    CHECK_THROWS_AS(CayleyLattice(2, {Point{2, 0}, Point{-2, 0}, Point{0, 1}, Point{0, -1}}),
                    ConfigError); // index-2 sublattice
    // (1,1),(1,-1) span an index-2 sublattice of Z^2
    CHECK_THROWS_AS(
        CayleyLattice(2, {Point{1, 1}, Point{-1, -1}, Point{1, -1}, Point{-1, 1}}),
        ConfigError);
    CHECK_NOTHROW(CayleyLattice(2, {Point{1, 1}, Point{-1, -1}, Point{1, 0}, Point{-1, 0}}));
    CHECK(CayleyLattice::standard(3).degree() == 6);
    CHECK(CayleyLattice::king2d().degree() == 8);
}

TEST_CASE("canonical_edge canonicalizes both orientations") {
    auto lat = CayleyLattice::standard(2);
    auto e1 = lat.canonical_edge(Point{0, 0}, Point{1, 0});
    CHECK(e1.base == Point{0, 0});
    CHECK(e1.step == Point{1, 0});
    auto e2 = lat.canonical_edge(Point{1, 0}, Point{0, 0});
    CHECK(e1 == e2);
    CHECK_THROWS_AS(lat.canonical_edge(Point{0, 0}, Point{1, 1}), NotAdjacentError);
}

TEST_CASE("graph_distance matches the closed forms for standard and king moves") {
    auto std2 = CayleyLattice::standard(2);
    CHECK(std2.graph_distance(Point{0, 0}, Point{3, 4}) == 7);
    CHECK(std2.graph_distance(Point{0, 0}, Point{0, 0}) == 0);
    auto king = CayleyLattice::king2d();
    CHECK(king.graph_distance(Point{0, 0}, Point{3, 4}) == 4);

    std::uint64_t state = 7;
    for (int i = 0; i < 30; ++i) {
        Point x = rnd_point(state, 2, 10), y = rnd_point(state, 2, 10);
        CHECK(std2.graph_distance(x, y) == l1_norm(point_sub(y, x)));
        CHECK(king.graph_distance(x, y) == linf_norm(point_sub(y, x)));
    }
}

TEST_CASE("word metric axioms and translation invariance on random triples") {
    auto lat = CayleyLattice(2, {Point{1, 0}, Point{-1, 0}, Point{0, 1}, Point{0, -1},
                                 Point{2, 1}, Point{-2, -1}});
    std::uint64_t state = 99;
    for (int i = 0; i < 25; ++i) {
        Point x = rnd_point(state, 2, 10), y = rnd_point(state, 2, 10),
              z = rnd_point(state, 2, 10), w = rnd_point(state, 2, 10);
        auto dxy = lat.graph_distance(x, y);
        CHECK(dxy >= 0);
        CHECK(dxy == lat.graph_distance(y, x));
        CHECK((dxy == 0) == (x == y));
        CHECK(dxy <= lat.graph_distance(x, z) + lat.graph_distance(z, y));
        CHECK(dxy == lat.graph_distance(point_add(x, w), point_add(y, w)));
    }
}

TEST_CASE("word_ball enumerates exactly and respects the growth bound") {
    auto std2 = CayleyLattice::standard(2);
    CHECK(std2.word_ball(Point{0, 0}, 0) == std::vector<Point>{Point{0, 0}});
    CHECK(std2.word_ball(Point{0, 0}, 1).size() == 5);
    CHECK(CayleyLattice::king2d().word_ball(Point{0, 0}, 5).size() == 121);

    // monotone in r and bounded by K r^d with K = |B(0,1)| * 3^d
    double k_const = static_cast<double>(std2.word_ball(Point{0, 0}, 1).size()) * 9.0;
    std::size_t prev = 0;
    for (std::int64_t r = 1; r <= 30; ++r) {
        auto size = std2.word_ball(Point{0, 0}, r).size();
        CHECK(size >= prev);
        CHECK(static_cast<double>(size) <= k_const * static_cast<double>(r) * static_cast<double>(r));
        prev = size;
    }

    // membership matches graph_distance
    auto ball = std2.word_ball(Point{1, -2}, 4);
    for (const auto& p : ball) CHECK(std2.graph_distance(Point{1, -2}, p) <= 4);
    CHECK(ball.size() == 41); // 2r^2+2r+1 for L1

    CHECK_THROWS_AS(std2.word_ball(Point{0, 0}, 100, /*point_budget=*/10), ResourceLimitError);
}

TEST_CASE("point arithmetic checks overflow") {
    Point big{std::numeric_limits<std::int64_t>::max(), 0};
    CHECK_THROWS_AS(point_add(big, Point{1, 0}), OverflowError);
}
