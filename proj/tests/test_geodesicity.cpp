#include "doctest.h"

#include "fpp/errors.hpp"
#include "fpp/geodesicity.hpp"

#include <cmath>
#include <vector>

using namespace fpp;

TEST_CASE("exact midpoints of the word metric have zero deficiency") {
    auto lat = CayleyLattice::standard(2);
    WordMetricOracle oracle(lat);
    auto res = sagstar_deficiency(Point{0, 0}, Point{12, 0}, 0.5, oracle, 2);
    CHECK(res.z == Point{6, 0}); // unique exact midpoint on the axis
    CHECK(res.score == 0.0);
    CHECK(res.eps == 0.0);

    // lambda = 1/3 also has an exact witness on the segment
    auto third = sagstar_deficiency(Point{0, 0}, Point{12, 0}, 1.0 / 3.0, oracle, 2);
    CHECK(third.z == Point{4, 0});
    CHECK(third.eps == 0.0);
}

TEST_CASE("matches a direct scan of the search region") {
    auto lat = CayleyLattice::standard(2);
    NormOracle oracle(lat, NormOracle::Norm::L2);
    Point x{0, 0}, y{9, 5};
    double lambda = 0.4;
    auto res = sagstar_deficiency(x, y, lambda, oracle, 3);

    // independent scan with the same objective
    double dxy = oracle.distance(x, y).value;
    Point center{static_cast<std::int64_t>(std::llround(lambda * 9)),
                 static_cast<std::int64_t>(std::llround(lambda * 5))};
    double best = 1e18;
    for (const auto& z : lat.word_ball(center, 3)) {
        double s = std::max(std::abs(oracle.distance(x, z).value - lambda * dxy),
                            std::abs(oracle.distance(z, y).value - (1 - lambda) * dxy));
        best = std::min(best, s);
    }
    CHECK(res.score == doctest::Approx(best).epsilon(1e-12));
    CHECK(res.eps == doctest::Approx(best / dxy).epsilon(1e-12));
    // continuous interpolation is in the region, so the defect is at most the
    // rounding error, under 1 in L2
    CHECK(res.score <= 1.0);
}

TEST_CASE("argument validation") {
    auto lat = CayleyLattice::standard(2);
    WordMetricOracle oracle(lat);
    CHECK_THROWS_AS(sagstar_deficiency(Point{0, 0}, Point{4, 0}, 0.5, oracle, -1),
                    EmptySearchRegion);
    CHECK_THROWS_AS(sagstar_deficiency(Point{0, 0}, Point{4, 0}, 1.5, oracle, 1), DomainError);
    CHECK_THROWS_AS(sagstar_deficiency(Point{0, 0}, Point{0, 0}, 0.5, oracle, 1), DomainError);
}

TEST_CASE("dyadic subdivision of a straight word segment is exact") {
    auto lat = CayleyLattice::standard(2);
    WordMetricOracle oracle(lat);
    auto res = dyadic_subdivision(Point{0, 0}, Point{32, 0}, 2, oracle, 2);
    REQUIRE(res.points.size() == 5);
    CHECK(res.points[1] == Point{8, 0});
    CHECK(res.points[2] == Point{16, 0});
    CHECK(res.points[3] == Point{24, 0});
    CHECK(res.total == doctest::Approx(32.0));
    CHECK(res.deficiency == doctest::Approx(0.0));
    REQUIRE(res.levels.size() == 2);
    CHECK(res.levels[0].r_max == doctest::Approx(16.0));
    CHECK(res.levels[1].r_max == doctest::Approx(8.0));
    CHECK(res.levels[1].r_min == doctest::Approx(8.0));

    // refusing to subdivide below the validity threshold
    CHECK_THROWS_AS(dyadic_subdivision(Point{0, 0}, Point{32, 0}, 3, oracle, 2),
                    ThresholdViolation);
}

TEST_CASE("sag sequence near-equipartition") {
    auto lat = CayleyLattice::standard(2);
    WordMetricOracle oracle(lat);

    auto trivial = sag_sequence(Point{0, 0}, Point{5, 0}, 1, oracle, 2);
    CHECK(trivial.points.size() == 2);
    CHECK(trivial.deficiency == 0.0);

    // power of two reduces to the dyadic construction
    auto pow2 = sag_sequence(Point{0, 0}, Point{32, 0}, 4, oracle, 2);
    auto dyad = dyadic_subdivision(Point{0, 0}, Point{32, 0}, 2, oracle, 2);
    CHECK(pow2.points == dyad.points);

    // m = 3 on an exact geodesic segment: equipartition within one step
    auto res = sag_sequence(Point{0, 0}, Point{48, 0}, 3, oracle, 2);
    REQUIRE(res.points.size() == 4);
    CHECK(res.points.front() == Point{0, 0});
    CHECK(res.points.back() == Point{48, 0});
    CHECK(res.total == doctest::Approx(48.0));
    CHECK(res.deficiency <= 0.15);
    for (const auto& d : res.step_distances) {
        CHECK(d.value >= 48.0 / 3 * 0.85);
        CHECK(d.value <= 48.0 / 3 * 1.15);
    }

    CHECK_THROWS_AS(sag_sequence(Point{0, 0}, Point{10, 0}, 4, oracle, 2), ThresholdViolation);
}

TEST_CASE("monotone ball absorption for the word metric") {
    auto lat = CayleyLattice::standard(2);
    WordMetricOracle oracle(lat);
    auto profile = SagProfile::sqrt_over_log(1.0);

    auto skipped = monotone_ball_check(Point{0, 0}, 4.0, profile, oracle);
    CHECK(skipped.status == MonotoneBallReport::Status::Skipped);

    auto held = monotone_ball_check(Point{0, 0}, 10.0, profile, oracle);
    CHECK(held.status == MonotoneBallReport::Status::Holds);
    CHECK(held.worst_defect > 0);              // the annulus is nonempty
    CHECK(held.worst_defect <= held.allowance);
}

TEST_CASE("segment rounding stays within the covering radius") {
    auto lat = CayleyLattice::standard(2);
    NormOracle oracle(lat, NormOracle::Norm::L2);
    auto res = segment_rounding_sequence(Point{0, 0}, Point{40, 0}, 4, oracle);
    REQUIRE(res.points.size() == 5);
    CHECK(res.points[2] == Point{20, 0});
    CHECK(res.deficiency == doctest::Approx(0.0));

    // off-axis segment: every step within covering-radius slack of total/m
    auto off = segment_rounding_sequence(Point{0, 0}, Point{31, 17}, 5, oracle);
    double total = off.total;
    double cover = oracle.covering_radius();
    for (const auto& d : off.step_distances) {
        CHECK(std::abs(d.value - total / 5) <= 2 * cover + 1e-9);
    }

    CHECK_THROWS_AS(segment_rounding_sequence(Point{0, 0}, Point{10, 0}, 20, oracle),
                    ThresholdViolation);
}

TEST_CASE("geodesic waypoints give good empirical near-midpoints") {
    auto lat = CayleyLattice::standard(2);
    auto law = WeightLaw::uniform(1.0, 2.0);
    auto res = empirical_sagstar_via_geodesics(lat, Point{0, 0}, Point{10, 0}, 0.5, law, 2026,
                                               16, 24);
    CHECK(res.geodesic_replicas == 16);
    CHECK(res.candidates_examined >= 1);
    CHECK(res.eps >= 0.0);
    CHECK(res.eps < 0.5); // a waypoint of a geodesic is a decent near-midpoint
    // the witness is metrically consistent within estimator noise
    CHECK(res.dxz.value + res.dzy.value >=
          res.dxy.value - 5 * (res.dxz.std_error + res.dzy.std_error + res.dxy.std_error) - 0.5);
    // z lies in the region geodesics can reach
    CHECK(lat.graph_distance(Point{0, 0}, res.z) <= 20);
}
