#pragma once

#include <cstdint>
#include <vector>

#include "fpp/oracle.hpp"

namespace fpp {

/// Rate function N(alpha) = c * alpha^u * (log alpha)^v with its validity
/// threshold alpha0. The case u = -v = 1/2 is the (alpha/log alpha)^{1/2}
/// rate that the average metric achieves.
struct SagProfile {
    double c = 1.0;
    double u = 0.5;
    double v = -0.5;
    double alpha0 = 8.0;

    double rate(double alpha) const;

    static SagProfile sqrt_over_log(double c, double alpha0 = 8.0) {
        return SagProfile{c, 0.5, -0.5, alpha0};
    }
};

struct SagStarResult {
    Point z;
    double eps = 0;       // additive defect / delta(x,y)
    double std_error = 0; // propagated estimator noise
    double score = 0;     // additive defect itself
};

/// Best near-lambda-midpoint z over the word ball of radius `search_radius`
/// around the rounded continuous interpolation point.
SagStarResult sagstar_deficiency(const Point& x, const Point& y, double lambda,
                                 const MetricOracle& oracle, std::int64_t search_radius);

struct SubdivisionLevel {
    double r_max = 0; // largest segment length after this level
    double r_min = 0; // smallest
};

struct SubdivisionResult {
    std::vector<Point> points;
    std::vector<DistanceValue> step_distances;
    double total = 0;              // delta(x,y)
    double deficiency = 0;         // max_i |delta(x_i,x_{i+1}) * m / delta(x,y) - 1|
    double std_error = 0;
    std::vector<SubdivisionLevel> levels; // per dyadic level, when applicable
};

/// Recursive near-midpoint construction with 2^k + 1 points.
SubdivisionResult dyadic_subdivision(const Point& x, const Point& y, unsigned k,
                                     const MetricOracle& oracle, std::int64_t search_radius,
                                     double alpha0 = 8.0);

/// Near-equipartition into m parts: dyadic grid fine enough, then one
/// near-midpoint query per interior point with the convex weight in [1/3,2/3].
SubdivisionResult sag_sequence(const Point& x, const Point& y, std::size_t m,
                               const MetricOracle& oracle, std::int64_t search_radius,
                               double alpha0 = 8.0);

struct MonotoneBallReport {
    enum class Status { Holds, Fails, Skipped };
    Status status = Status::Skipped;
    double worst_defect = 0; // max over enlarged-ball points of word distance to the ball
    double allowance = 0;    // 6 r G / N(r)
};

/// Checks the annulus absorption property: every point of the delta-ball of
/// radius (1 + 1/N(r)) r lies within word distance 6 r G / N(r) of the
/// delta-ball of radius r (G converts delta lengths to word lengths).
MonotoneBallReport monotone_ball_check(const Point& o, double r, const SagProfile& profile,
                                       const MetricOracle& oracle);

/// Lattice roundings of the equally spaced points of the segment [x,y];
/// each rounding is within the covering radius of its continuous point.
SubdivisionResult segment_rounding_sequence(const Point& x, const Point& y, std::size_t m,
                                            const NormOracle& oracle);

struct EmpiricalSagStarResult {
    Point z;
    double eps = 0;
    double std_error = 0;
    DistanceValue dxy, dxz, dzy;
    std::size_t geodesic_replicas = 0;
    std::size_t candidates_examined = 0;
};

/// Constructive near-midpoint for the average metric: waypoints of
/// omega-geodesics are the candidates, then d-bar estimates pick the best.
EmpiricalSagStarResult empirical_sagstar_via_geodesics(
    const CayleyLattice& lattice, const Point& x, const Point& y, double lambda,
    const WeightLaw& law, std::uint64_t base_seed, std::size_t geodesic_replicas,
    std::size_t mean_replicas, const SearchOptions& opts = {});

} // namespace fpp
