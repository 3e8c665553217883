#pragma once

#include <cstdint>
#include <vector>

#include "fpp/point.hpp"

namespace fpp {

enum class AuxNorm { L2, Linf };

/// Finite subset of Z^d, sorted and deduplicated.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<Point> points;

    static PointCloud from_points(std::size_t dim, std::vector<Point> pts);

    bool contains(const Point& p) const;
    std::size_t size() const { return points.size(); }

    /// max over the cloud of <x, dir>.
    double support(const std::vector<double>& dir) const;

    PointCloud scaled(std::int64_t t) const; // {t*a}
    PointCloud negated() const;
    bool is_symmetric() const;
};

/// Exact sumset {a + b}, deduplicated.
PointCloud minkowski_sum(const PointCloud& a, const PointCloud& b,
                         std::size_t point_budget = 50'000'000);

/// n-fold sumset via repeated squaring on sumsets.
PointCloud minkowski_power(const PointCloud& a, std::size_t n,
                           std::size_t point_budget = 50'000'000);

/// Convex polytope given by its vertex list (exact extreme points in
/// dimension <= 2; the full generating cloud otherwise, which evaluates the
/// same support function).
struct Polytope {
    std::size_t dim = 0;
    std::vector<std::vector<double>> vertices;

    double support(const std::vector<double>& dir) const;
    bool contains(const std::vector<double>& p, double tol = 1e-9) const; // dim == 2 only
};

Polytope convex_hull(const PointCloud& a);

/// Fixed direction set: equally spaced angles in d = 2, a seeded
/// quasi-uniform set of unit vectors in higher dimension.
std::vector<std::vector<double>> direction_set(std::size_t dim, std::size_t count,
                                               std::uint64_t seed = 2026);

double aux_norm(const std::vector<double>& v, AuxNorm norm);

/// Hausdorff distance between finite clouds rescaled by 1/scale_a and
/// 1/scale_b respectively.
double hausdorff_scaled_clouds(const std::vector<Point>& a, double scale_a,
                               const std::vector<Point>& b, double scale_b, AuxNorm norm);

inline double hausdorff_clouds(const std::vector<Point>& a, const std::vector<Point>& b,
                               AuxNorm norm) {
    return hausdorff_scaled_clouds(a, 1.0, b, 1.0, norm);
}

/// Hausdorff distance between convex bodies via support functions over a
/// direction set (exact in the dense-direction limit).
double hausdorff_support(const Polytope& a, const Polytope& b,
                         const std::vector<std::vector<double>>& dirs, AuxNorm norm);

/// d_H between a lattice cloud and a convex polygon (dim == 2), measured by
/// rasterizing the polygon at `resolution`.
double hausdorff_cloud_polytope_raster(const PointCloud& cloud, const Polytope& poly,
                                       AuxNorm norm, double resolution = 0.125);

} // namespace fpp
