#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "fpp/weights.hpp"

namespace fpp {

/// Axis-aligned clamp window for searches that must stay inside a finite box.
struct Box {
    Point lo;
    Point hi;

    bool contains(const Point& p) const {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        }
        return true;
    }

    static Box centered(const Point& c, std::int64_t halfwidth) {
        Point lo(c), hi(c);
        for (std::size_t i = 0; i < c.size(); ++i) {
            lo[i] -= halfwidth;
            hi[i] += halfwidth;
        }
        return Box{lo, hi};
    }
};

struct SearchOptions {
    std::size_t vertex_budget = 8'000'000;
    std::optional<Box> window; // restricts the search region, if set
};

/// A lattice path with its omega-length prefix sums. When produced by the
/// engine as a geodesic, omega_length() == d_omega(front, back) and the path
/// is simple.
struct PathRecord {
    std::vector<Point> vertices;
    std::vector<double> prefix; // prefix[i] = omega-length of vertices[0..i]

    double omega_length() const { return prefix.empty() ? 0.0 : prefix.back(); }
    std::size_t hops() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

struct OmegaBall {
    Point center;
    double radius;
    std::unordered_map<Point, double, PointHash> dist; // d_omega(center, .) <= radius
    std::vector<Point> points;                         // sorted
};

/// d_omega(x,y) plus one realizing omega-geodesic. Binary-heap Dijkstra over
/// the implicitly generated graph; ties among equal-length relaxations go to
/// the lexicographically smallest predecessor.
std::pair<double, PathRecord> omega_distance(const OmegaField& field, const Point& x,
                                             const Point& y, const SearchOptions& opts = {});

/// Distances from `source` to every point of `targets`, one truncated
/// single-source run (stops when all targets are settled).
std::unordered_map<Point, double, PointHash>
omega_distances_to_set(const OmegaField& field, const Point& source,
                       const std::vector<Point>& targets, const SearchOptions& opts = {});

/// {x : d_omega(o,x) <= r} with the distance map.
OmegaBall omega_ball(const OmegaField& field, const Point& o, double r,
                     const SearchOptions& opts = {});

/// Vertex on the path minimizing |cumulative length - lambda * total|;
/// residual is at most the largest single edge weight on the path.
Point geodesic_waypoint(const PathRecord& path, double lambda);

} // namespace fpp
