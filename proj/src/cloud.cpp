#include "fpp/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "fpp/errors.hpp"
#include "fpp/weights.hpp"

namespace fpp {

PointCloud PointCloud::from_points(std::size_t dim, std::vector<Point> pts) {
    for (const auto& p : pts) {
        if (p.size() != dim) throw ConfigError("point dimension mismatch in cloud");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return PointCloud{dim, std::move(pts)};
}

bool PointCloud::contains(const Point& p) const {
    return std::binary_search(points.begin(), points.end(), p);
}

double PointCloud::support(const std::vector<double>& dir) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        double dot = 0;
        for (std::size_t i = 0; i < dim; ++i) dot += static_cast<double>(p[i]) * dir[i];
        best = std::max(best, dot);
    }
    return best;
}

PointCloud PointCloud::scaled(std::int64_t t) const {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(point_scale(p, t));
    return from_points(dim, std::move(out));
}

PointCloud PointCloud::negated() const { return scaled(-1); }

bool PointCloud::is_symmetric() const {
    for (const auto& p : points) {
        if (!contains(point_neg(p))) return false;
    }
    return true;
}

PointCloud minkowski_sum(const PointCloud& a, const PointCloud& b, std::size_t point_budget) {
    if (a.dim != b.dim) throw ConfigError("minkowski_sum dimension mismatch");
    if (a.size() * b.size() > point_budget * 8) {
        throw ResourceLimitError("minkowski_sum pair count over budget");
    }
    std::unordered_set<Point, PointHash> seen;
    for (const auto& p : a.points) {
        for (const auto& q : b.points) {
            seen.insert(point_add(p, q));
            if (seen.size() > point_budget) {
                throw ResourceLimitError("minkowski_sum exceeds point budget");
            }
        }
    }
    std::vector<Point> out(seen.begin(), seen.end());
    return PointCloud::from_points(a.dim, std::move(out));
}

PointCloud minkowski_power(const PointCloud& a, std::size_t n, std::size_t point_budget) {
    if (n < 1) throw ConfigError("minkowski_power needs n >= 1");
    PointCloud result;
    PointCloud base = a;
    bool have_result = false;
    std::size_t k = n;
    while (k > 0) {
        if (k & 1) {
            result = have_result ? minkowski_sum(result, base, point_budget) : base;
            have_result = true;
        }
        k >>= 1;
        if (k > 0) base = minkowski_sum(base, base, point_budget);
    }
    return result;
}

namespace {

// Andrew monotone chain on integer points; exact with 64-bit cross products.
std::vector<Point> hull_2d(const std::vector<Point>& sorted_pts) {
    const auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    if (sorted_pts.size() <= 2) return sorted_pts;
    std::vector<Point> hull(2 * sorted_pts.size());
    std::size_t k = 0;
    for (const auto& p : sorted_pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    std::size_t lower = k + 1;
    for (auto it = sorted_pts.rbegin() + 1; it != sorted_pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull; // counterclockwise, no repeated first point
}

} // namespace

Polytope convex_hull(const PointCloud& a) {
    if (a.points.empty()) throw ConfigError("convex hull of empty cloud");
    Polytope poly;
    poly.dim = a.dim;
    std::vector<Point> verts;
    if (a.dim == 1) {
        verts = {a.points.front(), a.points.back()};
        if (verts[0] == verts[1]) verts.pop_back();
    } else if (a.dim == 2) {
        verts = hull_2d(a.points);
    } else {
        verts = a.points; // support-function representation via the full cloud
    }
    for (const auto& v : verts) {
        poly.vertices.emplace_back(v.begin(), v.end());
    }
    return poly;
}

double Polytope::support(const std::vector<double>& dir) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) {
        double dot = 0;
        for (std::size_t i = 0; i < dim; ++i) dot += v[i] * dir[i];
        best = std::max(best, dot);
    }
    return best;
}

bool Polytope::contains(const std::vector<double>& p, double tol) const {
    if (dim != 2) throw DomainError("polytope containment implemented for dim 2");
    if (vertices.size() == 1) {
        return std::abs(p[0] - vertices[0][0]) <= tol && std::abs(p[1] - vertices[0][1]) <= tol;
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % n];
        double cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        double scale = std::hypot(b[0] - a[0], b[1] - a[1]);
        if (n == 2) { // degenerate segment: both orientations must pass
            if (std::abs(cross) > tol * std::max(1.0, scale)) return false;
            double t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]));
            double len2 = scale * scale;
            if (t < -tol || t > len2 + tol) return false;
            return true;
        }
        if (cross < -tol * std::max(1.0, scale)) return false;
    }
    return true;
}

std::vector<std::vector<double>> direction_set(std::size_t dim, std::size_t count,
                                               std::uint64_t seed) {
    std::vector<std::vector<double>> dirs;
    dirs.reserve(count);
    if (dim == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
            dirs.push_back({std::cos(theta), std::sin(theta)});
        }
        return dirs;
    }
    // seeded quasi-uniform unit vectors from hashed gaussians (Box-Muller)
    std::uint64_t h = mix64(seed);
    auto next_uniform = [&h] {
        h = mix64(h);
        return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
    };
    while (dirs.size() < count) {
        std::vector<double> v(dim);
        double norm2 = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            double u1 = next_uniform(), u2 = next_uniform();
            v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            norm2 += v[i] * v[i];
        }
        if (norm2 < 1e-12) continue;
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : v) c *= inv;
        dirs.push_back(std::move(v));
    }
    return dirs;
}

double aux_norm(const std::vector<double>& v, AuxNorm norm) {
    if (norm == AuxNorm::Linf) {
        double m = 0;
        for (double c : v) m = std::max(m, std::abs(c));
        return m;
    }
    double ss = 0;
    for (double c : v) ss += c * c;
    return std::sqrt(ss);
}

double hausdorff_scaled_clouds(const std::vector<Point>& a, double scale_a,
                               const std::vector<Point>& b, double scale_b, AuxNorm norm) {
    if (a.empty() || b.empty()) throw ConfigError("hausdorff of empty set");
    const std::size_t dim = a.front().size();
    auto directed = [&](const std::vector<Point>& from, double sf, const std::vector<Point>& to,
                        double st) {
        double worst = 0;
        std::vector<double> diff(dim);
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                for (std::size_t i = 0; i < dim; ++i) {
                    diff[i] = static_cast<double>(p[i]) / sf - static_cast<double>(q[i]) / st;
                }
                best = std::min(best, aux_norm(diff, norm));
                if (best == 0.0) break;
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, scale_a, b, scale_b), directed(b, scale_b, a, scale_a));
}

double hausdorff_support(const Polytope& a, const Polytope& b,
                         const std::vector<std::vector<double>>& dirs, AuxNorm norm) {
    // d_H(A,B) = sup over dual-unit directions of |h_A - h_B|
    double worst = 0;
    for (const auto& dir : dirs) {
        // dual of Linf is L1; dual of L2 is L2
        double dual = 0;
        if (norm == AuxNorm::Linf) {
            for (double c : dir) dual += std::abs(c);
        } else {
            dual = aux_norm(dir, AuxNorm::L2);
        }
        if (dual < 1e-12) continue;
        worst = std::max(worst, std::abs(a.support(dir) - b.support(dir)) / dual);
    }
    return worst;
}

double hausdorff_cloud_polytope_raster(const PointCloud& cloud, const Polytope& poly,
                                       AuxNorm norm, double resolution) {
    if (cloud.dim != 2 || poly.dim != 2) {
        throw DomainError("raster hausdorff implemented for dim 2");
    }
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = hi_x;
    for (const auto& v : poly.vertices) {
        lo_x = std::min(lo_x, v[0]);
        hi_x = std::max(hi_x, v[0]);
        lo_y = std::min(lo_y, v[1]);
        hi_y = std::max(hi_y, v[1]);
    }
    auto min_dist_to_cloud = [&](double px, double py) {
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> diff(2);
        for (const auto& q : cloud.points) {
            diff[0] = px - static_cast<double>(q[0]);
            diff[1] = py - static_cast<double>(q[1]);
            best = std::min(best, aux_norm(diff, norm));
        }
        return best;
    };
    // polytope -> cloud direction: rasterize the body (vertices included)
    double worst = 0;
    for (const auto& v : poly.vertices) worst = std::max(worst, min_dist_to_cloud(v[0], v[1]));
    for (double x = lo_x; x <= hi_x + 1e-12; x += resolution) {
        for (double y = lo_y; y <= hi_y + 1e-12; y += resolution) {
            if (!poly.contains({x, y})) continue;
            worst = std::max(worst, min_dist_to_cloud(x, y));
        }
    }
    // cloud -> polytope direction: zero whenever the cloud sits inside the
    // body; otherwise point-to-boundary via ternary search per edge
    auto point_edge_dist = [&](double px, double py, const std::vector<double>& a,
                               const std::vector<double>& b) {
        double lo = 0, hi = 1;
        for (int it = 0; it < 80; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            auto at = [&](double t) {
                std::vector<double> diff{px - (a[0] + t * (b[0] - a[0])),
                                         py - (a[1] + t * (b[1] - a[1]))};
                return aux_norm(diff, norm);
            };
            if (at(m1) < at(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        std::vector<double> diff{px - (a[0] + lo * (b[0] - a[0])),
                                 py - (a[1] + lo * (b[1] - a[1]))};
        return aux_norm(diff, norm);
    };
    for (const auto& p : cloud.points) {
        std::vector<double> pd{static_cast<double>(p[0]), static_cast<double>(p[1])};
        if (poly.contains(pd)) continue;
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = poly.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            best = std::min(best, point_edge_dist(pd[0], pd[1], poly.vertices[i],
                                                  poly.vertices[(i + 1) % std::max<std::size_t>(n, 1)]));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace fpp
