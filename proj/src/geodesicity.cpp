#include "fpp/geodesicity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_set>

#include "fpp/errors.hpp"
#include "fpp/parallel.hpp"

namespace fpp {

namespace {

Point rounded_interpolation(const Point& x, const Point& y, double lambda) {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double c = static_cast<double>(x[i]) +
                   lambda * (static_cast<double>(y[i]) - static_cast<double>(x[i]));
        out[i] = static_cast<std::int64_t>(std::llround(c));
    }
    return out;
}

// Shortest word distance from p to any point of `target`, BFS with a cap.
std::int64_t word_distance_to_set(const CayleyLattice& lattice, const Point& p,
                                  const std::unordered_set<Point, PointHash>& target,
                                  std::int64_t cap) {
    if (target.count(p)) return 0;
    std::unordered_set<Point, PointHash> seen{p};
    std::deque<std::pair<Point, std::int64_t>> queue{{p, 0}};
    while (!queue.empty()) {
        auto [cur, d] = queue.front();
        queue.pop_front();
        if (d >= cap) continue;
        for (const auto& g : lattice.generators()) {
            Point nxt = point_add(cur, g);
            if (!seen.insert(nxt).second) continue;
            if (target.count(nxt)) return d + 1;
            queue.push_back({nxt, d + 1});
        }
    }
    return cap + 1; // farther than the cap
}

double combine_se(double a, double b, double c = 0.0) {
    return std::sqrt(a * a + b * b + c * c);
}

SubdivisionResult finalize_sequence(std::vector<Point> points, const MetricOracle& oracle) {
    SubdivisionResult out;
    out.points = std::move(points);
    const std::size_t m = out.points.size() - 1;
    DistanceValue total = oracle.distance(out.points.front(), out.points.back());
    out.total = total.value;
    double worst = 0, worst_se = total.std_error;
    for (std::size_t i = 0; i < m; ++i) {
        DistanceValue d = oracle.distance(out.points[i], out.points[i + 1]);
        out.step_distances.push_back(d);
        double dev = std::abs(d.value * static_cast<double>(m) / total.value - 1.0);
        if (dev >= worst) {
            worst = dev;
            worst_se = combine_se(d.std_error * static_cast<double>(m) / total.value,
                                  total.std_error * d.value * static_cast<double>(m) /
                                      (total.value * total.value));
        }
    }
    out.deficiency = worst;
    out.std_error = worst_se;
    return out;
}

} // namespace

double SagProfile::rate(double alpha) const {
    if (alpha <= 1.0) throw DomainError("SagProfile rate needs alpha > 1");
    return c * std::pow(alpha, u) * std::pow(std::log(alpha), v);
}

SagStarResult sagstar_deficiency(const Point& x, const Point& y, double lambda,
                                 const MetricOracle& oracle, std::int64_t search_radius) {
    if (search_radius < 0) throw EmptySearchRegion("negative search radius");
    if (!(0.0 <= lambda && lambda <= 1.0)) throw DomainError("lambda outside [0,1]");
    DistanceValue dxy = oracle.distance(x, y);
    if (!(dxy.value > 0)) throw DomainError("sagstar_deficiency requires delta(x,y) > 0");
    Point center = rounded_interpolation(x, y, lambda);
    std::vector<Point> region = oracle.lattice().word_ball(center, search_radius);
    SagStarResult best;
    bool first = true;
    for (const auto& z : region) {
        DistanceValue dxz = oracle.distance(x, z);
        DistanceValue dzy = oracle.distance(z, y);
        double score = std::max(std::abs(dxz.value - lambda * dxy.value),
                                std::abs(dzy.value - (1.0 - lambda) * dxy.value));
        if (first || score < best.score || (score == best.score && lex_less(z, best.z))) {
            best.z = z;
            best.score = score;
            best.std_error =
                combine_se(dxz.std_error, dzy.std_error, dxy.std_error) / dxy.value;
            first = false;
        }
    }
    if (first) throw EmptySearchRegion("no candidate points in search region");
    best.eps = best.score / dxy.value;
    return best;
}

SubdivisionResult dyadic_subdivision(const Point& x, const Point& y, unsigned k,
                                     const MetricOracle& oracle, std::int64_t search_radius,
                                     double alpha0) {
    DistanceValue dxy = oracle.distance(x, y);
    double pieces = std::pow(2.0, static_cast<double>(k));
    if (dxy.value / pieces < alpha0) {
        throw ThresholdViolation("delta(x,y)/2^k below alpha0");
    }
    std::vector<Point> points{x, y};
    std::vector<SubdivisionLevel> levels;
    for (unsigned level = 0; level < k; ++level) {
        std::vector<Point> next;
        next.reserve(points.size() * 2 - 1);
        double r_max = 0, r_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            next.push_back(points[i]);
            auto mid = sagstar_deficiency(points[i], points[i + 1], 0.5, oracle, search_radius);
            next.push_back(mid.z);
        }
        next.push_back(points.back());
        points = std::move(next);
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            double d = oracle.distance(points[i], points[i + 1]).value;
            r_max = std::max(r_max, d);
            r_min = std::min(r_min, d);
        }
        levels.push_back(SubdivisionLevel{r_max, r_min});
    }
    SubdivisionResult out = finalize_sequence(std::move(points), oracle);
    out.levels = std::move(levels);
    return out;
}

SubdivisionResult sag_sequence(const Point& x, const Point& y, std::size_t m,
                               const MetricOracle& oracle, std::int64_t search_radius,
                               double alpha0) {
    if (m < 1) throw DomainError("sag_sequence needs m >= 1");
    DistanceValue dxy = oracle.distance(x, y);
    if (m == 1) return finalize_sequence({x, y}, oracle);
    if (dxy.value / static_cast<double>(m) < alpha0) {
        throw ThresholdViolation("delta(x,y)/m below alpha0");
    }
    if ((m & (m - 1)) == 0) { // m = 2^k: the constructions coincide
        unsigned k = 0;
        while ((std::size_t{1} << k) < m) ++k;
        return dyadic_subdivision(x, y, k, oracle, search_radius, alpha0);
    }
    // grid spacing 2^-k with 4m <= 2^k <= 8m, coarsened if the dyadic
    // threshold cannot be met at that depth
    unsigned k = 0;
    while ((std::size_t{1} << k) < 4 * m) ++k;
    SubdivisionResult grid;
    while (true) {
        try {
            grid = dyadic_subdivision(x, y, k, oracle, search_radius, alpha0 / 8.0);
            break;
        } catch (const ThresholdViolation&) {
            if (k <= 1) throw;
            --k;
        }
    }
    const std::size_t cells = std::size_t{1} << k;
    std::vector<Point> points{x};
    for (std::size_t i = 1; i < m; ++i) {
        double lambda_i = static_cast<double>(i) / static_cast<double>(m);
        double pos = lambda_i * static_cast<double>(cells);
        // interval [a, b] of grid indices whose middle third contains pos
        std::int64_t a = static_cast<std::int64_t>(std::floor(pos)) - 1;
        std::int64_t b = a + 3;
        if (a < 0) {
            a = 0;
            b = 3;
        }
        if (b > static_cast<std::int64_t>(cells)) {
            b = static_cast<std::int64_t>(cells);
            a = b - 3;
        }
        double t = (pos - static_cast<double>(a)) / static_cast<double>(b - a);
        auto res = sagstar_deficiency(grid.points[static_cast<std::size_t>(a)],
                                      grid.points[static_cast<std::size_t>(b)], t, oracle,
                                      search_radius);
        points.push_back(res.z);
    }
    points.push_back(y);
    return finalize_sequence(std::move(points), oracle);
}

MonotoneBallReport monotone_ball_check(const Point& o, double r, const SagProfile& profile,
                                       const MetricOracle& oracle) {
    MonotoneBallReport report;
    if (r < profile.alpha0) {
        report.status = MonotoneBallReport::Status::Skipped;
        return report;
    }
    double n_of_r = profile.rate(r);
    double enlarged = (1.0 + 1.0 / n_of_r) * r;
    auto big = oracle.ball(o, enlarged);
    std::unordered_set<Point, PointHash> small_set;
    for (const auto& [p, d] : big) {
        if (d.value <= r) small_set.insert(p);
    }
    report.allowance = 6.0 * r * oracle.lipschitz_upper() / n_of_r;
    std::int64_t cap = static_cast<std::int64_t>(std::ceil(report.allowance)) + 2;
    double worst = 0;
    for (const auto& [p, d] : big) {
        if (small_set.count(p)) continue;
        worst = std::max(
            worst, static_cast<double>(word_distance_to_set(oracle.lattice(), p, small_set, cap)));
    }
    report.worst_defect = worst;
    report.status = worst <= report.allowance ? MonotoneBallReport::Status::Holds
                                              : MonotoneBallReport::Status::Fails;
    return report;
}

SubdivisionResult segment_rounding_sequence(const Point& x, const Point& y, std::size_t m,
                                            const NormOracle& oracle) {
    if (m < 1) throw DomainError("segment_rounding_sequence needs m >= 1");
    if (m == 1) return finalize_sequence({x, y}, oracle);
    double total = oracle.distance(x, y).value;
    double alpha = total / static_cast<double>(m);
    double covering = oracle.covering_radius();
    if (alpha < 4.0 * covering) {
        throw ThresholdViolation("segment step below 4x covering radius");
    }
    std::vector<Point> points{x};
    for (std::size_t i = 1; i < m; ++i) {
        points.push_back(
            rounded_interpolation(x, y, static_cast<double>(i) / static_cast<double>(m)));
    }
    points.push_back(y);
    return finalize_sequence(std::move(points), oracle);
}

EmpiricalSagStarResult empirical_sagstar_via_geodesics(
    const CayleyLattice& lattice, const Point& x, const Point& y, double lambda,
    const WeightLaw& law, std::uint64_t base_seed, std::size_t geodesic_replicas,
    std::size_t mean_replicas, const SearchOptions& opts) {
    if (geodesic_replicas < 1) throw ConfigError("need at least one geodesic replica");
    std::vector<Point> waypoints(geodesic_replicas);
    parallel_for(geodesic_replicas, [&](std::size_t i) {
        OmegaField field(law, replica_seed(base_seed, i), lattice);
        auto [dist, path] = omega_distance(field, x, y, opts);
        waypoints[i] = geodesic_waypoint(path, lambda);
    });
    std::map<Point, std::size_t> counts;
    for (const auto& z : waypoints) ++counts[z];
    std::vector<std::pair<Point, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    const std::size_t n_candidates = std::min<std::size_t>(4, ranked.size());

    auto dxy = mean_distance(lattice, x, y, law, base_seed, mean_replicas, false, opts);
    EmpiricalSagStarResult best;
    best.geodesic_replicas = geodesic_replicas;
    best.candidates_examined = n_candidates;
    best.dxy = {dxy.mean, dxy.std_error};
    bool first = true;
    for (std::size_t c = 0; c < n_candidates; ++c) {
        const Point& z = ranked[c].first;
        auto dxz = mean_distance(lattice, x, z, law, base_seed, mean_replicas, false, opts);
        auto dzy = mean_distance(lattice, z, y, law, base_seed, mean_replicas, false, opts);
        double score = std::max(std::abs(dxz.mean - lambda * dxy.mean),
                                std::abs(dzy.mean - (1.0 - lambda) * dxy.mean));
        double eps = score / dxy.mean;
        if (first || eps < best.eps) {
            best.z = z;
            best.eps = eps;
            best.std_error =
                combine_se(dxz.std_error, dzy.std_error, dxy.std_error) / dxy.mean;
            best.dxz = {dxz.mean, dxz.std_error};
            best.dzy = {dzy.mean, dzy.std_error};
            first = false;
        }
    }
    return best;
}

} // namespace fpp
