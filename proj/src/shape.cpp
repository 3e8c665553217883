#include "fpp/shape.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/errors.hpp"

namespace fpp {

namespace {

std::vector<Point> ball_points(const MetricOracle& oracle, const Point& o, double r) {
    auto ball = oracle.ball(o, r);
    std::vector<Point> pts;
    pts.reserve(ball.size());
    for (const auto& [p, _] : ball) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    return pts;
}

} // namespace

DoublingProfile DoublingProfile::sqrt_over_log() {
    DoublingProfile out;
    const double knee = std::exp(2.0);
    out.phi = [knee](double alpha) {
        if (alpha < knee) return std::max(1.0, std::sqrt(knee / 2.0) * alpha / knee);
        return std::sqrt(alpha / std::log(alpha));
    };
    out.eta = [](double lambda) { return std::sqrt(2.0 * std::max(lambda, 1.0)); };
    return out;
}

HullIdentityReport hull_identity_check(const PointCloud& k, std::size_t n,
                                       const std::vector<std::vector<double>>& dirs,
                                       double support_tol, double raster) {
    if (!k.is_symmetric()) throw ConfigError("hull_identity_check needs a symmetric K");
    const std::size_t d = k.dim;
    if (n < d) throw ConfigError("hull_identity_check needs n >= dim");
    HullIdentityReport report;
    report.n = n;
    Polytope k_hat = convex_hull(k);
    PointCloud k_power = minkowski_power(k, n);
    PointCloud k_nmd = (n == d) ? PointCloud::from_points(d, {Point(d, 0)})
                                : minkowski_power(k, n - d);
    // support of K-hat^n is n h_K; support of K^{n-d} K-hat^d adds the
    // enumerated sumset support to d h_K
    double gap = 0;
    for (const auto& dir : dirs) {
        double lhs = static_cast<double>(n) * k_hat.support(dir);
        double rhs = k_nmd.support(dir) + static_cast<double>(d) * k_hat.support(dir);
        gap = std::max(gap, std::abs(lhs - rhs));
    }
    report.support_gap = gap;
    report.identity_holds = gap <= support_tol;

    Polytope k_hat_n = k_hat;
    for (auto& v : k_hat_n.vertices) {
        for (auto& c : v) c *= static_cast<double>(n);
    }
    report.dh_power = hausdorff_cloud_polytope_raster(k_power, k_hat_n, AuxNorm::Linf, raster);
    report.dh_base = hausdorff_cloud_polytope_raster(k, k_hat, AuxNorm::Linf, raster);
    report.inequality_holds =
        report.dh_power <= static_cast<double>(d) * report.dh_base + 1e-9;
    return report;
}

BallPowerReport ball_power_sandwich(const MetricOracle& oracle, double r, std::size_t m,
                                    const SagProfile& profile) {
    if (m < 1) throw ConfigError("ball_power_sandwich needs M >= 1");
    BallPowerReport report;
    report.r = r;
    report.m = m;
    const std::size_t dim = oracle.lattice().dim();
    Point origin(dim, 0);
    auto inner_map = oracle.ball(origin, r / static_cast<double>(m));
    auto outer_map = oracle.ball(origin, r);
    std::vector<Point> inner_pts, outer_pts;
    for (const auto& [p, _] : inner_map) inner_pts.push_back(p);
    for (const auto& [p, _] : outer_map) outer_pts.push_back(p);
    PointCloud inner = PointCloud::from_points(dim, inner_pts);
    PointCloud outer = PointCloud::from_points(dim, outer_pts);
    PointCloud power = minkowski_power(inner, m);

    report.left_inclusion = std::all_of(power.points.begin(), power.points.end(),
                                        [&](const Point& p) { return outer.contains(p); });

    double alpha = r / static_cast<double>(m);
    report.epsilon = alpha > profile.alpha0 ? 1.0 / profile.rate(alpha) : 1.0;
    auto enlarged_map = oracle.ball(origin, (1.0 + report.epsilon) * alpha);
    std::vector<Point> enlarged_pts;
    for (const auto& [p, _] : enlarged_map) enlarged_pts.push_back(p);
    PointCloud enlarged_power =
        minkowski_power(PointCloud::from_points(dim, enlarged_pts), m);
    report.right_inclusion =
        std::all_of(outer.points.begin(), outer.points.end(),
                    [&](const Point& p) { return enlarged_power.contains(p); });
    report.defect = hausdorff_scaled_clouds(power.points, r, outer.points, r, AuxNorm::Linf);
    return report;
}

double cauchy_defect(const MetricOracle& oracle, double r1, double r2, AuxNorm norm) {
    const std::size_t dim = oracle.lattice().dim();
    Point origin(dim, 0);
    auto a = ball_points(oracle, origin, r1);
    auto b = ball_points(oracle, origin, r2);
    return hausdorff_scaled_clouds(a, r1, b, r2, norm);
}

double LimitNorm::norm_of(const std::vector<double>& x) const {
    double best = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (support_values[i] <= 1e-12) continue;
        double dot = 0;
        for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * dirs[i][j];
        best = std::max(best, dot / support_values[i]);
    }
    return best;
}

double LimitNorm::norm_of(const Point& x) const {
    return norm_of(std::vector<double>(x.begin(), x.end()));
}

LimitNorm limit_norm_estimate(const MetricOracle& oracle, double r_max,
                              const std::vector<std::vector<double>>& dirs) {
    const std::size_t dim = oracle.lattice().dim();
    Point origin(dim, 0);
    auto pts = ball_points(oracle, origin, r_max);
    PointCloud cloud = PointCloud::from_points(dim, std::move(pts));
    LimitNorm norm;
    norm.dirs = dirs;
    norm.support_values.resize(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        std::vector<double> neg(dirs[i].size());
        for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -dirs[i][j];
        double h = cloud.support(dirs[i]) / r_max;
        double h_neg = cloud.support(neg) / r_max;
        norm.support_values[i] = 0.5 * (h + h_neg); // symmetrized
    }
    return norm;
}

ShapeSeries shape_error_series(const MetricOracle& oracle, const std::vector<double>& radii,
                               const LimitNorm& norm_est) {
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (radii[i] <= radii[i - 1]) throw ConfigError("radii must be strictly ascending");
    }
    const std::size_t dim = oracle.lattice().dim();
    Point origin(dim, 0);
    ShapeSeries series;
    for (double n : radii) {
        ShapeEntry entry;
        entry.n = n;
        auto enlarged = oracle.ball(origin, 1.3 * n + 4.0);
        double delta_out = 0, delta_in = 0;
        double boundary_se = 0;
        for (const auto& [p, d] : enlarged) {
            double nrm = norm_est.norm_of(p);
            if (d.value <= n) {
                delta_out = std::max(delta_out, nrm - n);
            } else if (nrm <= n) {
                delta_in = std::max(delta_in, n - nrm);
            }
            if (std::abs(d.value - n) <= 2.0) boundary_se = std::max(boundary_se, d.std_error);
        }
        entry.delta_out = delta_out;
        entry.delta_in = delta_in;
        entry.std_error = boundary_se;
        series.entries.push_back(entry);
    }
    // least squares through the origin of delta against sqrt(n log n)
    double num = 0, den = 0;
    for (const auto& e : series.entries) {
        double x = std::sqrt(e.n * std::log(std::max(e.n, 2.0)));
        double y = std::max(e.delta_in, e.delta_out);
        num += x * y;
        den += x * x;
    }
    series.fit_c = den > 0 ? num / den : 0;
    double resid = 0;
    for (const auto& e : series.entries) {
        double x = std::sqrt(e.n * std::log(std::max(e.n, 2.0)));
        double y = std::max(e.delta_in, e.delta_out);
        resid += (y - series.fit_c * x) * (y - series.fit_c * x);
    }
    series.fit_residual = std::sqrt(resid / std::max<std::size_t>(1, series.entries.size()));
    // exploratory exponent: slope of log(delta) vs log(n), reported only
    std::vector<double> lx, ly;
    for (const auto& e : series.entries) {
        double y = std::max(e.delta_in, e.delta_out);
        if (y > 0) {
            lx.push_back(std::log(e.n));
            ly.push_back(std::log(y));
        }
    }
    if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        series.exponent = sxx > 0 ? sxy / sxx : 0;
    }
    return series;
}

InductionTrace induction_trace(const MetricOracle& oracle, const SagProfile& sag,
                               const DoublingProfile& profile, unsigned max_level) {
    InductionTrace trace;
    const double d = static_cast<double>(oracle.lattice().dim());
    unsigned scale = 2;
    while (d * profile.eta(static_cast<double>(scale)) / static_cast<double>(scale) > 0.25) {
        ++scale;
        if (scale > 4096) throw DomainError("no admissible scale for the doubling profile");
    }
    trace.scale = scale;
    double g = oracle.lipschitz_upper();
    trace.estimated_lipschitz = !oracle.exact();
    trace.c_prime = 6.0 * g / sag.c;
    double c_double_prime = static_cast<double>(scale) * trace.c_prime;
    // C0: sup over base radii r <= L of the defect against the top base
    // scale, sampled geometrically (the defect is monotone enough in r that
    // the sample dominates the sup up to the induction slack)
    double c0 = 0;
    for (unsigned r = 1; r <= scale; r *= 2) {
        c0 = std::max(c0, cauchy_defect(oracle, static_cast<double>(r),
                                        static_cast<double>(scale)));
    }
    c0 = std::max(c0, profile.phi(1.0));
    trace.c0 = c0;
    trace.c_chain = std::max(c0, c_double_prime / 4.0);
    for (unsigned k = 0; k < max_level; ++k) {
        InductionTraceRow row;
        row.k = k;
        row.r = std::pow(static_cast<double>(scale), static_cast<double>(k));
        row.measured = cauchy_defect(oracle, row.r, row.r * static_cast<double>(scale));
        row.bound = 2.0 * trace.c_chain / profile.phi(row.r);
        row.ok = row.measured <= row.bound;
        trace.rows.push_back(row);
        if (!row.ok) trace.holds = false;
    }
    return trace;
}

} // namespace fpp
