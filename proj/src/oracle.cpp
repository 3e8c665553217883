#include "fpp/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/errors.hpp"
#include "fpp/parallel.hpp"

namespace fpp {

DistanceValue WordMetricOracle::distance(const Point& x, const Point& y) const {
    return {static_cast<double>(lattice_->graph_distance(x, y)), 0.0};
}

std::vector<std::pair<Point, DistanceValue>> WordMetricOracle::ball(const Point& center,
                                                                    double radius) const {
    auto map = lattice_->word_ball_map(center, static_cast<std::int64_t>(std::floor(radius)));
    std::vector<std::pair<Point, DistanceValue>> out;
    out.reserve(map.size());
    for (const auto& [p, d] : map) out.push_back({p, {static_cast<double>(d), 0.0}});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

DistanceValue FixedOmegaOracle::distance(const Point& x, const Point& y) const {
    return {omega_distance(*field_, x, y, opts_).first, 0.0};
}

std::vector<std::pair<Point, DistanceValue>> FixedOmegaOracle::ball(const Point& center,
                                                                    double radius) const {
    auto b = omega_ball(*field_, center, radius, opts_);
    std::vector<std::pair<Point, DistanceValue>> out;
    out.reserve(b.points.size());
    for (const auto& p : b.points) out.push_back({p, {b.dist.at(p), 0.0}});
    return out;
}

double FixedOmegaOracle::lipschitz_upper() const {
    double m = field_->law().max_weight();
    return std::isfinite(m) ? m : field_->law().mean() * 8.0;
}

double NormOracle::norm_of(const std::vector<double>& v) const {
    double out = 0;
    switch (norm_) {
    case Norm::L1:
        for (double c : v) out += std::abs(c);
        break;
    case Norm::L2: {
        double ss = 0;
        for (double c : v) ss += c * c;
        out = std::sqrt(ss);
        break;
    }
    case Norm::Linf:
        for (double c : v) out = std::max(out, std::abs(c));
        break;
    }
    return scale_ * out;
}

double NormOracle::covering_radius() const {
    double d = static_cast<double>(lattice_->dim());
    switch (norm_) {
    case Norm::L1:
        return scale_ * d / 2.0;
    case Norm::L2:
        return scale_ * std::sqrt(d) / 2.0;
    case Norm::Linf:
        return scale_ * 0.5;
    }
    return 0;
}

DistanceValue NormOracle::distance(const Point& x, const Point& y) const {
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        diff[i] = static_cast<double>(y[i]) - static_cast<double>(x[i]);
    return {norm_of(diff), 0.0};
}

std::vector<std::pair<Point, DistanceValue>> NormOracle::ball(const Point& center,
                                                              double radius) const {
    // ||x||_p >= scale * ||x||_inf for p in {1,2,inf}, so an Linf box suffices.
    std::int64_t halfwidth = static_cast<std::int64_t>(std::floor(radius / scale_)) + 1;
    std::vector<std::pair<Point, DistanceValue>> out;
    Point p(center.size());
    std::vector<std::int64_t> offset(center.size(), -halfwidth);
    while (true) {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = center[i] + offset[i];
        DistanceValue d = distance(center, p);
        if (d.value <= radius) out.push_back({p, d});
        std::size_t i = 0;
        for (; i < offset.size(); ++i) {
            if (++offset[i] <= halfwidth) break;
            offset[i] = -halfwidth;
        }
        if (i == offset.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

double NormOracle::lipschitz_upper() const {
    double g = 0;
    for (const auto& gen : lattice_->generators()) {
        std::vector<double> v(gen.begin(), gen.end());
        g = std::max(g, norm_of(v));
    }
    return g;
}

DistanceValue MeanDistanceOracle::distance(const Point& x, const Point& y) const {
    auto key = x <= y ? std::make_pair(x, y) : std::make_pair(y, x);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto est = mean_distance(*lattice_, key.first, key.second, law_, base_seed_, replicas_,
                             /*keep_values=*/false, opts_);
    DistanceValue out{est.mean, est.std_error};
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(key, out);
    return out;
}

std::vector<std::pair<Point, DistanceValue>> MeanDistanceOracle::ball(const Point& center,
                                                                      double radius) const {
    // Region that surely contains the d-bar ball: d-bar >= a_min * d_word.
    double a_min = std::max(law_.min_weight(), 0.25);
    std::int64_t region_radius = static_cast<std::int64_t>(std::ceil(radius / a_min)) + 1;
    std::vector<Point> region = lattice_->word_ball(center, region_radius);
    const std::size_t n = region.size();
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    const std::size_t batch = 16;
    for (std::size_t lo = 0; lo < replicas_; lo += batch) {
        std::size_t hi = std::min(replicas_, lo + batch);
        std::vector<std::vector<double>> chunk(hi - lo);
        parallel_for(hi - lo, [&](std::size_t k) {
            OmegaField field(law_, replica_seed(base_seed_, lo + k), *lattice_);
            auto dmap = omega_distances_to_set(field, center, region, opts_);
            std::vector<double> vals(n);
            for (std::size_t t = 0; t < n; ++t) vals[t] = dmap.at(region[t]);
            chunk[k] = std::move(vals);
        });
        for (const auto& vals : chunk) {
            for (std::size_t t = 0; t < n; ++t) {
                sum[t] += vals[t];
                sumsq[t] += vals[t] * vals[t];
            }
        }
    }
    std::vector<std::pair<Point, DistanceValue>> out;
    double R = static_cast<double>(replicas_);
    for (std::size_t t = 0; t < n; ++t) {
        double mean = sum[t] / R;
        if (mean > radius) continue;
        double var = std::max(0.0, (sumsq[t] - R * mean * mean) / std::max(1.0, R - 1));
        out.push_back({region[t], {mean, std::sqrt(var / R)}});
    }
    return out;
}

} // namespace fpp
