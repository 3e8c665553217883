#include "fpp/average_metric.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/errors.hpp"
#include "fpp/parallel.hpp"

namespace fpp {

namespace {

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double ordered_mean(const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v; // fixed index order
    return s / static_cast<double>(values.size());
}

} // namespace

MeanDistanceEstimate mean_distance(const CayleyLattice& lattice, const Point& x, const Point& y,
                                   const WeightLaw& law, std::uint64_t base_seed, std::size_t R,
                                   bool keep_values, const SearchOptions& opts) {
    if (R < 1) throw ConfigError("mean_distance needs at least one replica");
    std::vector<double> values(R);
    parallel_for(R, [&](std::size_t i) {
        OmegaField field(law, replica_seed(base_seed, i), lattice);
        values[i] = omega_distance(field, x, y, opts).first;
    });
    MeanDistanceEstimate est;
    est.x = x;
    est.y = y;
    est.replicas = R;
    est.mean = ordered_mean(values);
    est.std_error = sample_std(values, est.mean) / std::sqrt(static_cast<double>(R));
    if (keep_values) est.values = std::move(values);
    return est;
}

double talagrand_bound(double u, double r, double c1, double c2) {
    if (u < 0) throw DomainError("talagrand_bound requires u >= 0");
    return c1 * std::exp(-c2 * std::min(u * u / r, u));
}

FluctuationTable fluctuation_table(const CayleyLattice& lattice,
                                   const std::vector<std::pair<Point, Point>>& pairs,
                                   const WeightLaw& law, std::uint64_t base_seed, std::size_t R,
                                   std::vector<double> thresholds, const SearchOptions& opts) {
    if (R < 2) throw ConfigError("fluctuation_table needs R >= 2");
    std::sort(thresholds.begin(), thresholds.end());
    // values[i][p] = d_omega under replica i for pair p
    std::vector<std::vector<double>> values(R, std::vector<double>(pairs.size()));
    parallel_for(R, [&](std::size_t i) {
        OmegaField field(law, replica_seed(base_seed, i), lattice);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            values[i][p] = omega_distance(field, pairs[p].first, pairs[p].second, opts).first;
        }
    });
    FluctuationTable table;
    table.thresholds = thresholds;
    table.replicas = R;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        FluctuationRow row;
        row.x = pairs[p].first;
        row.y = pairs[p].second;
        row.word_dist = lattice.graph_distance(row.x, row.y);
        std::vector<double> vals(R);
        for (std::size_t i = 0; i < R; ++i) vals[i] = values[i][p];
        row.mean = ordered_mean(vals);
        row.sample_std = sample_std(vals, row.mean);
        row.exceedance.resize(thresholds.size());
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            std::size_t count = 0;
            for (double v : vals) {
                if (std::abs(v - row.mean) >= thresholds[j]) ++count;
            }
            row.exceedance[j] = static_cast<double>(count) / static_cast<double>(R);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::pair<double, double> fit_talagrand_constants(const FluctuationTable& table) {
    // log f = log C1 - C2 * m, with m = min(u^2/r, u); ordinary least squares.
    std::vector<double> ms, logs;
    for (const auto& row : table.rows) {
        double r = static_cast<double>(row.word_dist);
        for (std::size_t j = 0; j < table.thresholds.size(); ++j) {
            double u = table.thresholds[j];
            double f = row.exceedance[j];
            if (f <= 0 || u <= 0) continue;
            ms.push_back(std::min(u * u / r, u));
            logs.push_back(std::log(f));
        }
    }
    if (ms.size() < 2) return {1.0, 1.0};
    double mx = ordered_mean(ms), my = ordered_mean(logs);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        sxx += (ms[i] - mx) * (ms[i] - mx);
        sxy += (ms[i] - mx) * (logs[i] - my);
    }
    double slope = sxx > 0 ? sxy / sxx : 0.0;
    double c2 = std::max(1e-12, -slope);
    double c1 = std::exp(my + c2 * mx);
    return {c1, c2};
}

FluctuationSupEstimate fluctuation_sup(const CayleyLattice& lattice, const Point& o,
                                       std::int64_t r, const WeightLaw& law,
                                       std::uint64_t base_seed, std::size_t requested_pairs,
                                       std::size_t replicas, const SearchOptions& opts) {
    if (replicas < 2) throw ConfigError("fluctuation_sup needs at least two replicas");
    std::vector<Point> ball = lattice.word_ball(o, r);
    const std::size_t nball = ball.size();
    std::size_t n_src = std::max<std::size_t>(1, (requested_pairs + nball - 1) / nball);
    n_src = std::min(n_src, nball);
    // seeded uniform source choice, without replacement
    std::vector<Point> sources;
    {
        std::vector<std::size_t> idx(nball);
        for (std::size_t i = 0; i < nball; ++i) idx[i] = i;
        std::uint64_t h = mix64(base_seed ^ 0x5b5e5cull);
        for (std::size_t i = 0; i < n_src; ++i) {
            h = mix64(h);
            std::size_t j = i + static_cast<std::size_t>(h % (nball - i));
            std::swap(idx[i], idx[j]);
            sources.push_back(ball[idx[i]]);
        }
    }

    auto replica_maps = [&](std::size_t i) {
        OmegaField field(law, replica_seed(base_seed, i), lattice);
        std::vector<std::vector<double>> maps(n_src, std::vector<double>(nball));
        for (std::size_t s = 0; s < n_src; ++s) {
            auto dmap = omega_distances_to_set(field, sources[s], ball, opts);
            for (std::size_t t = 0; t < nball; ++t) maps[s][t] = dmap.at(ball[t]);
        }
        return maps;
    };

    // Pass 1: accumulate pairwise means, reduced in replica-index order in
    // fixed-size batches so results are thread-count independent.
    std::vector<std::vector<double>> sums(n_src, std::vector<double>(nball, 0.0));
    const std::size_t batch = 16;
    for (std::size_t lo = 0; lo < replicas; lo += batch) {
        std::size_t hi = std::min(replicas, lo + batch);
        std::vector<std::vector<std::vector<double>>> chunk(hi - lo);
        parallel_for(hi - lo, [&](std::size_t k) { chunk[k] = replica_maps(lo + k); });
        for (std::size_t k = 0; k < hi - lo; ++k) {
            for (std::size_t s = 0; s < n_src; ++s) {
                for (std::size_t t = 0; t < nball; ++t) sums[s][t] += chunk[k][s][t];
            }
        }
    }
    for (auto& rowv : sums) {
        for (double& v : rowv) v /= static_cast<double>(replicas);
    }

    // Pass 2: per-replica sup of |d_omega - mean| over the sampled pairs.
    std::vector<double> sup(replicas, 0.0);
    parallel_for(replicas, [&](std::size_t i) {
        auto maps = replica_maps(i);
        double m = 0.0;
        for (std::size_t s = 0; s < n_src; ++s) {
            for (std::size_t t = 0; t < nball; ++t) {
                m = std::max(m, std::abs(maps[s][t] - sums[s][t]));
            }
        }
        sup[i] = m;
    });

    FluctuationSupEstimate est;
    est.origin = o;
    est.radius = r;
    est.sources = n_src;
    est.pair_count = n_src * nball;
    est.replicas = replicas;
    est.mean_sup = ordered_mean(sup);
    est.std_error = sample_std(sup, est.mean_sup) / std::sqrt(static_cast<double>(replicas));
    est.per_replica_sup = std::move(sup);
    return est;
}

} // namespace fpp
