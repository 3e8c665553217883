#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fpp/average_metric.hpp"
#include "fpp/metric_engine.hpp"

namespace fpp {

/// A distance value with its propagated standard error (zero for exact
/// oracles, estimator noise for the Monte Carlo average distance).
struct DistanceValue {
    double value = 0;
    double std_error = 0;
};

/// A queryable invariant metric delta on Z^d: word metric, fixed-omega
/// metric, Monte Carlo average distance, or an exact norm restricted to Z^d.
class MetricOracle {
public:
    virtual ~MetricOracle() = default;

    virtual DistanceValue distance(const Point& x, const Point& y) const = 0;

    /// {x : delta(center, x) <= radius} with distances.
    virtual std::vector<std::pair<Point, DistanceValue>> ball(const Point& center,
                                                              double radius) const = 0;

    /// G such that delta(x,y) <= G * d_word(x,y).
    virtual double lipschitz_upper() const = 0;

    virtual const CayleyLattice& lattice() const = 0;

    virtual bool exact() const { return true; }

    virtual std::string describe() const = 0;
};

class WordMetricOracle final : public MetricOracle {
public:
    explicit WordMetricOracle(const CayleyLattice& lattice) : lattice_(&lattice) {}

    DistanceValue distance(const Point& x, const Point& y) const override;
    std::vector<std::pair<Point, DistanceValue>> ball(const Point& center,
                                                      double radius) const override;
    double lipschitz_upper() const override { return 1.0; }
    const CayleyLattice& lattice() const override { return *lattice_; }
    std::string describe() const override { return "word"; }

private:
    const CayleyLattice* lattice_;
};

class FixedOmegaOracle final : public MetricOracle {
public:
    FixedOmegaOracle(const OmegaField& field, SearchOptions opts = {})
        : field_(&field), opts_(opts) {}

    DistanceValue distance(const Point& x, const Point& y) const override;
    std::vector<std::pair<Point, DistanceValue>> ball(const Point& center,
                                                      double radius) const override;
    double lipschitz_upper() const override;
    const CayleyLattice& lattice() const override { return field_->lattice(); }
    std::string describe() const override { return "omega"; }

private:
    const OmegaField* field_;
    SearchOptions opts_;
};

/// Exact p-norm (p in {1, 2, inf}) scaled by `scale`, restricted to Z^d.
class NormOracle final : public MetricOracle {
public:
    enum class Norm { L1, L2, Linf };

    NormOracle(const CayleyLattice& lattice, Norm norm, double scale = 1.0)
        : lattice_(&lattice), norm_(norm), scale_(scale) {}

    DistanceValue distance(const Point& x, const Point& y) const override;
    std::vector<std::pair<Point, DistanceValue>> ball(const Point& center,
                                                      double radius) const override;
    double lipschitz_upper() const override;
    const CayleyLattice& lattice() const override { return *lattice_; }
    std::string describe() const override { return "norm"; }

    double norm_of(const std::vector<double>& v) const;
    /// Covering radius of Z^d in this norm.
    double covering_radius() const;

private:
    const CayleyLattice* lattice_;
    Norm norm_;
    double scale_;
};

/// Monte Carlo d-bar estimator with a fixed replica budget per query.
/// Queries are cached (symmetric key) behind a single lock so concurrent
/// geometric scans don't redo replica work.
class MeanDistanceOracle final : public MetricOracle {
public:
    MeanDistanceOracle(const CayleyLattice& lattice, WeightLaw law, std::uint64_t base_seed,
                       std::size_t replicas, SearchOptions opts = {})
        : lattice_(&lattice), law_(std::move(law)), base_seed_(base_seed), replicas_(replicas),
          opts_(opts) {}

    DistanceValue distance(const Point& x, const Point& y) const override;
    std::vector<std::pair<Point, DistanceValue>> ball(const Point& center,
                                                      double radius) const override;
    double lipschitz_upper() const override { return law_.mean(); }
    const CayleyLattice& lattice() const override { return *lattice_; }
    bool exact() const override { return false; }
    std::string describe() const override { return "dbar"; }

    const WeightLaw& law() const { return law_; }
    std::uint64_t base_seed() const { return base_seed_; }
    std::size_t replicas() const { return replicas_; }

private:
    const CayleyLattice* lattice_;
    WeightLaw law_;
    std::uint64_t base_seed_;
    std::size_t replicas_;
    SearchOptions opts_;

    struct PairHash {
        std::size_t operator()(const std::pair<Point, Point>& p) const noexcept {
            return PointHash{}(p.first) * 0x9e3779b97f4a7c15ull + PointHash{}(p.second);
        }
    };
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::pair<Point, Point>, DistanceValue, PairHash> cache_;
};

} // namespace fpp
