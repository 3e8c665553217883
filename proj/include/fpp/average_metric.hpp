#pragma once

#include <cstdint>
#include <vector>

#include "fpp/metric_engine.hpp"
#include "fpp/weights.hpp"

namespace fpp {

/// Monte Carlo estimate of the average distance d-bar(x,y) = E d_omega(x,y).
/// Replica i uses the derived seed replica_seed(base_seed, i), so replicas can
/// run in any order with identical results.
struct MeanDistanceEstimate {
    Point x, y;
    std::size_t replicas = 0;
    double mean = 0;
    double std_error = 0;
    std::vector<double> values; // per-replica d_omega, retained when requested
};

MeanDistanceEstimate mean_distance(const CayleyLattice& lattice, const Point& x, const Point& y,
                                   const WeightLaw& law, std::uint64_t base_seed, std::size_t R,
                                   bool keep_values = false, const SearchOptions& opts = {});

/// C1 * exp(-C2 * min(u^2 / r, u)): the sub-Gaussian/exponential tail envelope.
double talagrand_bound(double u, double r, double c1, double c2);

struct FluctuationRow {
    Point x, y;
    std::int64_t word_dist = 0;
    double mean = 0;
    double sample_std = 0;
    std::vector<double> exceedance; // P-hat(|d_omega - mean| >= u_j), per threshold
};

struct FluctuationTable {
    std::vector<double> thresholds;
    std::size_t replicas = 0;
    std::vector<FluctuationRow> rows;
};

/// Empirical exceedance frequencies of |d_omega - d-bar-hat| over R replicas.
/// The centering d-bar-hat is the same-replica-set mean, so frequencies carry
/// an O(1/sqrt(R)) centering bias that is documented rather than corrected.
FluctuationTable fluctuation_table(const CayleyLattice& lattice,
                                   const std::vector<std::pair<Point, Point>>& pairs,
                                   const WeightLaw& law, std::uint64_t base_seed, std::size_t R,
                                   std::vector<double> thresholds,
                                   const SearchOptions& opts = {});

/// Least-squares fit of (C1, C2) on log-frequencies against min(u^2/r, u).
/// The envelope theorem only asserts existence of such constants; these are
/// reported fits, never ground truth.
std::pair<double, double> fit_talagrand_constants(const FluctuationTable& table);

struct FluctuationSupEstimate {
    Point origin;
    std::int64_t radius = 0;
    std::size_t sources = 0;
    std::size_t pair_count = 0;
    std::size_t replicas = 0;
    double mean_sup = 0;  // E sup over sampled pairs of |d_omega - d-bar-hat|
    double std_error = 0; // over replicas
    std::vector<double> per_replica_sup;
};

/// Estimates sup over pairs in B(o,r) of |d_omega - d-bar-hat| for single
/// replicas, averaged over replicas. Pairs are grouped source x ball so one
/// truncated single-source run covers a whole pair block.
FluctuationSupEstimate fluctuation_sup(const CayleyLattice& lattice, const Point& o,
                                       std::int64_t r, const WeightLaw& law,
                                       std::uint64_t base_seed, std::size_t requested_pairs,
                                       std::size_t replicas, const SearchOptions& opts = {});

} // namespace fpp
