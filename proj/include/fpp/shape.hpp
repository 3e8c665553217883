#pragma once

#include <functional>
#include <vector>

#include "fpp/cloud.hpp"
#include "fpp/geodesicity.hpp"
#include "fpp/oracle.hpp"

namespace fpp {

/// Sublinearly doubling profile: phi increasing, phi(lambda r) <= eta(lambda)
/// phi(r), with eta(lambda)/lambda -> 0.
struct DoublingProfile {
    std::function<double(double)> phi;
    std::function<double(double)> eta;

    /// phi(alpha) = sqrt(alpha / log alpha) with a linear continuation below e^2.
    static DoublingProfile sqrt_over_log();
};

struct HullIdentityReport {
    std::size_t n = 0;
    double support_gap = 0;    // max |h(K-hat^n) - h(K^{n-d} K-hat^d)| over directions
    double dh_power = 0;       // d_H(K^n, K-hat^n)
    double dh_base = 0;        // d_H(K, K-hat)
    bool identity_holds = false;
    bool inequality_holds = false; // dh_power <= d * dh_base
};

/// Lemma-style hull identity on a finite symmetric K in Z^2.
HullIdentityReport hull_identity_check(const PointCloud& k, std::size_t n,
                                       const std::vector<std::vector<double>>& dirs,
                                       double support_tol = 1e-9, double raster = 0.125);

struct BallPowerReport {
    double r = 0;
    std::size_t m = 0;
    bool left_inclusion = false;  // B(0,r/M)^M inside B(0,r)
    bool right_inclusion = false; // B(0,r) inside B(0,(1+eps) r/M)^M
    double epsilon = 0;           // 1/N(r/M)
    double defect = 0;            // d_H of the rescaled pair
};

BallPowerReport ball_power_sandwich(const MetricOracle& oracle, double r, std::size_t m,
                                    const SagProfile& profile);

/// d_H between (1/r1) B(0,r1) and (1/r2) B(0,r2) in the auxiliary norm.
double cauchy_defect(const MetricOracle& oracle, double r1, double r2,
                     AuxNorm norm = AuxNorm::Linf);

/// Estimated limit norm from the rescaled ball at the largest feasible radius:
/// support samples over a fixed direction set, symmetrized.
struct LimitNorm {
    std::vector<std::vector<double>> dirs;
    std::vector<double> support_values;

    /// Gauge of the estimated unit ball: max over directions of <x,th>/h(th).
    double norm_of(const std::vector<double>& x) const;
    double norm_of(const Point& x) const;
};

LimitNorm limit_norm_estimate(const MetricOracle& oracle, double r_max,
                              const std::vector<std::vector<double>>& dirs);

struct ShapeEntry {
    double n = 0;
    double delta_out = 0;  // smallest growth with B(0,n) inside the norm ball
    double delta_in = 0;   // smallest shrink with the norm ball inside B(0,n)
    double std_error = 0;  // estimator noise near the boundary (MC oracles)
};

struct ShapeSeries {
    std::vector<ShapeEntry> entries;
    double fit_c = 0;        // least squares of max(delta) against sqrt(n log n)
    double fit_residual = 0;
    double exponent = 0;     // exploratory log-log slope, reported only
};

ShapeSeries shape_error_series(const MetricOracle& oracle, const std::vector<double>& radii,
                               const LimitNorm& norm_est);

struct InductionTraceRow {
    unsigned k = 0;
    double r = 0;
    double measured = 0; // cauchy defect between scales r and L r
    double bound = 0;    // 2C / phi(L^k)
    bool ok = false;
};

struct InductionTrace {
    unsigned scale = 0; // L with d * eta(L) / L <= 1/4
    double c0 = 0;
    double c_prime = 0;  // 6G/c with estimated G
    double c_chain = 0;  // max(C0, C''/4)
    bool estimated_lipschitz = true;
    std::vector<InductionTraceRow> rows;
    bool holds = true;
};

/// Recomputes the induction constants from measured SAG data and checks the
/// per-level contraction inequality on measured ball defects.
InductionTrace induction_trace(const MetricOracle& oracle, const SagProfile& sag,
                               const DoublingProfile& profile, unsigned max_level);

} // namespace fpp
