#pragma once

#include <cstdint>
#include <string>

#include "fpp/weights.hpp"

namespace fpp {

/// Per-step rate lambda^{1-x} / (x^x (1-x)^{1-x}) for x = epsilon/delta.
/// Tends to lambda as x -> 0+.
double stirling_rate(double lambda, double epsilon_over_delta);

/// Certified lower bound d-bar >= a'' * d from path counting plus the trivial
/// min-weight route when the essential infimum is positive.
struct LowerBoundCertificate {
    enum class Status { Valid, HypothesisViolated };

    std::size_t degree = 0;
    double a = 0;      // essential infimum of the law
    double delta = 0;  // chosen gap
    double lambda = 0; // nu([a, a + delta])
    double epsilon = 0;
    double a_prime = 0;       // a + epsilon
    double rho = 0;           // per-step decay, < 1 when the path route works
    double r0 = 0;            // threshold radius with the prefactor suppressed
    double trivial_bound = 0; // a when a > 0
    double a_doubleprime = 0; // best certified constant
    Status path_route_status = Status::HypothesisViolated;
    Status status = Status::HypothesisViolated; // any route valid
    std::string note;
};

LowerBoundCertificate lower_bound_certificate(const WeightLaw& law, std::size_t degree);

/// Gate for assumption (A2) at experiment setup: mass at zero must be < 1/q.
bool admits_zero_atom(const WeightLaw& law, std::size_t degree);

} // namespace fpp
