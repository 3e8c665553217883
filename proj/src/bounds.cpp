#include "fpp/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/errors.hpp"

namespace fpp {

double stirling_rate(double lambda, double epsilon_over_delta) {
    if (!(lambda > 0 && lambda < 1)) throw DomainError("stirling_rate needs lambda in (0,1)");
    const double x = epsilon_over_delta;
    if (!(x > 0 && x < 1)) throw DomainError("stirling_rate needs epsilon/delta in (0,1)");
    // lambda^{1-x} / (x^x (1-x)^{1-x}), evaluated in log space
    double log_rate = (1.0 - x) * std::log(lambda) - x * std::log(x) - (1.0 - x) * std::log1p(-x);
    return std::exp(log_rate);
}

bool admits_zero_atom(const WeightLaw& law, std::size_t degree) {
    return law.mass_at(0.0) < 1.0 / static_cast<double>(degree);
}

namespace {

// Smallest n with e * sqrt(n) * rho^n < 1/2, or 0 when none is found within
// the scan range (rho too close to 1 to be useful).
double solve_r0(double rho) {
    for (double n = 1; n <= 1e6; n = std::max(n + 1, std::floor(n * 1.05))) {
        if (std::exp(1.0) * std::sqrt(n) * std::pow(rho, n) < 0.5) return n;
    }
    return 0;
}

} // namespace

LowerBoundCertificate lower_bound_certificate(const WeightLaw& law, std::size_t degree) {
    if (degree < 2) throw ConfigError("degree must be at least 2");
    LowerBoundCertificate cert;
    cert.degree = degree;
    cert.a = law.min_weight();
    const double q = static_cast<double>(degree);
    const double b = law.mean();

    if (cert.a > 0) cert.trivial_bound = cert.a;

    // Path-counting route needs nu({a}) < 1/q.
    double best = 0;
    if (law.mass_at(cert.a) < 1.0 / q && b > cert.a) {
        for (int j = 0; j <= 48; ++j) {
            double delta = (b - cert.a) * std::pow(2.0, -j);
            double lambda = law.cdf(cert.a + delta);
            if (!(lambda > 0) || lambda >= 1.0 / q) continue;
            for (int s = 1; s < 200; ++s) {
                double x = static_cast<double>(s) / 200.0; // epsilon/delta
                double rho = stirling_rate(lambda, x) * q;
                if (rho >= 1.0) break; // rate is increasing in x near 0
                double r0 = solve_r0(rho);
                if (r0 <= 0) continue;
                double epsilon = x * delta;
                double two_sided = std::pow(1.0 - lambda, q) * delta / r0;
                double candidate = std::min(epsilon, two_sided);
                if (candidate > best) {
                    best = candidate;
                    cert.delta = delta;
                    cert.lambda = lambda;
                    cert.epsilon = epsilon;
                    cert.a_prime = cert.a + epsilon;
                    cert.rho = rho;
                    cert.r0 = r0;
                }
            }
        }
    }
    if (best > 0) {
        cert.path_route_status = LowerBoundCertificate::Status::Valid;
    } else {
        cert.note = "path-counting hypothesis nu({a}) < 1/q fails or yields no rate";
    }

    cert.a_doubleprime = std::max(cert.trivial_bound, best > 0 ? cert.a + best : 0.0);
    if (cert.trivial_bound > 0 &&
        cert.path_route_status == LowerBoundCertificate::Status::HypothesisViolated) {
        cert.note += (cert.note.empty() ? "" : "; ");
        cert.note += "exact-law fast path: essential infimum is positive";
    }
    cert.status = cert.a_doubleprime > 0 ? LowerBoundCertificate::Status::Valid
                                         : LowerBoundCertificate::Status::HypothesisViolated;
    return cert;
}

} // namespace fpp
