#include "doctest.h"

#include "fpp/bounds.hpp"
#include "fpp/errors.hpp"

#include <cmath>

using namespace fpp;

TEST_CASE("stirling rate closed forms and limits") {
    // lambda^{1/2} / (1/2)^{1/2} / (1/2)^{1/2} = 2 sqrt(lambda): at 0.25 -> 1
    CHECK(stirling_rate(0.25, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(stirling_rate(0.09, 0.5) == doctest::Approx(0.6).epsilon(1e-12));
    // x -> 0: rate tends to lambda
    CHECK(stirling_rate(0.3, 1e-9) == doctest::Approx(0.3).epsilon(1e-6));
    // increasing in x for x below the crossover
    CHECK(stirling_rate(0.2, 0.1) < stirling_rate(0.2, 0.2));

    CHECK_THROWS_AS(stirling_rate(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(stirling_rate(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(stirling_rate(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(stirling_rate(0.5, 1.0), DomainError);
}

TEST_CASE("stirling rate dominates the exact binomial count") {
    // C(n, xn) lambda^{(1-x)n} <= (e sqrt(n)) rate^n, Stirling with O(1) slack
    double lambda = 0.3;
    for (double x : {0.1, 0.25, 0.5}) {
        for (int n : {40, 100, 200}) {
            int k = static_cast<int>(std::lround(x * n));
            double xe = static_cast<double>(k) / n; // realized ratio
            double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(n - k + 1.0);
            double log_exact = log_binom + (n - k) * std::log(lambda);
            double log_bound = n * std::log(stirling_rate(lambda, xe)) + 1.0 +
                               0.5 * std::log(static_cast<double>(n));
            CHECK(log_exact <= log_bound + 1e-9);
            // and the bound is tight to within the sqrt(n) prefactor
            CHECK(log_bound - log_exact <= 3.0 + std::log(static_cast<double>(n)));
        }
    }
}

TEST_CASE("zero-atom admissibility gate") {
    auto ok = WeightLaw::atom_mixture(0.1, 0.0, WeightLaw::constant(1.0));
    auto bad = WeightLaw::atom_mixture(0.3, 0.0, WeightLaw::constant(1.0));
    CHECK(admits_zero_atom(ok, 4));
    CHECK(!admits_zero_atom(bad, 4));
    CHECK(admits_zero_atom(WeightLaw::uniform(0.0, 1.0), 4));
}

TEST_CASE("certificate for a small zero atom is valid with positive rate") {
    auto law = WeightLaw::atom_mixture(0.1, 0.0, WeightLaw::constant(1.0));
    auto cert = lower_bound_certificate(law, 4);
    CHECK(cert.status == LowerBoundCertificate::Status::Valid);
    CHECK(cert.path_route_status == LowerBoundCertificate::Status::Valid);
    CHECK(cert.a == 0.0);
    CHECK(cert.a_doubleprime > 0.0);
    CHECK(cert.a_doubleprime < law.mean()); // a lower bound cannot beat the mean
    CHECK(cert.rho < 1.0);
    CHECK(cert.r0 >= 1.0);
    CHECK(cert.lambda < 0.25); // nu([a, a+delta]) under 1/q
    CHECK(cert.epsilon > 0.0);
    CHECK(cert.a_prime == doctest::Approx(cert.a + cert.epsilon));
}

TEST_CASE("certificate reports hypothesis violation for a heavy zero atom") {
    auto law = WeightLaw::atom_mixture(0.3, 0.0, WeightLaw::constant(1.0));
    auto cert = lower_bound_certificate(law, 4);
    CHECK(cert.status == LowerBoundCertificate::Status::HypothesisViolated);
    CHECK(cert.path_route_status == LowerBoundCertificate::Status::HypothesisViolated);
    CHECK(cert.a_doubleprime == 0.0);
    CHECK(!cert.note.empty());
}

TEST_CASE("positive essential infimum always yields the trivial route") {
    auto cert = lower_bound_certificate(WeightLaw::constant(1.0), 4);
    CHECK(cert.status == LowerBoundCertificate::Status::Valid);
    CHECK(cert.path_route_status == LowerBoundCertificate::Status::HypothesisViolated);
    CHECK(cert.a_doubleprime == 1.0);

    auto uni = lower_bound_certificate(WeightLaw::uniform(1.0, 2.0), 4);
    CHECK(uni.status == LowerBoundCertificate::Status::Valid);
    CHECK(uni.path_route_status == LowerBoundCertificate::Status::Valid);
    CHECK(uni.a_doubleprime > 1.0); // path counting improves on the trivial bound
    CHECK(uni.a_doubleprime < uni.a + (uni.degree > 0 ? 1.0 : 0.0));

    CHECK_THROWS_AS(lower_bound_certificate(WeightLaw::constant(1.0), 1), ConfigError);
}
