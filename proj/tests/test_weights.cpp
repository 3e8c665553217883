#include "doctest.h"

#include "fpp/errors.hpp"
#include "fpp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace fpp;

TEST_CASE("quantile closed forms") {
    CHECK(WeightLaw::constant(1.0).quantile(0.73) == 1.0);
    CHECK(WeightLaw::uniform(1.0, 2.0).quantile(0.5) == doctest::Approx(1.5));
    auto atom = WeightLaw::atom_mixture(0.1, 0.0, WeightLaw::constant(1.0));
    CHECK(atom.quantile(0.05) == 0.0);
    CHECK(atom.quantile(0.5) == 1.0);
    CHECK_THROWS_AS(WeightLaw::constant(1.0).quantile(1.0), DomainError);

    // monotone nondecreasing in u
    auto law = WeightLaw::atom_mixture(0.3, 0.5, WeightLaw::uniform(1.0, 4.0));
    double prev = law.quantile(0.0);
    for (double u = 0.01; u < 1.0; u += 0.01) {
        double q = law.quantile(u);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("closed-form means") {
    CHECK(WeightLaw::constant(2.5).mean() == 2.5);
    CHECK(WeightLaw::uniform(1.0, 2.0).mean() == doctest::Approx(1.5));
    CHECK(WeightLaw::atom_mixture(0.1, 0.0, WeightLaw::constant(1.0)).mean() ==
          doctest::Approx(0.9));
    CHECK(WeightLaw::exponential(2.0).mean() == doctest::Approx(0.5));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(WeightLaw::uniform(2.0, 1.0), ConfigError);
    CHECK_THROWS_AS(WeightLaw::uniform(-1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(WeightLaw::atom_mixture(1.0, 0.0, WeightLaw::constant(1.0)), ConfigError);
    CHECK_THROWS_AS(WeightLaw::constant(-1.0), ConfigError);
    CHECK_THROWS_AS(WeightLaw::exponential(0.0), ConfigError);
}

TEST_CASE("edge weights are deterministic and constant laws are constant") {
    auto lat = CayleyLattice::standard(2);
    OmegaField field(WeightLaw::constant(2.0), 42, lat);
    auto e = lat.canonical_edge(Point{3, -1}, Point{3, 0});
    CHECK(field.edge_weight(e) == 2.0);

    OmegaField uf(WeightLaw::uniform(1.0, 2.0), 42, lat);
    double w1 = uf.edge_weight(e);
    double w2 = uf.edge_weight(e);
    CHECK(w1 == w2);
    CHECK(w1 >= 1.0);
    CHECK(w1 < 2.0);
    // both orientations hit the same canonical key
    CHECK(uf.edge_weight(Point{3, -1}, Point{3, 0}) ==
          uf.edge_weight(Point{3, 0}, Point{3, -1}));
}

TEST_CASE("sample moments of the hashed field match the law") {
    auto lat = CayleyLattice::standard(2);
    OmegaField field(WeightLaw::uniform(1.0, 2.0), 7, lat);
    const int n = 100000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        // distinct horizontal edges along a line
        auto e = lat.canonical_edge(Point{i, 0}, Point{i + 1, 0});
        double w = field.edge_weight(e);
        sum += w;
        sumsq += w * w;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    // mean within 3 standard errors of 1.5 (se = sqrt(1/12)/sqrt(n))
    double se = std::sqrt(1.0 / 12.0 / n);
    CHECK(std::abs(mean - 1.5) <= 3 * se);
    // variance within 10% of 1/12
    CHECK(std::abs(var - 1.0 / 12.0) <= 0.1 / 12.0);
}

TEST_CASE("independence proxy: disjoint edge pairs are uncorrelated") {
    auto lat = CayleyLattice::standard(2);
    OmegaField field(WeightLaw::uniform(0.0, 1.0), 11, lat);
    const int n = 10000;
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        double x = field.edge_weight(lat.canonical_edge(Point{i, 10}, Point{i + 1, 10}));
        double y = field.edge_weight(lat.canonical_edge(Point{i, -10}, Point{i + 1, -10}));
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    double cov = sxy / n - (sx / n) * (sy / n);
    double vx = sxx / n - (sx / n) * (sx / n);
    double vy = syy / n - (sy / n) * (sy / n);
    double corr = cov / std::sqrt(vx * vy);
    CHECK(std::abs(corr) <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("Kolmogorov-Smirnov against the law's CDF") {
    auto lat = CayleyLattice::standard(2);
    auto law = WeightLaw::uniform(1.0, 2.0);
    OmegaField field(law, 13, lat);
    const int n = 10000;
    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i) {
        samples[i] = field.edge_weight(lat.canonical_edge(Point{0, i}, Point{0, i + 1}));
    }
    std::sort(samples.begin(), samples.end());
    double ks = 0;
    for (int i = 0; i < n; ++i) {
        double f = law.cdf(samples[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    // 1% critical value ~ 1.63 / sqrt(n)
    CHECK(ks <= 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("replica seeds differ and are stable") {
    CHECK(replica_seed(1, 0) == replica_seed(1, 0));
    CHECK(replica_seed(1, 0) != replica_seed(1, 1));
    CHECK(replica_seed(1, 0) != replica_seed(2, 0));
}
