#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "fpp/lattice.hpp"
#include "fpp/point.hpp"

namespace fpp {

/// Edge-weight distribution nu, supported on [0, inf). Every supported kind
/// has an exponential moment and a closed-form mean.
class WeightLaw {
public:
    enum class Kind { Constant, UniformInterval, AtomMixture, Exponential };

    static WeightLaw constant(double c);
    static WeightLaw uniform(double lo, double hi);
    /// With probability p0 the weight is `atom_value`, otherwise drawn from `rest`.
    static WeightLaw atom_mixture(double p0, double atom_value, WeightLaw rest);
    static WeightLaw exponential(double rate);

    Kind kind() const { return kind_; }

    /// Inverse CDF at u in [0,1); monotone nondecreasing in u.
    double quantile(double u) const;

    /// P(w <= x).
    double cdf(double x) const;

    /// P(w == x); nonzero only at atoms.
    double mass_at(double x) const;

    /// E w, exact.
    double mean() const;

    /// Essential infimum of the support.
    double min_weight() const;

    /// Essential supremum (infinity for Exponential).
    double max_weight() const;

    std::string describe() const;

    double p0() const { return p0_; }
    double atom_value() const { return atom_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double rate() const { return rate_; }
    const WeightLaw& rest() const { return *rest_; }

private:
    WeightLaw() = default;

    Kind kind_ = Kind::Constant;
    double lo_ = 0, hi_ = 0;   // UniformInterval, Constant stores c in lo_
    double p0_ = 0, atom_ = 0; // AtomMixture
    double rate_ = 0;          // Exponential
    std::shared_ptr<const WeightLaw> rest_;
};

/// splitmix64 finalizer; the fixed avalanche permutation behind all hashing.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic seed for replica i of a base seed.
inline std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t i) {
    return mix64(base_seed ^ mix64(i));
}

/// Deterministic seeded edge-weight field omega: E -> [0, inf).
/// omega(e) is a pure function of (seed, canonical edge, law); weights are
/// generated lazily by hashing, never stored.
class OmegaField {
public:
    OmegaField(WeightLaw law, std::uint64_t seed, const CayleyLattice& lattice)
        : law_(std::move(law)), seed_(seed), lattice_(&lattice) {}

    const WeightLaw& law() const { return law_; }
    std::uint64_t seed() const { return seed_; }
    const CayleyLattice& lattice() const { return *lattice_; }

    /// Uniform variate in [0,1) attached to a canonical edge: seed and the
    /// edge's coordinate words (base then step, two's complement 64-bit)
    /// chained through the avalanche permutation, top 53 bits divided by 2^53.
    double edge_uniform(const EdgeKey& e) const {
        std::uint64_t h = mix64(seed_);
        for (auto c : e.base) h = mix64(h ^ static_cast<std::uint64_t>(c));
        for (auto c : e.step) h = mix64(h ^ static_cast<std::uint64_t>(c));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

    double edge_weight(const EdgeKey& e) const { return law_.quantile(edge_uniform(e)); }

    double edge_weight(const Point& u, const Point& v) const {
        return edge_weight(lattice_->canonical_edge(u, v));
    }

private:
    WeightLaw law_;
    std::uint64_t seed_;
    const CayleyLattice* lattice_;
};

} // namespace fpp
