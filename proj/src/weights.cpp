#include "fpp/weights.hpp"

#include <cmath>
#include <limits>

#include "fpp/errors.hpp"

namespace fpp {

WeightLaw WeightLaw::constant(double c) {
    if (c < 0 || !std::isfinite(c)) throw ConfigError("Constant law needs c >= 0");
    WeightLaw law;
    law.kind_ = Kind::Constant;
    law.lo_ = c;
    return law;
}

WeightLaw WeightLaw::uniform(double lo, double hi) {
    if (!(0 <= lo && lo < hi) || !std::isfinite(hi)) {
        throw ConfigError("UniformInterval law needs 0 <= lo < hi");
    }
    WeightLaw law;
    law.kind_ = Kind::UniformInterval;
    law.lo_ = lo;
    law.hi_ = hi;
    return law;
}

WeightLaw WeightLaw::atom_mixture(double p0, double atom_value, WeightLaw rest) {
    if (!(0 <= p0 && p0 < 1)) throw ConfigError("AtomMixture law needs 0 <= p0 < 1");
    if (atom_value < 0) throw ConfigError("AtomMixture atom must be nonnegative");
    WeightLaw law;
    law.kind_ = Kind::AtomMixture;
    law.p0_ = p0;
    law.atom_ = atom_value;
    law.rest_ = std::make_shared<WeightLaw>(std::move(rest));
    return law;
}

WeightLaw WeightLaw::exponential(double rate) {
    if (!(rate > 0) || !std::isfinite(rate)) throw ConfigError("Exponential law needs rate > 0");
    WeightLaw law;
    law.kind_ = Kind::Exponential;
    law.rate_ = rate;
    return law;
}

double WeightLaw::quantile(double u) const {
    if (!(0 <= u && u < 1)) throw DomainError("quantile argument outside [0,1)");
    switch (kind_) {
    case Kind::Constant:
        return lo_;
    case Kind::UniformInterval:
        return lo_ + u * (hi_ - lo_);
    case Kind::AtomMixture:
        if (u < p0_) return atom_;
        return rest_->quantile((u - p0_) / (1.0 - p0_));
    case Kind::Exponential:
        return -std::log1p(-u) / rate_;
    }
    return 0;
}

double WeightLaw::cdf(double x) const {
    switch (kind_) {
    case Kind::Constant:
        return x >= lo_ ? 1.0 : 0.0;
    case Kind::UniformInterval:
        if (x < lo_) return 0.0;
        if (x >= hi_) return 1.0;
        return (x - lo_) / (hi_ - lo_);
    case Kind::AtomMixture:
        return (x >= atom_ ? p0_ : 0.0) + (1.0 - p0_) * rest_->cdf(x);
    case Kind::Exponential:
        return x < 0 ? 0.0 : -std::expm1(-rate_ * x);
    }
    return 0;
}

double WeightLaw::mass_at(double x) const {
    switch (kind_) {
    case Kind::Constant:
        return x == lo_ ? 1.0 : 0.0;
    case Kind::UniformInterval:
    case Kind::Exponential:
        return 0.0;
    case Kind::AtomMixture:
        return (x == atom_ ? p0_ : 0.0) + (1.0 - p0_) * rest_->mass_at(x);
    }
    return 0;
}

double WeightLaw::mean() const {
    switch (kind_) {
    case Kind::Constant:
        return lo_;
    case Kind::UniformInterval:
        return 0.5 * (lo_ + hi_);
    case Kind::AtomMixture:
        return p0_ * atom_ + (1.0 - p0_) * rest_->mean();
    case Kind::Exponential:
        return 1.0 / rate_;
    }
    return 0;
}

double WeightLaw::min_weight() const {
    switch (kind_) {
    case Kind::Constant:
        return lo_;
    case Kind::UniformInterval:
        return lo_;
    case Kind::AtomMixture:
        return std::min(atom_, rest_->min_weight());
    case Kind::Exponential:
        return 0.0;
    }
    return 0;
}

double WeightLaw::max_weight() const {
    switch (kind_) {
    case Kind::Constant:
        return lo_;
    case Kind::UniformInterval:
        return hi_;
    case Kind::AtomMixture:
        return std::max(atom_, rest_->max_weight());
    case Kind::Exponential:
        return std::numeric_limits<double>::infinity();
    }
    return 0;
}

std::string WeightLaw::describe() const {
    switch (kind_) {
    case Kind::Constant:
        return "constant(" + std::to_string(lo_) + ")";
    case Kind::UniformInterval:
        return "uniform(" + std::to_string(lo_) + "," + std::to_string(hi_) + ")";
    case Kind::AtomMixture:
        return "atom(" + std::to_string(p0_) + "@" + std::to_string(atom_) + ")+" +
               rest_->describe();
    case Kind::Exponential:
        return "exponential(" + std::to_string(rate_) + ")";
    }
    return "?";
}

} // namespace fpp
