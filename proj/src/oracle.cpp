#include "relpac/oracle.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace relpac {

ArmOracle ArmOracle::degenerate(double value, Range range) {
    if (value < range.a || value > range.b)
        throw std::invalid_argument("ArmOracle::degenerate: value outside range");
    return ArmOracle(Kind::Degenerate, value, 0.0, 0.0, range, value);
}

ArmOracle ArmOracle::uniform_shifted(double center, double half_width, std::optional<Range> range) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("ArmOracle::uniform_shifted: half_width must be positive");
    const Range support(center - half_width, center + half_width);
    const Range r = range.value_or(support);
    if (r.a > support.a || r.b < support.b)
        throw std::invalid_argument("ArmOracle::uniform_shifted: range does not contain the support");
    return ArmOracle(Kind::UniformShifted, center, half_width, 0.0, r, center);
}

ArmOracle ArmOracle::bernoulli_affine(double prob, double lo, double hi, std::optional<Range> range) {
    if (!(prob >= 0.0 && prob <= 1.0))
        throw std::invalid_argument("ArmOracle::bernoulli_affine: p must lie in [0,1]");
    const Range support(lo, hi);
    const Range r = range.value_or(support);
    if (r.a > support.a || r.b < support.b)
        throw std::invalid_argument("ArmOracle::bernoulli_affine: range does not contain the support");
    return ArmOracle(Kind::BernoulliAffine, prob, lo, hi, r, lo + prob * (hi - lo));
}

ArmOracle ArmOracle::custom(std::function<double(Xoshiro256&)> sampler, Range range,
                            std::optional<double> true_mean) {
    ArmOracle arm(Kind::Custom, 0.0, 0.0, 0.0, range, true_mean);
    arm.custom_ = std::make_shared<const std::function<double(Xoshiro256&)>>(std::move(sampler));
    return arm;
}

double ArmOracle::draw(Xoshiro256& rng) const {
    double x;
    switch (kind_) {
        case Kind::Degenerate:
            return p0_; // consumes no generator state
        case Kind::UniformShifted:
            x = p0_ + p1_ * (2.0 * rng.u01() - 1.0); // [center - hw, center + hw)
            break;
        case Kind::BernoulliAffine:
            x = rng.u01() < p0_ ? p2_ : p1_;
            break;
        case Kind::Custom:
            x = (*custom_)(rng);
            break;
        default:
            x = 0.0;
    }
    assert(x >= range_.a && x <= range_.b);
    return x;
}

} // namespace relpac
