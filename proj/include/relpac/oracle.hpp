#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "relpac/concentration.hpp"
#include "relpac/rng.hpp"

namespace relpac {

// A samplable bounded random variable with known range. Draws are i.i.d.
// given a generator; the closed-form kinds never allocate and dispatch on a
// tag so tight sampling loops stay cheap.
class ArmOracle {
public:
    static ArmOracle degenerate(double value, Range range);
    // range defaults to the support [center - half_width, center + half_width];
    // an explicit range must contain it.
    static ArmOracle uniform_shifted(double center, double half_width,
                                     std::optional<Range> range = std::nullopt);
    static ArmOracle bernoulli_affine(double prob, double lo, double hi,
                                      std::optional<Range> range = std::nullopt);
    // Arbitrary sampler; used by tests (e.g. slowed samplers). true_mean may
    // be provided when known.
    static ArmOracle custom(std::function<double(Xoshiro256&)> sampler, Range range,
                            std::optional<double> true_mean = std::nullopt);

    double draw(Xoshiro256& rng) const;

    const Range& range() const noexcept { return range_; }

    // Exact mean when the distribution determines it (all closed kinds).
    std::optional<double> true_mean() const noexcept { return mean_; }

private:
    enum class Kind { Degenerate, UniformShifted, BernoulliAffine, Custom };

    ArmOracle(Kind kind, double p0, double p1, double p2, Range range, std::optional<double> mean)
        : kind_(kind), p0_(p0), p1_(p1), p2_(p2), range_(range), mean_(mean) {}

    Kind kind_;
    double p0_ = 0.0;
    double p1_ = 0.0;
    double p2_ = 0.0;
    Range range_;
    std::optional<double> mean_;
    std::shared_ptr<const std::function<double(Xoshiro256&)>> custom_;
};

} // namespace relpac
