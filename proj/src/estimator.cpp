#include "relpac/estimator.hpp"

#include <cmath>

namespace relpac {

CapExceeded::CapExceeded(RunningStats partial, std::int64_t cap_, int arm)
    : std::runtime_error("sampling cap exceeded before the stopping rule fired"),
      partial_stats(partial), cap(cap_), arm_index(arm) {}

Estimate estimate_mean(const ArmOracle& arm, double epsilon, const Schedule& schedule,
                       std::int64_t cap, Xoshiro256& rng) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("estimate_mean: epsilon must lie in (0,1)");
    if (cap < 1) throw std::invalid_argument("estimate_mean: cap must be >= 1");

    const double width = arm.range().width();
    RunningStats stats;
    for (std::int64_t m = 1; m <= cap; ++m) {
        stats.push(arm.draw(rng));
        const double cm = half_width_from_log(stats.variance(), width, m, schedule.log3_over_dm(m));
        const double mean = stats.mean();
        if (cm <= epsilon * std::abs(mean)) {
            const int sign = mean > 0.0 ? 1 : -1;
            return Estimate{mean - epsilon * sign * cm, m, epsilon, cm, sign, mean};
        }
    }
    throw CapExceeded(stats, cap);
}

double complexity_gamma() {
    static const double gamma = [] {
        const double s = std::sqrt(2.0 + 2.0 * std::sqrt(2.0) + 2.0 / 3.0) + 3.0;
        return s * s;
    }();
    return gamma;
}

ComplexityBound complexity_bound(double mu, double sigma2, double epsilon,
                                 const Schedule& schedule, const Range& range) {
    if (mu == 0.0) throw std::domain_error("complexity_bound: mu must be nonzero");
    if (sigma2 < 0.0) throw std::domain_error("complexity_bound: sigma2 must be nonnegative");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("complexity_bound: epsilon must lie in (0,1)");
    if (schedule.delta() > 0.75)
        throw std::domain_error("complexity_bound: requires delta <= 3/4");

    const double gamma = complexity_gamma();
    const double w2 = range.width() * range.width();
    const double e2m2 = epsilon * epsilon * mu * mu;
    const double top = std::max(sigma2, e2m2);
    const double nu = std::min(top / w2, e2m2 / ((1.0 + epsilon) * (1.0 + epsilon) * top * gamma));
    const double p = schedule.p();
    const double raw = 2.0 / nu * (p * std::log(2.0 * p / nu)
                                   + std::log(3.0 / (schedule.c() * schedule.delta())));
    const auto K = static_cast<std::int64_t>(std::ceil(raw));
    const double tail = 4.0 * schedule.delta() / 3.0;
    return ComplexityBound{nu, gamma, K, static_cast<double>(K) + tail, tail};
}

} // namespace relpac
