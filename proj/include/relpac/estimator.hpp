#pragma once

#include <cstdint>
#include <stdexcept>

#include "relpac/concentration.hpp"
#include "relpac/oracle.hpp"
#include "relpac/rng.hpp"

namespace relpac {

// Result of the adaptive-stopping relative-precision estimator.
// Invariants at stopping:
//   achieved_half_width <= epsilon_used * |mean_at_stop|
//   value = mean_at_stop - epsilon_used * sign * achieved_half_width
struct Estimate {
    double value;
    std::int64_t stopping_time;
    double epsilon_used;
    double achieved_half_width;
    int sign; // sign(mean at stopping), +1 or -1
    double mean_at_stop;
};

// Thrown when the stopping rule has not fired after `cap` draws (zero-mean
// arm, or cap too small). Carries the partial statistics.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(RunningStats partial, std::int64_t cap, int arm_index = -1);

    RunningStats partial_stats;
    std::int64_t cap;
    int arm_index; // -1 when not raised from a multi-arm context
};

// Draws one sample at a time and stops at the first m with
// c_m <= epsilon * |mean_m|; the returned estimate satisfies
// P(|value - E[Z]| <= epsilon |E[Z]|) >= 1 - delta.
Estimate estimate_mean(const ArmOracle& arm, double epsilon, const Schedule& schedule,
                       std::int64_t cap, Xoshiro256& rng);

// Closed-form complexity bound on the stopping time M:
//   P(M > K) <= 4 delta / 3 and E[M] <= K + 4 delta / 3 with
//   K = ceil((2/nu) (p log(2p/nu) + log(3/(c delta)))).
struct ComplexityBound {
    double nu;
    double gamma;
    std::int64_t K;
    double expected_M_bound;  // K + 4 delta / 3
    double tail_probability;  // 4 delta / 3
};

// gamma = (sqrt(2 + 2 sqrt 2 + 2/3) + 3)^2
double complexity_gamma();

// Requires mu != 0 and schedule.delta() <= 3/4.
ComplexityBound complexity_bound(double mu, double sigma2, double epsilon,
                                 const Schedule& schedule, const Range& range);

} // namespace relpac
