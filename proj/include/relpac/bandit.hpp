#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relpac/estimator.hpp"

namespace relpac {

// Finite ordered family of arms; index is the arm's identity. labels carry
// the parameter value xi behind each arm when there is one (the toy grid);
// empty otherwise.
struct ArmSet {
    std::vector<ArmOracle> arms;
    std::vector<double> labels;

    std::size_t size() const noexcept { return arms.size(); }
};

// Per-arm running state used by the adaptive algorithms.
//   eps_rel = c / |mean|, +inf while the arm is unsampled or its mean is 0
//   [beta_lo, beta_hi] = mean -/+ c
//   estimate: mean - eps_rel * sign * c when eps_rel < 1, else the mean
struct ArmState {
    RunningStats stats;
    double c = 0.0;
    double eps_rel;
    double beta_lo;
    double beta_hi;
    double estimate;
    int sign = 0;

    ArmState();
    void update(const Range& range, const Schedule& schedule);
};

// Snapshot of one adaptive iteration, recorded on demand for replay tests.
struct IterationRecord {
    std::vector<int> active_after;     // Xi_{n+1}
    std::vector<double> beta_lo;
    std::vector<double> beta_hi;
    std::vector<std::int64_t> counts;
    std::vector<double> means;
    std::vector<double> variances;
};

struct SelectionResult {
    int chosen = -1;
    std::vector<double> estimates;
    std::vector<std::int64_t> counts;
    std::vector<double> beta_lo;
    std::vector<double> beta_hi;
    std::int64_t total_samples = 0;
    std::int64_t iterations = 0; // loop iterations (adaptive/ucbv), rounds (ME), 0 otherwise
    std::vector<IterationRecord> history; // filled only when record_history
};

struct SelectOptions {
    bool positive_means = false;
    std::int64_t cap = 1'000'000'000;
    std::int64_t batch_size = 1; // adaptive algorithm only
    bool record_history = false;
};

// tau/(2+tau), or tau/(2-tau) when all means are known positive.
double epsilon_from_tau(double tau, bool positive_means);

// Estimates every arm independently to relative precision eps = f(tau) at
// level delta = lambda/#arms and returns the argmax of the estimates.
SelectionResult nonadaptive_maximize(const ArmSet& arms, double tau, double lambda,
                                     double schedule_p, const SelectOptions& opts,
                                     std::uint64_t seed);

// Racing loop: while more than one arm is active and the worst active
// relative precision exceeds the tau threshold, draw batch_size samples from
// every active arm, then rebuild the active set over ALL arms as
// { xi : beta_hi(xi) >= max_nu beta_lo(nu) } (re-entry permitted).
SelectionResult adaptive_maximize(const ArmSet& arms, double tau, double lambda,
                                  double schedule_p, const SelectOptions& opts,
                                  std::uint64_t seed);

// Same loop skeleton, but each iteration samples only the active arm with
// the highest beta_hi; unsampled arms carry beta_hi = +inf so every arm is
// drawn once before any repeat.
SelectionResult ucbv_maximize(const ArmSet& arms, double tau, double lambda,
                              double schedule_p, const SelectOptions& opts,
                              std::uint64_t seed);

// Median elimination at absolute precision eps_abs: rounds with
// eps_1 = eps_abs/4, delta_1 = delta/2, per-arm count ceil(4/eps_l^2 ln(3/delta_l)),
// arms below the round median discarded, then eps *= 3/4, delta /= 2.
// Round means drive elimination; cumulative counts/means are reported.
SelectionResult median_elimination(const ArmSet& arms, double eps_abs, double delta,
                                   std::uint64_t seed, std::int64_t cap = 1'000'000'000);

} // namespace relpac
