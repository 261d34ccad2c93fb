#pragma once

#include <cstdint>

namespace relpac {

// Known bounds [a, b] of a random variable. Requires a < b.
struct Range {
    double a;
    double b;

    Range(double lo, double hi);
    double width() const noexcept { return b - a; }
};

// Confidence-level schedule d_m = delta * c * m^-p with c = (p-1)/p.
// The sum over m >= 1 is delta * c * zeta(p) <= delta for p >= 2.
// All logarithms in this library are natural logarithms.
class Schedule {
public:
    Schedule(double delta, double p);

    double delta() const noexcept { return delta_; }
    double p() const noexcept { return p_; }
    double c() const noexcept { return c_; }

    // d_m = delta * c * m^-p, m >= 1
    double dm(std::int64_t m) const;

    // log(3/d_m) = log 3 - log delta - log c + p log m, evaluated in log
    // space so it stays finite where d_m itself would underflow.
    double log3_over_dm(std::int64_t m) const;

private:
    double delta_;
    double p_;
    double c_;
    double log_const_; // log 3 - log delta - log c
};

// Streaming count / mean / variance with the biased 1/m convention.
// Single-pass update keeps mean and variance within 1e-12 of the batch
// definitions.
class RunningStats {
public:
    void push(double x) noexcept;

    std::int64_t count() const noexcept { return m_; }
    double mean() const noexcept { return mean_; }
    // V_m = (1/m) sum (x_i - mean)^2 ; zero for m <= 1
    double variance() const noexcept { return m_ > 1 && m2_ > 0 ? m2_ / static_cast<double>(m_) : 0.0; }

    static RunningStats from_moments(std::int64_t count, double mean, double variance) noexcept;

private:
    std::int64_t m_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0; // sum of squared deviations
};

// c_m evaluated from a precomputed log(3/d_m) value.
double half_width_from_log(double variance, double range_width, std::int64_t m, double log3_over_dm);

// Empirical-Bernstein half width
//   c_m = sqrt(2 V_m log(3/d_m) / m) + 3 (b-a) log(3/d_m) / m
double half_width(const RunningStats& stats, const Range& range, const Schedule& schedule);

// Whether |mean_m - true_mean| <= sqrt(2 V_m log(3/x)/m) + 3(b-a)log(3/x)/m
// for realized statistics; exercised by coverage tests only.
bool bernstein_event_holds(double true_mean, const RunningStats& stats, const Range& range, double x);

// High-probability upper bound for the empirical variance:
//   sigma^2 + sqrt(2 sigma^2 (b-a)^2 x / m) + x (b-a)^2 / (3m),
// which holds with probability at least 1 - exp(-x).
double variance_upper_bound(double sigma2, const Range& range, double x, std::int64_t m);

// Upper bound t' = (2/k) log(2q/k) for any t > 0 solving log(qt)/t = k;
// also log(q t')/t' <= k for every t' at or above the bound.
// Requires 2q/k > 1.
double log_lemma_bound(double q, double k);

} // namespace relpac
