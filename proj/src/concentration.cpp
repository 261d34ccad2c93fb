#include "relpac/concentration.hpp"

#include <cmath>
#include <stdexcept>

namespace relpac {

Range::Range(double lo, double hi) : a(lo), b(hi) {
    if (!(a < b)) throw std::invalid_argument("Range: requires a < b");
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("Range: bounds must be finite");
}

Schedule::Schedule(double delta, double p) : delta_(delta), p_(p), c_((p - 1.0) / p) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("Schedule: delta must lie in (0,1)");
    if (!(p > 1.0)) throw std::invalid_argument("Schedule: p must exceed 1");
    log_const_ = std::log(3.0) - std::log(delta_) - std::log(c_);
}

double Schedule::dm(std::int64_t m) const {
    if (m < 1) throw std::domain_error("Schedule::dm: m must be >= 1");
    return delta_ * c_ * std::pow(static_cast<double>(m), -p_);
}

double Schedule::log3_over_dm(std::int64_t m) const {
    if (m < 1) throw std::domain_error("Schedule::log3_over_dm: m must be >= 1");
    return log_const_ + p_ * std::log(static_cast<double>(m));
}

void RunningStats::push(double x) noexcept {
    ++m_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(m_);
    m2_ += d * (x - mean_);
}

RunningStats RunningStats::from_moments(std::int64_t count, double mean, double variance) noexcept {
    RunningStats s;
    s.m_ = count;
    s.mean_ = mean;
    s.m2_ = variance * static_cast<double>(count);
    return s;
}

double half_width_from_log(double variance, double range_width, std::int64_t m, double log3_over_dm) {
    if (m < 1) throw std::domain_error("half_width: m must be >= 1");
    const double md = static_cast<double>(m);
    return std::sqrt(2.0 * variance * log3_over_dm / md) + 3.0 * range_width * log3_over_dm / md;
}

double half_width(const RunningStats& stats, const Range& range, const Schedule& schedule) {
    return half_width_from_log(stats.variance(), range.width(), stats.count(),
                               schedule.log3_over_dm(stats.count()));
}

bool bernstein_event_holds(double true_mean, const RunningStats& stats, const Range& range, double x) {
    if (stats.count() < 1) throw std::domain_error("bernstein_event_holds: empty statistics");
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("bernstein_event_holds: x must lie in (0,1)");
    const double bound = half_width_from_log(stats.variance(), range.width(), stats.count(), std::log(3.0 / x));
    return std::abs(stats.mean() - true_mean) <= bound;
}

double variance_upper_bound(double sigma2, const Range& range, double x, std::int64_t m) {
    if (m < 1) throw std::domain_error("variance_upper_bound: m must be >= 1");
    if (!(x > 0.0)) throw std::domain_error("variance_upper_bound: x must be positive");
    if (sigma2 < 0.0) throw std::domain_error("variance_upper_bound: sigma2 must be nonnegative");
    const double w2 = range.width() * range.width();
    const double md = static_cast<double>(m);
    return sigma2 + std::sqrt(2.0 * sigma2 * w2 * x / md) + x * w2 / (3.0 * md);
}

double log_lemma_bound(double q, double k) {
    if (!(q > 0.0 && k > 0.0)) throw std::domain_error("log_lemma_bound: q and k must be positive");
    const double ratio = 2.0 * q / k;
    if (!(ratio > 1.0)) throw std::domain_error("log_lemma_bound: requires 2q/k > 1");
    return (2.0 / k) * std::log(ratio);
}

} // namespace relpac
