#include "relpac/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace relpac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_common(const ArmSet& arms, double tau, double lambda) {
    if (arms.arms.empty()) throw std::invalid_argument("maximize: arm set is empty");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("maximize: tau must lie in (0,1)");
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("maximize: lambda must lie in (0,1)");
}

// Flat per-arm state; structure-of-arrays keeps the racing loops' scans on
// dense doubles.
struct ArmTable {
    std::vector<std::int64_t> count;
    std::vector<double> mean, m2, c, eps, blo, bhi, est;

    explicit ArmTable(std::size_t k)
        : count(k, 0), mean(k, 0.0), m2(k, 0.0), c(k, 0.0), eps(k, kInf),
          blo(k, -kInf), bhi(k, kInf), est(k, kNaN) {}

    void push(std::size_t i, double x) noexcept {
        ++count[i];
        const double d = x - mean[i];
        mean[i] += d / static_cast<double>(count[i]);
        m2[i] += d * (x - mean[i]);
    }

    void refresh(std::size_t i, double width, const Schedule& schedule) {
        const auto m = count[i];
        const double var = m > 1 && m2[i] > 0 ? m2[i] / static_cast<double>(m) : 0.0;
        const double ci = half_width_from_log(var, width, m, schedule.log3_over_dm(m));
        const double mu = mean[i];
        c[i] = ci;
        eps[i] = mu == 0.0 ? kInf : ci / std::abs(mu);
        blo[i] = mu - ci;
        bhi[i] = mu + ci;
        if (eps[i] < 1.0) {
            const double sign = mu > 0.0 ? 1.0 : -1.0;
            est[i] = mu - eps[i] * sign * ci;
        } else {
            est[i] = mu;
        }
    }

    double variance(std::size_t i) const noexcept {
        return count[i] > 1 && m2[i] > 0 ? m2[i] / static_cast<double>(count[i]) : 0.0;
    }
};

RunningStats stats_of(const ArmTable& t, int i) {
    return RunningStats::from_moments(t.count[i], t.mean[i], t.variance(i));
}

int argmax_estimate(const ArmTable& t, const std::vector<int>& active) {
    int best = active.front();
    for (std::size_t j = 1; j < active.size(); ++j) {
        const int i = active[j];
        if (t.est[i] > t.est[best]) best = i;
    }
    return best;
}

std::vector<int> rebuild_active(const ArmTable& t) {
    const double B = *std::max_element(t.blo.begin(), t.blo.end());
    std::vector<int> active;
    for (std::size_t i = 0; i < t.bhi.size(); ++i)
        if (t.bhi[i] >= B) active.push_back(static_cast<int>(i));
    return active;
}

IterationRecord snapshot(const ArmTable& t, const std::vector<int>& active) {
    IterationRecord rec;
    rec.active_after = active;
    rec.beta_lo = t.blo;
    rec.beta_hi = t.bhi;
    rec.counts = t.count;
    rec.means = t.mean;
    rec.variances.resize(t.count.size());
    for (std::size_t i = 0; i < t.count.size(); ++i) rec.variances[i] = t.variance(i);
    return rec;
}

SelectionResult finalize(ArmTable&& t, int chosen, std::int64_t iterations,
                         std::vector<IterationRecord>&& history) {
    SelectionResult r;
    r.chosen = chosen;
    r.estimates = std::move(t.est);
    r.counts = std::move(t.count);
    r.beta_lo = std::move(t.blo);
    r.beta_hi = std::move(t.bhi);
    r.total_samples = std::accumulate(r.counts.begin(), r.counts.end(), std::int64_t{0});
    r.iterations = iterations;
    r.history = std::move(history);
    return r;
}

} // namespace

ArmState::ArmState()
    : eps_rel(kInf), beta_lo(-kInf), beta_hi(kInf), estimate(kNaN) {}

void ArmState::update(const Range& range, const Schedule& schedule) {
    c = half_width(stats, range, schedule);
    const double mu = stats.mean();
    sign = mu > 0.0 ? 1 : (mu < 0.0 ? -1 : 0);
    eps_rel = mu == 0.0 ? kInf : c / std::abs(mu);
    beta_lo = mu - c;
    beta_hi = mu + c;
    estimate = eps_rel < 1.0 ? mu - eps_rel * sign * c : mu;
}

double epsilon_from_tau(double tau, bool positive_means) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("epsilon_from_tau: tau must lie in (0,1)");
    return positive_means ? tau / (2.0 - tau) : tau / (2.0 + tau);
}

SelectionResult nonadaptive_maximize(const ArmSet& arms, double tau, double lambda,
                                     double schedule_p, const SelectOptions& opts,
                                     std::uint64_t seed) {
    validate_common(arms, tau, lambda);
    const std::size_t k = arms.size();
    const double eps = epsilon_from_tau(tau, opts.positive_means);
    const Schedule schedule(lambda / static_cast<double>(k), schedule_p);

    SelectionResult r;
    r.estimates.resize(k);
    r.counts.resize(k);
    r.beta_lo.resize(k);
    r.beta_hi.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        Xoshiro256 rng(derive_stream(seed, i));
        Estimate e;
        try {
            e = estimate_mean(arms.arms[i], eps, schedule, opts.cap, rng);
        } catch (const CapExceeded& ex) {
            throw CapExceeded(ex.partial_stats, ex.cap, static_cast<int>(i));
        }
        r.estimates[i] = e.value;
        r.counts[i] = e.stopping_time;
        r.beta_lo[i] = e.mean_at_stop - e.achieved_half_width;
        r.beta_hi[i] = e.mean_at_stop + e.achieved_half_width;
    }
    r.total_samples = std::accumulate(r.counts.begin(), r.counts.end(), std::int64_t{0});
    r.chosen = 0;
    for (std::size_t i = 1; i < k; ++i)
        if (r.estimates[i] > r.estimates[r.chosen]) r.chosen = static_cast<int>(i);
    return r;
}

SelectionResult adaptive_maximize(const ArmSet& arms, double tau, double lambda,
                                  double schedule_p, const SelectOptions& opts,
                                  std::uint64_t seed) {
    validate_common(arms, tau, lambda);
    if (opts.batch_size < 1) throw std::invalid_argument("adaptive_maximize: batch_size must be >= 1");
    const std::size_t k = arms.size();
    const double eps_target = epsilon_from_tau(tau, opts.positive_means);
    const Schedule schedule(lambda / static_cast<double>(k), schedule_p);

    ArmTable t(k);
    std::vector<Xoshiro256> rng;
    rng.reserve(k);
    for (std::size_t i = 0; i < k; ++i) rng.emplace_back(derive_stream(seed, i));

    std::vector<int> active(k);
    std::iota(active.begin(), active.end(), 0);
    std::vector<IterationRecord> history;
    std::int64_t n = 0;

    auto max_active_eps = [&] {
        double worst = -kInf;
        for (int i : active) worst = std::max(worst, t.eps[i]);
        return worst;
    };

    while (active.size() > 1 && max_active_eps() > eps_target) {
        for (int i : active) {
            if (t.count[i] + opts.batch_size > opts.cap)
                throw CapExceeded(stats_of(t, i), opts.cap, i);
            const double width = arms.arms[i].range().width();
            for (std::int64_t b = 0; b < opts.batch_size; ++b)
                t.push(static_cast<std::size_t>(i), arms.arms[i].draw(rng[i]));
            t.refresh(static_cast<std::size_t>(i), width, schedule);
        }
        ++n;
        active = rebuild_active(t);
        if (opts.record_history) history.push_back(snapshot(t, active));
    }

    const int chosen = argmax_estimate(t, active);
    return finalize(std::move(t), chosen, n, std::move(history));
}

SelectionResult ucbv_maximize(const ArmSet& arms, double tau, double lambda,
                              double schedule_p, const SelectOptions& opts,
                              std::uint64_t seed) {
    validate_common(arms, tau, lambda);
    const std::size_t k = arms.size();
    const double eps_target = epsilon_from_tau(tau, opts.positive_means);
    const Schedule schedule(lambda / static_cast<double>(k), schedule_p);

    ArmTable t(k);
    std::vector<Xoshiro256> rng;
    rng.reserve(k);
    for (std::size_t i = 0; i < k; ++i) rng.emplace_back(derive_stream(seed, i));
    std::vector<double> widths(k);
    for (std::size_t i = 0; i < k; ++i) widths[i] = arms.arms[i].range().width();

    std::vector<IterationRecord> history;
    std::int64_t n = 0;

    // Aggregates over the implicit active set { i : bhi[i] >= B }, where
    // B = max blo. The arm with the globally largest bhi always satisfies
    // bhi >= B, so the argmax over the active set equals the global argmax,
    // and #active > 1 iff the second-largest bhi reaches B.
    double B = -kInf;
    int top1 = 0;
    double top1v = kInf, top2v = kInf;
    int hot_cache = 0; // last arm seen active with eps above the target

    auto rescan = [&] {
        B = -kInf;
        for (std::size_t i = 0; i < k; ++i) B = std::max(B, t.blo[i]);
        top1 = 0;
        top1v = t.bhi[0];
        top2v = -kInf;
        for (std::size_t i = 1; i < k; ++i) {
            const double v = t.bhi[i];
            if (v > top1v) {
                top2v = top1v;
                top1v = v;
                top1 = static_cast<int>(i);
            } else if (v > top2v) {
                top2v = v;
            }
        }
    };

    auto hot_active_exists = [&]() -> bool {
        if (t.bhi[hot_cache] >= B && t.eps[hot_cache] > eps_target) return true;
        for (std::size_t i = 0; i < k; ++i) {
            if (t.bhi[i] >= B && t.eps[i] > eps_target) {
                hot_cache = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };

    rescan();
    while (k > 1 && top2v >= B && hot_active_exists()) {
        const int i = top1;
        if (t.count[i] + 1 > opts.cap) throw CapExceeded(stats_of(t, i), opts.cap, i);
        t.push(static_cast<std::size_t>(i), arms.arms[i].draw(rng[i]));
        t.refresh(static_cast<std::size_t>(i), widths[i], schedule);
        ++n;
        rescan();
        if (opts.record_history) history.push_back(snapshot(t, rebuild_active(t)));
    }

    std::vector<int> active;
    for (std::size_t i = 0; i < k; ++i)
        if (t.bhi[i] >= B) active.push_back(static_cast<int>(i));
    const int chosen = argmax_estimate(t, active);
    return finalize(std::move(t), chosen, n, std::move(history));
}

SelectionResult median_elimination(const ArmSet& arms, double eps_abs, double delta,
                                   std::uint64_t seed, std::int64_t cap) {
    if (arms.arms.empty()) throw std::invalid_argument("median_elimination: arm set is empty");
    if (!(eps_abs > 0.0)) throw std::invalid_argument("median_elimination: eps_abs must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("median_elimination: delta must lie in (0,1)");

    const std::size_t k = arms.size();
    std::vector<Xoshiro256> rng;
    rng.reserve(k);
    for (std::size_t i = 0; i < k; ++i) rng.emplace_back(derive_stream(seed, i));

    std::vector<RunningStats> stats(k);
    std::vector<int> survivors(k);
    std::iota(survivors.begin(), survivors.end(), 0);

    double eps_l = eps_abs / 4.0;
    double delta_l = delta / 2.0;
    std::int64_t rounds = 0;

    while (survivors.size() > 1) {
        const double raw = std::ceil(4.0 / (eps_l * eps_l) * std::log(3.0 / delta_l));
        if (!(raw >= 1.0) || raw > static_cast<double>(cap))
            throw CapExceeded(stats[survivors.front()], cap, survivors.front());
        const auto n_l = static_cast<std::int64_t>(raw);
        for (int i : survivors)
            if (stats[i].count() + n_l > cap) throw CapExceeded(stats[i], cap, i);

        std::vector<double> round_mean(survivors.size());
        for (std::size_t j = 0; j < survivors.size(); ++j) {
            const int i = survivors[j];
            double sum = 0.0;
            for (std::int64_t d = 0; d < n_l; ++d) {
                const double x = arms.arms[i].draw(rng[i]);
                sum += x;
                stats[i].push(x);
            }
            round_mean[j] = sum / static_cast<double>(n_l);
        }

        std::vector<double> sorted = round_mean;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t s = sorted.size();
        const double median = s % 2 == 1 ? sorted[s / 2] : 0.5 * (sorted[s / 2 - 1] + sorted[s / 2]);

        std::vector<int> next;
        for (std::size_t j = 0; j < survivors.size(); ++j)
            if (round_mean[j] >= median) next.push_back(survivors[j]);
        if (next.size() == survivors.size()) {
            // all round means tied at the median; keep the better half by
            // (mean desc, index asc) so the loop always progresses
            std::vector<std::size_t> order(survivors.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return round_mean[a] > round_mean[b];
            });
            next.clear();
            const std::size_t keep = (survivors.size() + 1) / 2;
            for (std::size_t j = 0; j < keep; ++j) next.push_back(survivors[order[j]]);
            std::sort(next.begin(), next.end());
        }
        survivors = std::move(next);
        ++rounds;
        eps_l *= 0.75;
        delta_l *= 0.5;
    }

    SelectionResult r;
    r.chosen = survivors.front();
    r.estimates.resize(k, kNaN);
    r.counts.resize(k, 0);
    r.beta_lo.assign(k, kNaN);
    r.beta_hi.assign(k, kNaN);
    for (std::size_t i = 0; i < k; ++i) {
        r.counts[i] = stats[i].count();
        if (stats[i].count() > 0) r.estimates[i] = stats[i].mean();
    }
    r.total_samples = std::accumulate(r.counts.begin(), r.counts.end(), std::int64_t{0});
    r.iterations = rounds;
    return r;
}

} // namespace relpac
