#include "relpac/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <ostream>
#include <thread>

namespace relpac {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Monotonic clock for the N measurement. CPU-time clocks tick at jiffy
// granularity on some kernels, far too coarse for millisecond-scale runs.
double monotonic_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int thread_budget(int requested, int reps) {
    int t = requested;
    if (t <= 0) {
        t = static_cast<int>(std::thread::hardware_concurrency());
        if (t <= 0) t = 1;
    }
    if (const char* env = std::getenv("RELPAC_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) t = std::min(t, cap);
    }
    return std::clamp(t, 1, std::max(reps, 1));
}

int oracle_argmax(const std::vector<double>& means) {
    int best = 0;
    for (std::size_t i = 1; i < means.size(); ++i)
        if (means[i] > means[best]) best = static_cast<int>(i);
    return best;
}

} // namespace

std::optional<Algorithm> parse_algorithm(const std::string& tag) {
    if (tag == "nonadaptive") return Algorithm::NonAdaptive;
    if (tag == "adaptive") return Algorithm::Adaptive;
    if (tag == "ucbv") return Algorithm::UcbV;
    if (tag == "me") return Algorithm::MedianElimination;
    return std::nullopt;
}

const char* algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::NonAdaptive: return "nonadaptive";
        case Algorithm::Adaptive: return "adaptive";
        case Algorithm::UcbV: return "ucbv";
        case Algorithm::MedianElimination: return "me";
    }
    return "?";
}

double toy_f(double xi) { return std::sin(xi) + std::sin(10.0 * xi / 3.0); }

Problem toy_arms(const ToySpec& spec) {
    Problem p;
    p.arms.arms.reserve(spec.count);
    p.arms.labels.reserve(spec.count);
    p.oracle_means.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        const double xi = spec.xi_min + spec.step * i;
        const double mean = toy_f(xi);
        p.arms.arms.push_back(ArmOracle::uniform_shifted(mean, spec.noise_half_width));
        p.arms.labels.push_back(xi);
        p.oracle_means.push_back(mean);
    }
    return p;
}

Problem toy_subgrid(int stride, const ToySpec& spec) {
    if (stride < 1) throw std::invalid_argument("toy_subgrid: stride must be >= 1");
    Problem full = toy_arms(spec);
    Problem p;
    for (std::size_t i = 0; i < full.arms.size(); i += stride) {
        p.arms.arms.push_back(full.arms.arms[i]);
        p.arms.labels.push_back(full.arms.labels[i]);
        p.oracle_means.push_back(full.oracle_means[i]);
    }
    return p;
}

SamplerCostModel calibrate_sampler_cost(const ArmSet& arms) {
    SamplerCostModel model(arms.size(), 0.0);
    volatile double sink = 0.0;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        Xoshiro256 rng(derive_stream(0x5EEDCAFEULL, i));
        for (int w = 0; w < 16; ++w) sink = sink + arms.arms[i].draw(rng);
        std::int64_t drawn = 0, batch = 256;
        double elapsed = 0.0;
        while (elapsed < 1e-4 && drawn < 2'000'000) {
            const double t0 = monotonic_seconds();
            double acc = 0.0;
            for (std::int64_t d = 0; d < batch; ++d) acc += arms.arms[i].draw(rng);
            elapsed += monotonic_seconds() - t0;
            sink = sink + acc;
            drawn += batch;
            batch *= 2;
        }
        model[i] = elapsed / static_cast<double>(drawn);
    }
    return model;
}

RunReport run_once(Algorithm alg, const Problem& problem, double tau, double lambda,
                   const HarnessOptions& opts, std::uint64_t seed,
                   const SamplerCostModel* cost_model) {
    if (problem.oracle_means.size() != problem.arms.size())
        throw std::invalid_argument("run_once: oracle means do not match the arm set");

    RunReport rep;
    rep.algorithm = algorithm_name(alg);
    rep.seed = seed;
    rep.tau = tau;
    rep.lambda = lambda;
    rep.schedule_p = opts.schedule_p;
    rep.chosen_xi = kNaN;

    const int star = oracle_argmax(problem.oracle_means);
    const double best_mean = problem.oracle_means[star];

    SamplerCostModel local;
    if (cost_model == nullptr) {
        local = calibrate_sampler_cost(problem.arms);
        cost_model = &local;
    }

    const double t0 = monotonic_seconds();
    bool ok = true;
    try {
        switch (alg) {
            case Algorithm::NonAdaptive:
                rep.result = nonadaptive_maximize(problem.arms, tau, lambda, opts.schedule_p,
                                                  opts.select, seed);
                break;
            case Algorithm::Adaptive:
                rep.result = adaptive_maximize(problem.arms, tau, lambda, opts.schedule_p,
                                               opts.select, seed);
                break;
            case Algorithm::UcbV:
                rep.result = ucbv_maximize(problem.arms, tau, lambda, opts.schedule_p,
                                           opts.select, seed);
                break;
            case Algorithm::MedianElimination: {
                if (best_mean == 0.0)
                    throw std::invalid_argument("median elimination needs a nonzero best mean");
                if (!(tau > 0.0 && tau < 1.0))
                    throw std::invalid_argument("run_once: tau must lie in (0,1)");
                const double eps_abs = tau * std::abs(best_mean);
                rep.result = median_elimination(problem.arms, eps_abs, lambda, seed, opts.select.cap);
                break;
            }
        }
    } catch (const CapExceeded& e) {
        ok = false;
        rep.error = "cap_exceeded arm=" + std::to_string(e.arm_index);
    } catch (const std::exception& e) {
        ok = false;
        rep.error = e.what();
    }
    const double wall = monotonic_seconds() - t0;

    if (ok) {
        rep.chosen_index = rep.result.chosen;
        rep.total_samples = rep.result.total_samples;
        rep.iterations = rep.result.iterations;
        rep.chosen_xi = problem.arms.labels.empty() ? static_cast<double>(rep.chosen_index)
                                                    : problem.arms.labels[rep.chosen_index];
        double sampling = 0.0;
        for (std::size_t i = 0; i < rep.result.counts.size(); ++i)
            sampling += static_cast<double>(rep.result.counts[i]) * (*cost_model)[i];
        rep.wall_other_s = std::max(0.0, wall - sampling);
        rep.success = best_mean - problem.oracle_means[rep.chosen_index]
                      <= tau * std::abs(best_mean);
    } else {
        rep.wall_other_s = wall;
    }
    return rep;
}

double runtime_model(const RunReport& report, double t_star) {
    if (t_star < 0.0) throw std::invalid_argument("runtime_model: t_star must be >= 0");
    return static_cast<double>(report.total_samples) * t_star + report.wall_other_s;
}

VerifySummary verify_pac(Algorithm alg, const Problem& problem, double tau, double lambda,
                         int reps, std::uint64_t master_seed, const HarnessOptions& opts) {
    if (reps < 1) throw std::invalid_argument("verify_pac: reps must be >= 1");
    const SamplerCostModel cost = calibrate_sampler_cost(problem.arms);

    VerifySummary summary;
    summary.reports.resize(reps);
    const int threads = thread_budget(opts.threads, reps);
    auto worker = [&](int offset) {
        for (int r = offset; r < reps; r += threads)
            summary.reports[r] = run_once(alg, problem, tau, lambda, opts,
                                          derive_stream(master_seed, r), &cost);
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    int successes = 0;
    std::int64_t completed = 0;
    double sum = 0.0;
    for (const auto& r : summary.reports) {
        if (r.success) ++successes;
        if (r.error.empty()) {
            ++completed;
            sum += static_cast<double>(r.total_samples);
        }
    }
    summary.success_rate = static_cast<double>(successes) / reps;
    if (completed > 0) {
        summary.mean_M = sum / static_cast<double>(completed);
        double ss = 0.0;
        for (const auto& r : summary.reports) {
            if (!r.error.empty()) continue;
            const double d = static_cast<double>(r.total_samples) - summary.mean_M;
            ss += d * d;
        }
        summary.std_M = completed > 1 ? std::sqrt(ss / static_cast<double>(completed - 1)) : 0.0;
    } else {
        summary.mean_M = kNaN;
        summary.std_M = kNaN;
    }
    return summary;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, const Problem& problem,
                            std::uint64_t master_seed, const HarnessOptions& opts) {
    if (grid.taus.empty()) throw std::invalid_argument("sweep: tau list is empty");
    if (grid.lambdas.empty()) throw std::invalid_argument("sweep: lambda list is empty");
    if (grid.reps < 1) throw std::invalid_argument("sweep: reps must be >= 1");

    std::vector<SweepRow> rows;
    rows.reserve(grid.taus.size() * grid.lambdas.size());
    for (double tau : grid.taus) {
        for (double lambda : grid.lambdas) {
            const VerifySummary v =
                verify_pac(grid.algorithm, problem, tau, lambda, grid.reps, master_seed, opts);
            rows.push_back(SweepRow{algorithm_name(grid.algorithm), tau, lambda, grid.reps,
                                    v.mean_M, v.std_M, v.success_rate});
        }
    }
    return rows;
}

void write_runs_csv_header(std::ostream& out) {
    out << "algorithm,seed,tau,lambda,p,chosen_index,chosen_xi,total_samples,"
           "wall_other_s,success,iterations\n";
}

void write_runs_csv_row(std::ostream& out, const RunReport& r) {
    out << r.algorithm << ',' << r.seed << ',' << fmt(r.tau) << ',' << fmt(r.lambda) << ','
        << fmt(r.schedule_p) << ',' << r.chosen_index << ',' << fmt(r.chosen_xi) << ','
        << r.total_samples << ',' << fmt(r.wall_other_s) << ','
        << (r.success ? "true" : "false") << ',' << r.iterations << '\n';
}

void write_sweep_csv_header(std::ostream& out) {
    out << "algorithm,tau,lambda,reps,mean_M,std_M,success_rate\n";
}

void write_sweep_csv_row(std::ostream& out, const SweepRow& row) {
    out << row.algorithm << ',' << fmt(row.tau) << ',' << fmt(row.lambda) << ',' << row.reps << ','
        << fmt(row.mean_M) << ',' << fmt(row.std_M) << ',' << fmt(row.success_rate) << '\n';
}

void write_profile_csv_header(std::ostream& out) {
    out << "arm_index,xi,true_mean,count,estimate,beta_lo,beta_hi\n";
}

void write_profile_csv(std::ostream& out, const Problem& problem, const RunReport& report) {
    const auto& res = report.result;
    for (std::size_t i = 0; i < problem.arms.size(); ++i) {
        const double xi = problem.arms.labels.empty() ? static_cast<double>(i)
                                                      : problem.arms.labels[i];
        out << i << ',' << fmt(xi) << ',' << fmt(problem.oracle_means[i]) << ','
            << (i < res.counts.size() ? res.counts[i] : 0) << ','
            << fmt(i < res.estimates.size() ? res.estimates[i] : kNaN) << ','
            << fmt(i < res.beta_lo.size() ? res.beta_lo[i] : kNaN) << ','
            << fmt(i < res.beta_hi.size() ? res.beta_hi[i] : kNaN) << '\n';
    }
}

} // namespace relpac
