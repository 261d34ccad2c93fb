#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relpac/bandit.hpp"

namespace relpac {

enum class Algorithm { NonAdaptive, Adaptive, UcbV, MedianElimination };

std::optional<Algorithm> parse_algorithm(const std::string& tag);
const char* algorithm_name(Algorithm alg);

// f(xi) = sin(xi) + sin(10 xi / 3), the mean surface of the toy family.
double toy_f(double xi);

struct ToySpec {
    double xi_min = 3.0;
    double step = 0.04;
    int count = 101;
    double noise_half_width = 1.0 / 20.0;
};

struct Problem {
    ArmSet arms;
    std::vector<double> oracle_means;
};

// Arm i samples f(xi_i) + U(-1/20, 1/20); oracle mean is f(xi_i) exactly.
Problem toy_arms(const ToySpec& spec = {});

// Toy problem restricted to every stride-th grid point (11 arms for stride 10).
Problem toy_subgrid(int stride, const ToySpec& spec = {});

struct HarnessOptions {
    double schedule_p = 2.0;
    SelectOptions select;
    int threads = 0; // 0 = auto (hardware, capped by RELPAC_THREADS)
};

// Calibrated per-arm cost of one draw, measured on cloned samplers with a
// scratch generator so run streams are untouched.
using SamplerCostModel = std::vector<double>;
SamplerCostModel calibrate_sampler_cost(const ArmSet& arms);

struct RunReport {
    std::string algorithm;
    std::uint64_t seed = 0;
    double tau = 0.0;
    double lambda = 0.0;
    double schedule_p = 2.0;
    int chosen_index = -1;
    double chosen_xi = 0.0;
    std::int64_t total_samples = 0;
    double wall_other_s = 0.0; // measured non-sampling monotonic time
    bool success = false;      // oracle-checked relative PAC event
    std::int64_t iterations = 0;
    std::string error;         // empty on success; "cap_exceeded" etc. otherwise
    SelectionResult result;    // full per-arm final state
};

// Executes one seeded run. success uses oracle means only:
//   max_i mean_i - mean_chosen <= tau * |max_i mean_i|.
// For median elimination, eps_abs = tau * |max_i mean_i| is taken from the
// oracle. Algorithm errors are folded into the report's error tag.
RunReport run_once(Algorithm alg, const Problem& problem, double tau, double lambda,
                   const HarnessOptions& opts, std::uint64_t seed,
                   const SamplerCostModel* cost_model = nullptr);

// T = total_samples * t_star + wall_other
double runtime_model(const RunReport& report, double t_star);

struct VerifySummary {
    double success_rate = 0.0;
    double mean_M = 0.0;
    double std_M = 0.0;
    std::vector<RunReport> reports;
};

// reps independent replications; run r uses seed derive_stream(master_seed, r).
VerifySummary verify_pac(Algorithm alg, const Problem& problem, double tau, double lambda,
                         int reps, std::uint64_t master_seed, const HarnessOptions& opts = {});

struct SweepGrid {
    std::vector<double> taus;
    std::vector<double> lambdas;
    int reps = 30;
    Algorithm algorithm = Algorithm::Adaptive;
};

struct SweepRow {
    std::string algorithm;
    double tau;
    double lambda;
    int reps;
    double mean_M;
    double std_M;
    double success_rate;
};

std::vector<SweepRow> sweep(const SweepGrid& grid, const Problem& problem,
                            std::uint64_t master_seed, const HarnessOptions& opts = {});

// CSV emission (UTF-8, header row, comma separated, '.' decimal, %.17g).
void write_runs_csv_header(std::ostream& out);
void write_runs_csv_row(std::ostream& out, const RunReport& report);
void write_sweep_csv_header(std::ostream& out);
void write_sweep_csv_row(std::ostream& out, const SweepRow& row);
void write_profile_csv_header(std::ostream& out);
void write_profile_csv(std::ostream& out, const Problem& problem, const RunReport& report);

} // namespace relpac
