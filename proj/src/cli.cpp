#include "relpac/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "relpac/estimator.hpp"
#include "relpac/harness.hpp"
#include "relpac/problem_file.hpp"

namespace relpac {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Problem resolve_problem(const std::string& spec) {
    if (spec == "toy") return toy_arms();
    return load_problem(spec);
}

Algorithm resolve_algorithm(const std::string& tag) {
    const auto alg = parse_algorithm(tag);
    if (!alg) throw ConfigError("unknown algorithm tag '" + tag + "' (expected nonadaptive|adaptive|ucbv|me)");
    return *alg;
}

// Writes to --out when given, otherwise to the CLI stdout stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

struct CommonRunFlags {
    std::string alg;
    double tau = 0.0;
    double lambda = 0.0;
    double p = 2.0;
    std::uint64_t seed = 0;
    std::int64_t cap = 1'000'000'000;
    std::int64_t batch = 1;
    bool positive_means = false;
    std::string problem = "toy";
    std::string out;
};

void add_run_flags(CLI::App* cmd, CommonRunFlags& f, bool with_tau = true) {
    cmd->add_option("--alg", f.alg, "algorithm: nonadaptive|adaptive|ucbv|me")->required();
    if (with_tau) {
        cmd->add_option("--tau", f.tau, "relative precision target in (0,1)")->required();
        cmd->add_option("--lambda", f.lambda, "failure probability in (0,1)")->required();
    }
    cmd->add_option("--p", f.p, "schedule exponent (> 1)");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--cap", f.cap, "per-arm sample cap");
    cmd->add_option("--batch", f.batch, "samples per active arm per iteration (adaptive)");
    cmd->add_flag("--positive-means", f.positive_means, "use the tau/(2-tau) threshold");
    cmd->add_option("--problem", f.problem, "'toy' or a problem file path");
    cmd->add_option("--out", f.out, "write CSV to this file instead of stdout");
}

void check_domain(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

HarnessOptions make_opts(const CommonRunFlags& f) {
    check_domain(f.tau > 0.0 && f.tau < 1.0, "--tau must lie in (0,1)");
    check_domain(f.lambda > 0.0 && f.lambda < 1.0, "--lambda must lie in (0,1)");
    check_domain(f.p > 1.0, "--p must exceed 1");
    check_domain(f.cap >= 1, "--cap must be >= 1");
    check_domain(f.batch >= 1, "--batch must be >= 1");
    HarnessOptions opts;
    opts.schedule_p = f.p;
    opts.select.cap = f.cap;
    opts.select.batch_size = f.batch;
    opts.select.positive_means = f.positive_means;
    return opts;
}

int finish_run_report(const RunReport& rep, std::ostream& err) {
    if (rep.error.empty()) return 0;
    err << "error: " << rep.error << "\n";
    return rep.error.rfind("cap_exceeded", 0) == 0 ? 3 : 2;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"PAC best-arm selection in relative precision for costly-sampling bandits"};
    app.require_subcommand(1);

    // --- estimate ---------------------------------------------------------
    auto* cmd_est = app.add_subcommand("estimate", "adaptive-stopping mean estimate for one arm");
    struct {
        double epsilon = 0.0, delta = 0.0, p = 2.0;
        std::uint64_t seed = 0;
        std::int64_t cap = 1'000'000'000;
        int arm = 0;
        std::string problem = "toy";
    } est;
    cmd_est->add_option("--epsilon", est.epsilon, "relative precision in (0,1)")->required();
    cmd_est->add_option("--delta", est.delta, "failure probability in (0,1)")->required();
    cmd_est->add_option("--p", est.p, "schedule exponent (> 1)");
    cmd_est->add_option("--seed", est.seed, "master seed");
    cmd_est->add_option("--cap", est.cap, "sample cap");
    cmd_est->add_option("--arm", est.arm, "arm index within the problem");
    cmd_est->add_option("--problem", est.problem, "'toy' or a problem file path");

    // --- bound ------------------------------------------------------------
    auto* cmd_bound = app.add_subcommand("bound", "complexity bound on the stopping time");
    struct {
        double mu = 0.0, sigma2 = 0.0, epsilon = 0.0, delta = 0.0, p = 2.0, a = 0.0, b = 0.0;
    } bnd;
    cmd_bound->add_option("--mu", bnd.mu)->required();
    cmd_bound->add_option("--sigma2", bnd.sigma2)->required();
    cmd_bound->add_option("--epsilon", bnd.epsilon)->required();
    cmd_bound->add_option("--delta", bnd.delta)->required();
    cmd_bound->add_option("--p", bnd.p);
    cmd_bound->add_option("--a", bnd.a)->required();
    cmd_bound->add_option("--b", bnd.b)->required();

    // --- run / profile ----------------------------------------------------
    auto* cmd_run = app.add_subcommand("run", "one seeded selection run (runs.csv row)");
    CommonRunFlags runf;
    std::optional<double> t_star;
    add_run_flags(cmd_run, runf);
    cmd_run->add_option("--t-star", t_star, "report T = M t* + N on stderr");

    auto* cmd_profile = app.add_subcommand("profile", "per-arm final state of one run (profile.csv)");
    CommonRunFlags prof;
    add_run_flags(cmd_profile, prof);

    // --- verify -----------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "seeded replications with oracle PAC check");
    CommonRunFlags verf;
    int verify_reps = 200;
    add_run_flags(cmd_verify, verf);
    cmd_verify->add_option("--reps", verify_reps, "number of replications");

    // --- sweep ------------------------------------------------------------
    auto* cmd_sweep = app.add_subcommand("sweep", "tau/lambda grid of replication batches (sweep.csv)");
    CommonRunFlags swf;
    std::vector<double> sweep_taus, sweep_lambdas;
    int sweep_reps = 30;
    add_run_flags(cmd_sweep, swf, /*with_tau=*/false);
    cmd_sweep->add_option("--taus", sweep_taus, "comma-separated tau values")
        ->required()->delimiter(',');
    cmd_sweep->add_option("--lambdas", sweep_lambdas, "comma-separated lambda values")
        ->required()->delimiter(',');
    cmd_sweep->add_option("--reps", sweep_reps, "replications per cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.get_name() << ": see --help\n";
        return 2;
    }

    try {
        if (cmd_est->parsed()) {
            check_domain(est.epsilon > 0.0 && est.epsilon < 1.0, "--epsilon must lie in (0,1)");
            check_domain(est.delta > 0.0 && est.delta < 1.0, "--delta must lie in (0,1)");
            check_domain(est.p > 1.0, "--p must exceed 1");
            check_domain(est.cap >= 1, "--cap must be >= 1");
            const Problem problem = resolve_problem(est.problem);
            check_domain(est.arm >= 0 && est.arm < static_cast<int>(problem.arms.size()),
                         "--arm out of range");
            const Schedule schedule(est.delta, est.p);
            Xoshiro256 rng(derive_stream(est.seed, est.arm));
            const Estimate e =
                estimate_mean(problem.arms.arms[est.arm], est.epsilon, schedule, est.cap, rng);
            out << "value=" << fmt17(e.value) << "\n"
                << "stopping_time=" << e.stopping_time << "\n"
                << "epsilon=" << fmt17(e.epsilon_used) << "\n"
                << "achieved_half_width=" << fmt17(e.achieved_half_width) << "\n"
                << "sign=" << e.sign << "\n"
                << "mean_at_stop=" << fmt17(e.mean_at_stop) << "\n";
            return 0;
        }

        if (cmd_bound->parsed()) {
            check_domain(bnd.epsilon > 0.0 && bnd.epsilon < 1.0, "--epsilon must lie in (0,1)");
            check_domain(bnd.delta > 0.0 && bnd.delta <= 0.75, "--delta must lie in (0, 3/4]");
            check_domain(bnd.p > 1.0, "--p must exceed 1");
            check_domain(bnd.mu != 0.0, "--mu must be nonzero");
            check_domain(bnd.sigma2 >= 0.0, "--sigma2 must be nonnegative");
            check_domain(bnd.a < bnd.b, "requires --a < --b");
            const Schedule schedule(bnd.delta, bnd.p);
            const ComplexityBound cb =
                complexity_bound(bnd.mu, bnd.sigma2, bnd.epsilon, schedule, Range(bnd.a, bnd.b));
            out << "nu=" << fmt6(cb.nu) << "\n"
                << "gamma=" << fmt6(cb.gamma) << "\n"
                << "K=" << cb.K << "\n"
                << "expected_M_bound=" << fmt6(cb.expected_M_bound) << "\n"
                << "tail_probability=" << fmt6(cb.tail_probability) << "\n";
            return 0;
        }

        if (cmd_run->parsed()) {
            const HarnessOptions opts = make_opts(runf);
            check_domain(!t_star || *t_star >= 0.0, "--t-star must be >= 0");
            const Problem problem = resolve_problem(runf.problem);
            const Algorithm alg = resolve_algorithm(runf.alg);
            const RunReport rep = run_once(alg, problem, runf.tau, runf.lambda, opts, runf.seed);
            Sink sink(runf.out, out);
            write_runs_csv_header(sink.stream());
            write_runs_csv_row(sink.stream(), rep);
            if (t_star && rep.error.empty())
                err << "runtime_s=" << fmt17(runtime_model(rep, *t_star)) << "\n";
            return finish_run_report(rep, err);
        }

        if (cmd_profile->parsed()) {
            const HarnessOptions opts = make_opts(prof);
            const Problem problem = resolve_problem(prof.problem);
            const Algorithm alg = resolve_algorithm(prof.alg);
            const RunReport rep = run_once(alg, problem, prof.tau, prof.lambda, opts, prof.seed);
            if (rep.error.empty()) {
                Sink sink(prof.out, out);
                write_profile_csv_header(sink.stream());
                write_profile_csv(sink.stream(), problem, rep);
            }
            return finish_run_report(rep, err);
        }

        if (cmd_verify->parsed()) {
            const HarnessOptions opts = make_opts(verf);
            check_domain(verify_reps >= 1, "--reps must be >= 1");
            const Problem problem = resolve_problem(verf.problem);
            const Algorithm alg = resolve_algorithm(verf.alg);
            const VerifySummary v =
                verify_pac(alg, problem, verf.tau, verf.lambda, verify_reps, verf.seed, opts);
            Sink sink(verf.out, out);
            write_sweep_csv_header(sink.stream());
            write_sweep_csv_row(sink.stream(),
                                SweepRow{verf.alg, verf.tau, verf.lambda, verify_reps,
                                         v.mean_M, v.std_M, v.success_rate});
            return 0;
        }

        if (cmd_sweep->parsed()) {
            swf.tau = 0.5;    // placate the shared domain checks; the grid
            swf.lambda = 0.5; // supplies the real values
            const HarnessOptions opts = make_opts(swf);
            check_domain(sweep_reps >= 1, "--reps must be >= 1");
            for (double t : sweep_taus) check_domain(t > 0.0 && t < 1.0, "--taus values must lie in (0,1)");
            for (double l : sweep_lambdas)
                check_domain(l > 0.0 && l < 1.0, "--lambdas values must lie in (0,1)");
            const Problem problem = resolve_problem(swf.problem);
            SweepGrid grid;
            grid.taus = sweep_taus;
            grid.lambdas = sweep_lambdas;
            grid.reps = sweep_reps;
            grid.algorithm = resolve_algorithm(swf.alg);
            const auto rows = sweep(grid, problem, swf.seed, opts);
            Sink sink(swf.out, out);
            write_sweep_csv_header(sink.stream());
            for (const auto& row : rows) write_sweep_csv_row(sink.stream(), row);
            return 0;
        }
    } catch (const CapExceeded& e) {
        err << "error: sampling cap " << e.cap << " exceeded"
            << (e.arm_index >= 0 ? " on arm " + std::to_string(e.arm_index) : "") << "\n";
        return 3;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace relpac
