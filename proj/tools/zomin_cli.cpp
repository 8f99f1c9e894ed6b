// Batch front-end: hyperparameter calculators (`tune`), experiment runs
// (`run`), structural/statistical checkers (`check`) and the bundled
// experiment suite (`bench`).

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "zomin/checkers.hpp"
#include "zomin/harness/experiment.hpp"
#include "zomin/theory.hpp"

namespace fs = std::filesystem;
using namespace zomin;

namespace {

ProblemConstants load_constants(const std::string& path) {
    const auto cfg = KeyValueConfig::parse_file(path);
    ProblemConstants c;
    c.L1 = cfg.get_double("L1", c.L1);
    c.gamma = cfg.get_double("gamma", c.gamma);
    c.beta = cfg.get_double("beta", c.beta);
    c.n = cfg.get_long("n", c.n);
    c.R = cfg.get_double("R", c.R);
    c.dX = cfg.get_double("dX", c.dX);
    c.sigma = cfg.get_double("sigma", c.sigma);
    c.h = cfg.get_double("h", c.h);
    c.mu = cfg.get_double("mu", c.mu);
    c.t = cfg.get_long("t", c.t);
    c.eps = cfg.get_double("eps", c.eps);
    cfg.finalize();
    return c;
}

int run_tune(const std::string& regime_name, const std::string& constants_path, double safety) {
    const Regime regime = parse_regime(regime_name);
    ProblemConstants c = load_constants(constants_path);

    const double step = std::isnan(c.h) ? default_step(regime, c, safety) : c.h;
    if (is_strong(regime)) c.h = step;

    std::printf("regime        %s\n", to_string(regime));
    std::printf("step          %s%s\n", format_double(step).c_str(),
                std::isnan(c.h) || c.h == step ? "" : " (from file)");
    const Hyperparameters hp = hyperparameters(regime, c);
    std::printf("mu_max        %s\n", format_double(hp.mu_max).c_str());
    std::printf("N_min         %lld\n", hp.N_min);
    std::printf("t_min         %lld\n", hp.t_min);
    if (!is_constrained(regime) && c.t > 1) {
        std::printf("note          the unconstrained bounds assume a single oracle direction; t=%ld ignored\n",
                    c.t);
    }
    ProblemConstants plugged = c;
    plugged.mu = hp.mu_max;
    plugged.t = std::max<long long>(c.t, hp.t_min);
    std::printf("bound(N_min)  %s\n", format_double(theorem_bound(regime, plugged, hp.N_min)).c_str());
    return 0;
}

void print_summary(const Experiment& exp, const RunSummary& summary) {
    std::printf("experiment    %s (%s, %s seeds=%zu)\n", exp.name.c_str(), exp.method.c_str(),
                exp.problem.name.c_str(), exp.seeds.size());
    std::printf("%-8s %-22s %-22s %-14s %s\n", "seed", "final_f", "best_f", "decay_%", "flag");
    for (const auto& r : summary.per_seed) {
        std::printf("%-8llu %-22s %-22s %-14.6g %s\n", static_cast<unsigned long long>(r.seed),
                    format_double(r.final_f).c_str(), format_double(r.best_f).c_str(), r.decay,
                    r.diverged ? "diverged" : "");
    }
    std::printf("mean     %-22s %-22s %-14.6g (over all runs)\n",
                format_double(summary.mean.final_f).c_str(),
                format_double(summary.mean.best_f).c_str(), summary.mean.decay);
    std::printf("stddev   %-22s %-22s %-14.6g\n", format_double(summary.stddev.final_f).c_str(),
                format_double(summary.stddev.best_f).c_str(), summary.stddev.decay);
    if (summary.converged_count != static_cast<long>(summary.per_seed.size())) {
        std::printf("mean*    %-22s %-22s %-14.6g (converged runs only: %ld/%zu)\n",
                    format_double(summary.mean_converged.final_f).c_str(),
                    format_double(summary.mean_converged.best_f).c_str(),
                    summary.mean_converged.decay, summary.converged_count, summary.per_seed.size());
    }
    std::printf("output        %s\n", exp.output_dir.c_str());
}

int run_run(const std::string& config_path) {
    const Experiment exp = build_experiment(KeyValueConfig::parse_file(config_path));
    const RunSummary summary = run_experiment(exp);
    print_summary(exp, summary);
    return 0;
}

Vector reference_point(const KeyValueConfig& cfg, const Problem& problem) {
    const std::string spec = cfg.get_string("xstar", "optimum");
    if (spec == "optimum") {
        if (!problem.optimum) {
            throw std::runtime_error(cfg.source() + ": key 'xstar': problem declares no optimum");
        }
        return problem.optimum->point;
    }
    if (spec == "zeros") return Vector::Zero(problem.dim);
    if (spec == "ones") return Vector::Ones(problem.dim);
    throw std::runtime_error(cfg.source() + ": key 'xstar': expected optimum, zeros or ones");
}

int print_report(const CheckReport& report) {
    std::printf("passed           %s\n", report.passed ? "yes" : "no");
    std::printf("trials           %ld\n", report.trials);
    std::printf("worst_violation  %s (slack %s)\n", format_double(report.worst_violation).c_str(),
                format_double(report.slack).c_str());
    for (const auto& s : report.skipped) std::printf("skipped          %s\n", s.c_str());
    if (report.witness) {
        std::printf("witness         ");
        for (Eigen::Index i = 0; i < report.witness->size(); ++i) {
            std::printf(" %s", format_double((*report.witness)[i]).c_str());
        }
        std::printf("\n");
    }
    return report.passed ? 0 : 1;
}

int run_check(const std::string& checker, const std::string& config_path) {
    const auto cfg = KeyValueConfig::parse_file(config_path);
    ProblemBundle bundle = build_problem(cfg);
    const Problem& problem = bundle.problem;
    RandomStream stream = make_stream(cfg.get_long("seed", 0));

    if (checker == "quasar" || checker == "proximal-quasar") {
        const double gamma = cfg.get_double("gamma");
        const double beta = cfg.get_double("beta", 0.0);
        const long trials = cfg.get_long("trials", 10000);
        const SamplingBox box = SamplingBox::cube(problem.dim, cfg.get_double("box.lo"),
                                                  cfg.get_double("box.hi"));
        const Vector xstar = reference_point(cfg, problem);
        CheckReport report;
        if (checker == "quasar") {
            report = check_quasar_convexity(problem, gamma, beta, xstar, box, trials, stream);
        } else {
            FeasibleSet set = bundle.paired_set ? *bundle.paired_set : FeasibleSet::whole_space();
            if (cfg.has("set")) set = parse_feasible_set(cfg, problem.dim);
            const double a = cfg.get_double("a", 1.0);
            report = check_proximal_quasar_convexity(problem, set, gamma, beta, a, xstar, box,
                                                     trials, stream);
        }
        cfg.finalize();
        return print_report(report);
    }
    if (checker == "oracle-stats") {
        SmoothingConfig smoothing{cfg.get_double("mu", 1e-4), cfg.get_long("batch", 1)};
        const long samples = cfg.get_long("samples", 30000);
        Vector x;
        const std::string at = cfg.get_string("x", "optimum");
        if (at == "optimum" && problem.optimum) {
            x = problem.optimum->point;
        } else if (at == "zeros" || (at == "optimum" && !problem.optimum)) {
            x = Vector::Zero(problem.dim);
        } else if (at == "ones") {
            x = Vector::Ones(problem.dim);
        } else {
            throw std::runtime_error(cfg.source() + ": key 'x': expected optimum, zeros or ones");
        }
        const CheckReport report = check_oracle_statistics(problem, x, smoothing, samples, stream);
        cfg.finalize();
        return print_report(report);
    }
    std::fprintf(stderr, "unknown checker '%s' (expected quasar, proximal-quasar, oracle-stats)\n",
                 checker.c_str());
    return 2;
}

int run_bench(const std::string& suite_dir) {
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(suite_dir)) {
        if (entry.path().extension() == ".cfg") configs.push_back(entry.path());
    }
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) {
        std::fprintf(stderr, "no .cfg files under %s\n", suite_dir.c_str());
        return 2;
    }
    int failures = 0;
    for (const auto& path : configs) {
        try {
            const Experiment exp = build_experiment(KeyValueConfig::parse_file(path.string()));
            const RunSummary summary = run_experiment(exp);
            std::printf("%-36s mean final f %-22s (%zu seeds%s)\n", path.filename().c_str(),
                        format_double(summary.mean.final_f).c_str(), summary.per_seed.size(),
                        summary.converged_count == static_cast<long>(summary.per_seed.size())
                            ? ""
                            : ", divergence flagged");
        } catch (const std::exception& e) {
            std::printf("%-36s FAILED: %s\n", path.filename().c_str(), e.what());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeroth-order quasar-convex optimisation toolkit"};
    app.require_subcommand(1);

    std::string regime, constants_path, config_path, checker, suite_dir;
    double safety = 0.9;

    auto* tune = app.add_subcommand("tune", "hyperparameter and bound calculators");
    tune->add_option("regime", regime,
                     "qc-unconstrained | sqc-unconstrained | sqc-distance | qc-constrained | "
                     "sqc-constrained")
        ->required();
    tune->add_option("--constants", constants_path, "key=value constants file")->required();
    tune->add_option("--safety", safety, "strong-regime step safety factor in (0,1]");

    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", config_path, "experiment config file")->required();

    auto* check = app.add_subcommand("check", "sampler-based property checkers");
    check->add_option("checker", checker, "quasar | proximal-quasar | oracle-stats")->required();
    check->add_option("config", config_path, "checker config file")->required();

    auto* bench = app.add_subcommand("bench", "run every .cfg in a directory");
    bench->add_option("suite", suite_dir, "directory of experiment configs")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tune->parsed()) return run_tune(regime, constants_path, safety);
        if (run->parsed()) return run_run(config_path);
        if (check->parsed()) return run_check(checker, config_path);
        if (bench->parsed()) return run_bench(suite_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
