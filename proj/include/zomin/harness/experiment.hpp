#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "zomin/harness/config.hpp"
#include "zomin/harness/csv.hpp"
#include "zomin/problems/bandit.hpp"
#include "zomin/problems/glm.hpp"
#include "zomin/problems/hard_quasar.hpp"
#include "zomin/problems/ldsi.hpp"
#include "zomin/problems/quadratic.hpp"
#include "zomin/problems/radial_angular.hpp"
#include "zomin/problems/svm.hpp"
#include "zomin/solvers.hpp"

namespace zomin {

/// Progress metric 100 * (1 - f(x_N) / f(x_0)); rejects runs whose initial
/// objective is exactly zero.
inline double decay_rate(const Trace& trace) {
    if (trace.records.empty()) throw std::invalid_argument("decay_rate: empty trace");
    const double f0 = trace.records.front().f;
    if (f0 == 0.0) throw std::invalid_argument("decay_rate: f(x_0) is zero");
    return 100.0 * (1.0 - trace.records.back().f / f0);
}

struct SeedResult {
    std::uint64_t seed = 0;
    double final_f = 0.0;
    double best_f = 0.0;
    double decay = 0.0;
    double walltime_ms = 0.0;
    bool diverged = false;
};

struct Aggregate {
    double final_f = 0.0;
    double best_f = 0.0;
    double decay = 0.0;
    double walltime_ms = 0.0;
};

/// Cross-seed result table. Diverged runs are flagged, never dropped:
/// aggregates are reported both over all runs and over the converged subset.
struct RunSummary {
    std::vector<SeedResult> per_seed;
    Aggregate mean, stddev;
    Aggregate mean_converged, stddev_converged;
    long converged_count = 0;

    double mean_final_f() const { return mean.final_f; }
};

/// A fully constructed experiment: the problem, its feasible set, a per-seed
/// initial point and the solver settings shared by all seeds.
struct Experiment {
    std::string name;
    std::string method;  // "rm" or "gd"
    Problem problem;
    FeasibleSet set = FeasibleSet::whole_space();
    std::function<Vector(std::uint64_t)> initial_point;
    RunConfig run;  // run.seed is overwritten per seed
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    bool record_walltime = false;
};

/// Origin-centred feasible set from the 'set' / 'set.*' keys.
inline FeasibleSet parse_feasible_set(const KeyValueConfig& cfg, Eigen::Index dim) {
    const std::string kind = cfg.get_string("set", "none");
    if (kind == "none") return FeasibleSet::whole_space();
    if (kind == "l1_ball") {
        return FeasibleSet::l1_ball(Vector::Zero(dim), cfg.get_double("set.radius"));
    }
    if (kind == "l2_ball") {
        return FeasibleSet::l2_ball(Vector::Zero(dim), cfg.get_double("set.radius"));
    }
    if (kind == "box") {
        const double lo = cfg.get_double("set.lower");
        const double hi = cfg.get_double("set.upper");
        return FeasibleSet::box(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
    }
    throw std::runtime_error(cfg.source() + ": key 'set': unknown set kind '" + kind + "'");
}

namespace detail {

inline StepRule parse_step(const KeyValueConfig& cfg) {
    const std::string kind = cfg.get_string("step", "fixed");
    if (kind == "fixed") return StepRule::fixed(cfg.get_double("step.h"));
    if (kind == "armijo") {
        ArmijoParams p;
        p.h0 = cfg.get_double("step.h0", 1.0);
        p.shrink = cfg.get_double("step.shrink", 0.5);
        p.slope = cfg.get_double("step.slope", 1e-4);
        p.max_backtracks = static_cast<int>(cfg.get_long("step.max_backtracks", 30));
        return StepRule::backtracking(p);
    }
    throw std::runtime_error(cfg.source() + ": key 'step': unknown step rule '" + kind + "'");
}

inline std::vector<std::uint64_t> seeds_with_env_override(const KeyValueConfig& cfg) {
    const auto from_config = cfg.get_seed_list("seeds");
    if (const char* env = std::getenv("ZOMIN_SEEDS")) {
        const auto parsed = KeyValueConfig::parse_text(std::string("seeds = ") + env, "ZOMIN_SEEDS");
        return parsed.get_seed_list("seeds");
    }
    return from_config;
}

}  // namespace detail

/// Problem built from the 'problem.*' keys of a config, together with a
/// paired constraint set (radial_angular carries its own l1 ball) or a
/// problem-specific initial-point rule (the identification problems start
/// from perturbed true parameters) where those apply.
struct ProblemBundle {
    Problem problem;
    std::optional<FeasibleSet> paired_set;
    std::function<Vector(std::uint64_t)> default_init;
    double default_init_scale = 1.0;
};

inline ProblemBundle build_problem(const KeyValueConfig& cfg) {
    ProblemBundle out;
    const std::string kind = cfg.get_string("problem");

    if (kind == "quadratic") {
        out.problem = problems::quadratic(static_cast<int>(cfg.get_long("problem.dim")),
                                          cfg.get_double("problem.curvature", 1.0));
    } else if (kind == "hard_quasar") {
        out.problem = problems::hard_quasar(static_cast<int>(cfg.get_long("problem.T")),
                                            cfg.get_double("problem.sigma"));
    } else if (kind == "glm") {
        const auto link = problems::parse_link(cfg.get_string("problem.link"),
                                               cfg.get_double("problem.alpha", 0.5));
        RandomStream data_stream = make_stream(cfg.get_long("problem.data_seed", 0));
        const auto gen = problems::make_glm_dataset(static_cast<int>(cfg.get_long("problem.samples")),
                                                    static_cast<int>(cfg.get_long("problem.dim")),
                                                    link, data_stream);
        out.problem = problems::glm(gen.data, link);
        out.default_init_scale = 1e-2;
    } else if (kind == "svm") {
        LabeledDataset data;
        if (cfg.has("problem.path")) {
            data = load_labeled_csv(cfg.get_string("problem.path"), CsvSchema::wdbc());
        } else {
            RandomStream data_stream = make_stream(cfg.get_long("problem.data_seed", 0));
            data = make_margin_dataset(static_cast<int>(cfg.get_long("problem.samples")),
                                       static_cast<int>(cfg.get_long("problem.dim")), data_stream);
        }
        if (cfg.get_bool("problem.standardize", false)) data = standardize_features(data);
        out.problem = problems::smoothed_hinge_svm(data, cfg.get_double("problem.alpha", 0.5));
    } else if (kind == "ldsi_mass_spring") {
        const auto sys = std::make_shared<problems::LtiSystem>(problems::mass_spring_chain());
        RandomStream data_stream = make_stream(cfg.get_long("problem.data_seed", 0));
        const auto data = problems::simulate_sequences(
            *sys, static_cast<int>(cfg.get_long("problem.sequences")), cfg.get_long("problem.horizon"),
            cfg.get_long("problem.warmup"), cfg.get_double("problem.noise_std", 1e-2), data_stream,
            cfg.get_double("problem.input_std", 1.0));
        out.problem = problems::ldsi(data, sys->B);
        const double scale = cfg.get_double("problem.init_scale", 0.02);
        out.default_init = [sys, scale](std::uint64_t seed) {
            RandomStream s = derive_stream(seed, 1);
            return problems::perturbed_parameters(*sys, scale, s);
        };
    } else if (kind == "bandit") {
        RandomStream reward_stream = make_stream(cfg.get_long("problem.rewards_seed", 0));
        const long K = cfg.get_long("problem.actions", 20);
        Vector rewards(K);
        for (long i = 0; i < K; ++i) rewards[i] = reward_stream.uniform(0.0, 1.0);
        out.problem = problems::bandit(rewards, cfg.get_double("problem.tau")).problem;
    } else if (kind == "radial_angular") {
        RandomStream coeff_stream = make_stream(cfg.get_long("problem.coeff_seed", 0));
        auto built = problems::radial_angular(static_cast<int>(cfg.get_long("problem.dim")),
                                              cfg.get_double("problem.rho", 20.0), coeff_stream);
        out.problem = std::move(built.problem);
        out.paired_set = std::move(built.set);
    } else {
        throw std::runtime_error(cfg.source() + ": key 'problem': unknown problem '" + kind + "'");
    }
    return out;
}

/// Builds the problem, set and per-seed initial-point rule described by a
/// config file. Unknown keys are rejected. The ZOMIN_SEEDS environment
/// variable (comma-separated) overrides the config's seed list.
inline Experiment build_experiment(const KeyValueConfig& cfg) {
    Experiment exp;
    exp.name = cfg.get_string("name");
    exp.method = cfg.get_string("method");
    if (exp.method != "rm" && exp.method != "gd") {
        throw std::runtime_error(cfg.source() + ": key 'method': expected rm or gd");
    }

    ProblemBundle bundle = build_problem(cfg);
    exp.problem = std::move(bundle.problem);
    if (bundle.paired_set) exp.set = *bundle.paired_set;
    if (cfg.has("set")) exp.set = parse_feasible_set(cfg, exp.problem.dim);
    exp.initial_point = bundle.default_init;

    const std::string init = cfg.get_string("init", bundle.default_init ? "perturb" : "normal");
    const double init_scale = cfg.get_double("init.scale", bundle.default_init_scale);
    if (init == "normal") {
        const Eigen::Index dim = exp.problem.dim;
        const FeasibleSet set = exp.set;
        exp.initial_point = [dim, init_scale, set](std::uint64_t seed) {
            RandomStream s = derive_stream(seed, 1);
            return set.project(init_scale * sample_standard_normal(s, dim));
        };
    } else if (init == "zeros") {
        const Eigen::Index dim = exp.problem.dim;
        exp.initial_point = [dim](std::uint64_t) { return Vector(Vector::Zero(dim)); };
    } else if (init != "perturb") {
        throw std::runtime_error(cfg.source() + ": key 'init': unknown init rule '" + init + "'");
    }
    if (!exp.initial_point) {
        throw std::runtime_error(cfg.source() + ": key 'init': perturb needs a problem that defines it");
    }

    exp.run.iterations = cfg.get_long("iterations");
    exp.run.step = detail::parse_step(cfg);
    if (exp.method == "rm") {
        exp.run.smoothing.mu = cfg.get_double("mu");
        exp.run.smoothing.batch = cfg.get_long("batch", 1);
        exp.run.smoothing.validate();
    }
    exp.seeds = detail::seeds_with_env_override(cfg);
    exp.output_dir = cfg.get_string("output", "results");
    exp.record_walltime = cfg.get_bool("record_walltime", false);
    cfg.finalize();
    return exp;
}

namespace detail {

inline Aggregate aggregate_mean(const std::vector<SeedResult>& rows, bool converged_only) {
    Aggregate m;
    long count = 0;
    for (const auto& r : rows) {
        if (converged_only && r.diverged) continue;
        m.final_f += r.final_f;
        m.best_f += r.best_f;
        m.decay += r.decay;
        m.walltime_ms += r.walltime_ms;
        ++count;
    }
    if (count > 0) {
        m.final_f /= count;
        m.best_f /= count;
        m.decay /= count;
        m.walltime_ms /= count;
    }
    return m;
}

inline Aggregate aggregate_stddev(const std::vector<SeedResult>& rows, const Aggregate& mean,
                                  bool converged_only) {
    Aggregate s;
    long count = 0;
    for (const auto& r : rows) {
        if (converged_only && r.diverged) continue;
        s.final_f += (r.final_f - mean.final_f) * (r.final_f - mean.final_f);
        s.best_f += (r.best_f - mean.best_f) * (r.best_f - mean.best_f);
        s.decay += (r.decay - mean.decay) * (r.decay - mean.decay);
        s.walltime_ms += (r.walltime_ms - mean.walltime_ms) * (r.walltime_ms - mean.walltime_ms);
        ++count;
    }
    if (count > 1) {
        s.final_f = std::sqrt(s.final_f / (count - 1));
        s.best_f = std::sqrt(s.best_f / (count - 1));
        s.decay = std::sqrt(s.decay / (count - 1));
        s.walltime_ms = std::sqrt(s.walltime_ms / (count - 1));
    } else {
        s = Aggregate{};
    }
    return s;
}

inline void write_summary_row(std::ostream& out, const std::string& tag, const Aggregate& a,
                              long diverged) {
    out << tag << ',' << format_double(a.final_f) << ',' << format_double(a.best_f) << ','
        << format_double(a.decay) << ',' << format_double(a.walltime_ms) << ',' << diverged << '\n';
}

}  // namespace detail

inline RunSummary summarize(const std::vector<SeedResult>& rows) {
    RunSummary s;
    s.per_seed = rows;
    s.mean = detail::aggregate_mean(rows, false);
    s.stddev = detail::aggregate_stddev(rows, s.mean, false);
    s.mean_converged = detail::aggregate_mean(rows, true);
    s.stddev_converged = detail::aggregate_stddev(rows, s.mean_converged, true);
    for (const auto& r : rows) {
        if (!r.diverged) ++s.converged_count;
    }
    return s;
}

inline void write_summary_csv(const std::filesystem::path& path, const RunSummary& summary) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write summary file: " + path.string());
    out << "seed,final_f,best_f,decay_rate,walltime_ms,diverged\n";
    for (const auto& r : summary.per_seed) {
        out << r.seed << ',' << format_double(r.final_f) << ',' << format_double(r.best_f) << ','
            << format_double(r.decay) << ',' << format_double(r.walltime_ms) << ','
            << (r.diverged ? 1 : 0) << '\n';
    }
    const long diverged = static_cast<long>(summary.per_seed.size()) - summary.converged_count;
    detail::write_summary_row(out, "mean", summary.mean, diverged);
    detail::write_summary_row(out, "stddev", summary.stddev, diverged);
    detail::write_summary_row(out, "mean_converged", summary.mean_converged, diverged);
    detail::write_summary_row(out, "stddev_converged", summary.stddev_converged, diverged);
}

/// Runs one experiment over all of its seeds, writing one trace CSV per seed
/// and a summary CSV. Fully deterministic given the config (wall-clock
/// columns are zeroed unless record_walltime is set).
inline RunSummary run_experiment(const Experiment& exp) {
    namespace fs = std::filesystem;
    fs::create_directories(exp.output_dir);

    std::vector<SeedResult> rows;
    rows.reserve(exp.seeds.size());
    for (const std::uint64_t seed : exp.seeds) {
        RunConfig run = exp.run;
        run.seed = seed;
        const Vector x0 = exp.initial_point(seed);
        const Trace trace = exp.method == "rm" ? random_min(exp.problem, exp.set, x0, run)
                                               : projected_gd(exp.problem, exp.set, x0, run);

        SeedResult r;
        r.seed = seed;
        r.final_f = trace.final_f();
        r.best_f = trace.best_f();
        r.diverged = trace.failed || !std::isfinite(trace.final_f());
        const double f0 = trace.records.empty() ? 0.0 : trace.records.front().f;
        r.decay = f0 != 0.0 && !trace.records.empty()
                      ? 100.0 * (1.0 - trace.records.back().f / f0)
                      : std::numeric_limits<double>::quiet_NaN();
        r.walltime_ms = exp.record_walltime && !trace.records.empty()
                            ? trace.records.back().elapsed_ms
                            : 0.0;
        rows.push_back(r);

        const fs::path trace_path = fs::path(exp.output_dir) / (exp.name + "_seed" + std::to_string(seed) + ".csv");
        write_trace_csv(trace_path, trace, exp.record_walltime);
    }

    const RunSummary summary = summarize(rows);
    write_summary_csv(fs::path(exp.output_dir) / (exp.name + "_summary.csv"), summary);
    return summary;
}

inline RunSummary run_experiment_file(const std::string& config_path) {
    return run_experiment(build_experiment(KeyValueConfig::parse_file(config_path)));
}

}  // namespace zomin
