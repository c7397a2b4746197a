// Command-line surface: forward solves, dataset synthesis, Born inversion,
// iterative refinement, and the reference-oracle validation table.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "elsc/experiment.hpp"
#include "elsc/oracle/validate.hpp"
#include "elsc/version.hpp"

namespace {

using namespace elsc;

struct CommonArgs {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// Every config key doubles as a command-line flag; flags win over the file.
void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "key = value config file");
    static const std::vector<std::string> keys = {
        "lambda", "mu", "R", "N", "load", "amplitude", "pattern", "pattern_weights",
        "load_file", "kind", "theta", "kregime", "noise", "noise_model", "seed",
        "iterations", "early_stop", "support_radius", "tol", "max_iter", "pad_factor",
        "restart", "oversample", "linearize", "threads", "half_lattice", "outdir"};
    for (const std::string& key : keys) {
        cmd->add_option_function<std::string>(
            "--" + key, [&args, key](const std::string& v) { args.overrides.emplace_back(key, v); },
            "override config key '" + key + "'");
    }
}

ExperimentConfig build_config(const CommonArgs& args) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        for (const auto& [k, v] : parse_config_file(args.config_path)) apply_config_entry(cfg, k, v);
    }
    for (const auto& [k, v] : args.overrides) apply_config_entry(cfg, k, v);
    validate_config(cfg);
    return cfg;
}

ProgressFn stderr_progress(const std::string& label) {
    auto last = std::make_shared<std::atomic<int>>(-1);
    return [label, last](int done, int total) {
        const int pct = total > 0 ? 100 * done / total : 100;
        int prev = last->load();
        if (pct / 5 > prev / 5 && last->compare_exchange_strong(prev, pct))
            std::fprintf(stderr, "%s: %d%% (%d/%d)\n", label.c_str(), pct, done, total);
    };
}

int cmd_forward(const CommonArgs& args, double omega, const std::string& wave,
                std::vector<double> zeta_angles) {
    const ExperimentConfig cfg = build_config(args);
    if (zeta_angles.empty()) zeta_angles = {M_PI};  // backscattering direction for theta=(1,0)
    const ForwardResult r = run_forward(cfg, omega, wave == "s" ? 's' : 'p', zeta_angles);
    std::printf("scattered field: %s (residual %.3e, %d iterations)\n", r.field_path.c_str(),
                r.solution.residual, r.solution.iterations);
    std::printf("far-field values: %s\n", r.farfield_path.c_str());
    return 0;
}

int cmd_synth(const CommonArgs& args) {
    const ExperimentConfig cfg = build_config(args);
    const SynthResult r = run_synth(cfg, stderr_progress("synth"));
    std::printf("dataset: %s\ncsv: %s\n", r.dataset_path.c_str(), r.csv_path.c_str());
    return 0;
}

int cmd_born(const CommonArgs& args, std::string data_path) {
    const ExperimentConfig cfg = build_config(args);
    if (data_path.empty()) throw ConfigError("born: --data is required");
    const BornResult r = run_born(cfg, data_path);
    std::printf("born field: %s\ncentral section: %s\n", r.field_path.c_str(),
                r.central_path.c_str());
    return 0;
}

int cmd_iterate(const CommonArgs& args, std::string data_path, bool use_true_load) {
    const ExperimentConfig cfg = build_config(args);
    if (data_path.empty()) throw ConfigError("iterate: --data is required");
    const IterateResult r = run_iterate(cfg, data_path, use_true_load, stderr_progress("iterate"));
    for (const double e : r.errors)
        if (!std::isfinite(e)) throw SolverError("iterate: non-finite error(n)", e);
    for (const double u : r.iteration.update_norms)
        if (!std::isfinite(u)) throw SolverError("iterate: non-finite update norm", u);
    std::printf("iterates: %zu fields under %s\nhistory: %s\n", r.field_paths.size(),
                cfg.outdir.c_str(), r.history_path.c_str());
    if (r.iteration.failed) {
        std::fprintf(stderr, "iteration stopped early: %s\n", r.iteration.failure.c_str());
        return 2;
    }
    return 0;
}

int cmd_validate(const CommonArgs& args) {
    const ExperimentConfig cfg = build_config(args);
    std::filesystem::create_directories(cfg.outdir);
    const std::vector<oracle::CheckResult> results = oracle::run_validation();
    auto os = open_csv(cfg.outdir + "/validation.csv", cfg, "check,status,detail");
    bool all = true;
    std::printf("%-28s %-6s %s\n", "check", "status", "detail");
    for (const auto& r : results) {
        std::printf("%-28s %-6s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
        os << r.name << ',' << (r.pass ? "PASS" : "FAIL") << ',' << r.detail << '\n';
        all = all && r.pass;
    }
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(elsc::kToolName) +
                 " - elastic scattering Born reconstruction toolkit (v" + elsc::kVersion + ")"};
    app.require_subcommand(1);

    CommonArgs fwd_args, synth_args, born_args, iter_args, val_args;
    double omega = 1.0;
    std::string wave = "p";
    std::vector<double> zeta_angles;
    std::string born_data, iter_data;
    bool use_true_load = false;

    CLI::App* fwd = app.add_subcommand("forward", "one Lippmann-Schwinger solve + far fields");
    attach_common(fwd, fwd_args);
    fwd->add_option("--omega", omega, "frequency of the solve (energy omega^2)")->required();
    fwd->add_option("--wave", wave, "incident wave kind: p | s")
        ->check(CLI::IsMember({"p", "s"}));
    fwd->add_option("--zeta", zeta_angles, "receiver angles in radians");

    CLI::App* synth = app.add_subcommand("synth", "synthesize a scattering dataset");
    attach_common(synth, synth_args);

    CLI::App* born = app.add_subcommand("born", "Born approximation from a dataset");
    attach_common(born, born_args);
    born->add_option("--data", born_data, "dataset file (.elbd or .elfa)")->required();

    CLI::App* iter = app.add_subcommand("iterate", "Born approximation + M refinement steps");
    attach_common(iter, iter_args);
    iter->add_option("--data", iter_data, "dataset file (.elbd or .elfa)")->required();
    iter->add_flag("--true-load", use_true_load,
                   "score iterates against the configured load (error(n) column)");

    CLI::App* val = app.add_subcommand("validate", "run the reference-oracle checks");
    attach_common(val, val_args);

    try {
        app.parse(argc, argv);
        if (fwd->parsed()) return cmd_forward(fwd_args, omega, wave, zeta_angles);
        if (synth->parsed()) return cmd_synth(synth_args);
        if (born->parsed()) return cmd_born(born_args, born_data);
        if (iter->parsed()) return cmd_iterate(iter_args, iter_data, use_true_load);
        if (val->parsed()) return cmd_validate(val_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const elsc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const elsc::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const elsc::SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
