#pragma once

#include <filesystem>
#include <iomanip>

#include "elsc/config.hpp"
#include "elsc/io.hpp"
#include "elsc/metrics.hpp"
#include "elsc/noise.hpp"
#include "elsc/version.hpp"

namespace elsc {

inline std::string provenance_line(const ExperimentConfig& cfg) {
    return std::string("# ") + kToolName + " " + kVersion + " config=" + config_hash(cfg);
}

inline std::ofstream open_csv(const std::string& path, const ExperimentConfig& cfg,
                              const std::string& header) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.precision(17);
    os << provenance_line(cfg) << "\n" << header << "\n";
    return os;
}

inline MatrixLoad config_load(const ExperimentConfig& cfg, const GridSpec& g) {
    if (cfg.load == "custom-samples") {
        MatrixLoad q = read_matrix_load(cfg.load_file);
        if (q.grid != g) throw ConfigError("custom-samples grid does not match the configured grid");
        return q;
    }
    std::array<double, 4> w = cfg.pattern_weights;
    if (cfg.pattern == "diagonal") w = {cfg.pattern_weights[0], cfg.pattern_weights[1], 0.0, 0.0};
    LoadSpec spec{cfg.load, cfg.amplitude, pattern_from_name(cfg.pattern, w), cfg.load_file};
    return make_load(g, spec);
}

inline Regime regime_from_config(const ExperimentConfig& cfg) {
    const LameParams lame = cfg.lame();
    if (cfg.kregime == "p") return Regime::p;
    if (cfg.kregime == "s") return Regime::s;
    return default_regime(lame);
}

inline NoiseModel noise_model_from_config(const ExperimentConfig& cfg) {
    return cfg.noise_model == "global" ? NoiseModel::global : NoiseModel::per_datum;
}

// ---------------------------------------------------------------------------
// CSV mirrors
// ---------------------------------------------------------------------------

inline void write_csv(const std::string& path, const BackscatterDataset& d,
                      const ExperimentConfig& cfg) {
    auto os = open_csv(path, cfg, "j1,j2,vp1_re,vp1_im,vp2_re,vp2_im,vs1_re,vs1_im,vs2_re,vs2_im");
    const int n = d.grid.nodes_per_axis();
    for (int a = 0; a < d.grid.size(); ++a) {
        if (!d.entries[a].ok) continue;
        const BackscatterEntry& e = d.entries[a];
        os << d.grid.centered(a / n) << ',' << d.grid.centered(a % n) << ',' << e.vp.x.real() << ','
           << e.vp.x.imag() << ',' << e.vp.y.real() << ',' << e.vp.y.imag() << ',' << e.vs.x.real()
           << ',' << e.vs.x.imag() << ',' << e.vs.y.real() << ',' << e.vs.y.imag() << '\n';
    }
}

inline void write_csv(const std::string& path, const FixedAngleDataset& d,
                      const ExperimentConfig& cfg) {
    auto os = open_csv(path, cfg,
                       "j1,j2,quad,vth1_re,vth1_im,vth2_re,vth2_im,vpe1_re,vpe1_im,vpe2_re,vpe2_im");
    const int n = d.grid.nodes_per_axis();
    for (int a = 0; a < d.grid.size(); ++a) {
        const FixedAngleEntry& e = d.entries[a];
        if (e.quad >= 0 && !e.ok) continue;
        os << d.grid.centered(a / n) << ',' << d.grid.centered(a % n) << ',' << int(e.quad) << ','
           << e.v_th.x.real() << ',' << e.v_th.x.imag() << ',' << e.v_th.y.real() << ','
           << e.v_th.y.imag() << ',' << e.v_pe.x.real() << ',' << e.v_pe.x.imag() << ','
           << e.v_pe.y.real() << ',' << e.v_pe.y.imag() << '\n';
    }
}

inline void write_field_csv(const std::string& path, const MatrixLoad& q,
                            const ExperimentConfig& cfg) {
    auto os = open_csv(path, cfg,
                       "x1,x2,re11,im11,re12,im12,re21,im21,re22,im22");
    for (int a = 0; a < q.grid.size(); ++a) {
        const Vec2 x = q.grid.node(a);
        os << x.x << ',' << x.y;
        for (int k = 0; k < 4; ++k) os << ',' << q.c[k][a].real() << ',' << q.c[k][a].imag();
        os << '\n';
    }
}

inline void write_field_csv(const std::string& path, const VectorField& v,
                            const ExperimentConfig& cfg) {
    auto os = open_csv(path, cfg, "x1,x2,re1,im1,re2,im2");
    for (int a = 0; a < v.grid.size(); ++a) {
        const Vec2 x = v.grid.node(a);
        os << x.x << ',' << x.y << ',' << v.x[a].real() << ',' << v.x[a].imag() << ','
           << v.y[a].real() << ',' << v.y[a].imag() << '\n';
    }
}

// Central section x2 = 0: the true Q11 against the real part of the
// reconstruction's first component.
inline void write_central_section(const std::string& path, const MatrixLoad& reconstruction,
                                  const MatrixLoad* truth, const ExperimentConfig& cfg) {
    auto os = open_csv(path, cfg, "x1,Q11,ReQB11");
    const GridSpec& g = reconstruction.grid;
    const int n = g.nodes_per_axis();
    const int i2 = n / 2;  // x2 = 0 row
    for (int i1 = 0; i1 < n; ++i1) {
        const int a = g.flat(i1, i2);
        const double truth_val = truth ? truth->c[0][a].real() : 0.0;
        os << g.node(a).x << ',' << truth_val << ',' << reconstruction.c[0][a].real() << '\n';
    }
}

// ---------------------------------------------------------------------------
// Command bodies shared by the CLI and the acceptance suite
// ---------------------------------------------------------------------------

struct SynthResult {
    std::string dataset_path;
    std::string csv_path;
};

inline SynthResult run_synth(const ExperimentConfig& cfg, const ProgressFn& progress = {}) {
    validate_config(cfg);
    std::filesystem::create_directories(cfg.outdir);
    const GridSpec g = cfg.grid();
    const MatrixLoad q = config_load(cfg, g);
    const ForwardContext ctx(q, cfg.lame(), cfg.solver, cfg.support_radius);
    SynthResult out;
    if (cfg.kind == "backscatter") {
        BackscatterDataset d = synthesize_backscatter(ctx, progress);
        add_noise(d, cfg.noise, cfg.seed, noise_model_from_config(cfg));
        out.dataset_path = cfg.outdir + "/dataset.elbd";
        out.csv_path = cfg.outdir + "/dataset.csv";
        write_dataset(out.dataset_path, d);
        write_csv(out.csv_path, d, cfg);
    } else {
        FixedAngleDataset d = synthesize_fixed_angle(ctx, cfg.theta, regime_from_config(cfg), progress);
        add_noise(d, cfg.noise, cfg.seed, noise_model_from_config(cfg));
        out.dataset_path = cfg.outdir + "/dataset.elfa";
        out.csv_path = cfg.outdir + "/dataset.csv";
        write_dataset(out.dataset_path, d);
        write_csv(out.csv_path, d, cfg);
    }
    return out;
}

struct BornResult {
    MatrixLoad q_born;
    std::string field_path;
    std::string central_path;
};

inline MatrixLoad born_from_file(const std::string& dataset_path, double support_radius = -1.0) {
    std::ifstream probe(dataset_path, std::ios::binary);
    char magic[4] = {};
    probe.read(magic, 4);
    if (std::memcmp(magic, "ELBD", 4) == 0)
        return born_backscatter(read_backscatter(dataset_path), support_radius);
    if (std::memcmp(magic, "ELFA", 4) == 0)
        return born_fixed_angle(read_fixed_angle(dataset_path), support_radius);
    throw IoError("not a dataset file: " + dataset_path);
}

inline BornResult run_born(const ExperimentConfig& cfg, const std::string& dataset_path,
                           bool with_truth = true) {
    std::filesystem::create_directories(cfg.outdir);
    BornResult out{born_from_file(dataset_path, cfg.support_radius)};
    out.field_path = cfg.outdir + "/born.elsc";
    out.central_path = cfg.outdir + "/born_central.csv";
    write_field(out.field_path, out.q_born);
    write_field_csv(cfg.outdir + "/born.csv", out.q_born, cfg);
    if (with_truth && cfg.load != "custom-samples") {
        const MatrixLoad truth = config_load(cfg, out.q_born.grid);
        write_central_section(out.central_path, out.q_born, &truth, cfg);
    } else {
        write_central_section(out.central_path, out.q_born, nullptr, cfg);
    }
    return out;
}

struct IterateResult {
    IterationResult iteration;
    std::vector<double> errors;  // error(n) when a true load is available
    std::string history_path;
    std::vector<std::string> field_paths;
};

inline IterateResult run_iterate(const ExperimentConfig& cfg, const std::string& dataset_path,
                                 bool use_true_load, const ProgressFn& progress = {}) {
    validate_config(cfg);
    std::filesystem::create_directories(cfg.outdir);

    MatrixLoad q_born = born_from_file(dataset_path, cfg.support_radius);
    // Physical parameters ride with the dataset; the config supplies the rest.
    LameParams lame = cfg.lame();
    Vec2 theta = cfg.theta;
    bool fixed = false;
    Regime regime = Regime::p;
    {
        std::ifstream probe(dataset_path, std::ios::binary);
        char magic[4] = {};
        probe.read(magic, 4);
        if (std::memcmp(magic, "ELFA", 4) == 0) {
            const FixedAngleDataset d = read_fixed_angle(dataset_path);
            lame = d.lame();
            theta = d.theta;
            regime = d.regime;
            fixed = true;
        } else {
            const BackscatterDataset d = read_backscatter(dataset_path);
            lame = d.lame();
        }
    }

    IterateResult out;
    out.iteration = fixed ? iterate_fixed_angle(q_born, theta, regime, cfg.support_radius,
                                                cfg.iterations, lame, cfg.solver, cfg.early_stop,
                                                progress)
                          : iterate_backscatter(q_born, cfg.support_radius, cfg.iterations, lame,
                                                cfg.solver, cfg.early_stop, progress);

    const MatrixLoad* truth = nullptr;
    MatrixLoad truth_storage(q_born.grid);
    if (use_true_load) {
        truth_storage = config_load(cfg, q_born.grid);
        truth = &truth_storage;
    }

    out.history_path = cfg.outdir + "/error_history.csv";
    auto os = open_csv(out.history_path, cfg, truth ? "n,error" : "n,update");
    for (size_t i = 0; i < out.iteration.iterates.size(); ++i) {
        const std::string path =
            cfg.outdir + "/iter_" + std::to_string(i + 1) + ".elsc";
        write_field(path, out.iteration.iterates[i]);
        out.field_paths.push_back(path);
        if (truth) {
            const double err = reconstruction_error(*truth, out.iteration.iterates[i]);
            out.errors.push_back(err);
            os << (i + 1) << ',' << err << '\n';
        } else if (i + 1 < out.iteration.iterates.size()) {
            os << (i + 1) << ',' << out.iteration.update_norms[i] << '\n';
        }
    }
    return out;
}

struct ForwardResult {
    LsSolution solution;
    std::string field_path;
    std::string farfield_path;
};

// One Lippmann-Schwinger solve at energy omega^2 with an incident plane
// p- or s-wave, plus far-field values at the requested receiver angles.
inline ForwardResult run_forward(const ExperimentConfig& cfg, double omega, char wave_kind,
                                 const std::vector<double>& zeta_angles) {
    validate_config(cfg);
    if (!(omega > 0.0)) throw ConfigError("forward: omega must be positive");
    std::filesystem::create_directories(cfg.outdir);
    const GridSpec g = cfg.grid();
    const LameParams lame = cfg.lame();
    const MatrixLoad q = config_load(cfg, g);
    const ForwardContext ctx(q, lame, cfg.solver, cfg.support_radius);
    const PlaneWave ui = (wave_kind == 's')
                             ? plane_s_wave(cfg.theta, perp(cfg.theta), lame.ks(omega))
                             : plane_p_wave(cfg.theta, lame.kp(omega));

    ForwardResult out{solve_lippmann_schwinger(ctx, ui, omega)};
    out.field_path = cfg.outdir + "/scattered.elsc";
    write_field(out.field_path, out.solution.v);
    write_field_csv(cfg.outdir + "/scattered.csv", out.solution.v, cfg);

    out.farfield_path = cfg.outdir + "/farfield.csv";
    auto os = open_csv(out.farfield_path, cfg,
                       "zeta_angle,branch,v1_re,v1_im,v2_re,v2_im");
    for (const double ang : zeta_angles) {
        const Vec2 zeta{std::cos(ang), std::sin(ang)};
        for (const Branch br : {Branch::p, Branch::s}) {
            const CVec2 ff = far_field(ctx.Q, ui, out.solution.v, br, zeta, lame, omega);
            os << ang << ',' << (br == Branch::p ? 'p' : 's') << ',' << ff.x.real() << ','
               << ff.x.imag() << ',' << ff.y.real() << ',' << ff.y.imag() << '\n';
        }
    }
    return out;
}

}  // namespace elsc
