// Acceptance suite: one independently runnable criterion per command-line
// selector, each printing a single PASS/FAIL line with its measured numbers.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "elsc/experiment.hpp"
#include "elsc/oracle/born_series.hpp"
#include "elsc/oracle/helmholtz.hpp"
#include "elsc/oracle/validate.hpp"

using namespace elsc;

namespace {

struct Criterion {
    std::string id;
    std::string name;
    std::function<bool(std::string&)> run;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// --------------------------------------------------------------------------
// C1: Ewald geometry over 1e4 random admissible triples.
// --------------------------------------------------------------------------
bool c1_ewald(std::string& detail) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uk(1.0, 5.0);
    double worst_repr = 0.0, worst_angle = 0.0;
    int tested = 0;
    while (tested < 10000) {
        const Vec2 xi{6.0 * u(rng), 6.0 * u(rng)};
        const double ang = M_PI * u(rng);
        const Vec2 theta{std::cos(ang), std::sin(ang)};
        if (norm(xi) < 1e-6 || dot(xi, theta) >= -1e-12) continue;
        const double K = uk(rng);
        const EwaldParams e = ewald_params(xi, theta, K);
        const double d1 = norm(e.omega1 * (e.zeta1 - theta) - xi) / norm(xi);
        const double d2 = norm(e.omega2 * (K * e.zeta2 - theta) - xi) / norm(xi);
        worst_repr = std::max({worst_repr, d1, d2, std::abs(norm(e.zeta1) - 1.0),
                               std::abs(norm(e.zeta2) - 1.0)});
        worst_angle = std::max(worst_angle, 1.0 / K - dot(e.zeta1, e.zeta2));
        ++tested;
    }
    detail = "max representation defect " + fmt(worst_repr) + ", max (1/K - zeta1.zeta2) " +
             fmt(worst_angle) + " over 10^4 draws (tol 1e-10)";
    return worst_repr <= 1e-10 && worst_angle <= 1e-10;
}

// --------------------------------------------------------------------------
// C2: elastic solver against the independent scalar Helmholtz reference at
// lambda = -1, mu = 1 (lambda + mu = 0), Q = pot2 I at unit amplitude, N = 32.
// --------------------------------------------------------------------------
bool c2_scalar_crosscheck(std::string& detail) {
    const GridSpec g(2.0, 32);
    const LameParams lame(-1.0, 1.0);
    const double omega = 1.3;  // energy c = omega since 2mu+lambda = mu = 1
    const MatrixLoad q = make_load(g, LoadSpec{"pot2", 1.0, pattern_from_name("identity"), ""});
    SolverSettings st;
    st.tol = 1e-10;
    const Vec2 theta = normalized({1.0, 0.0});
    const ForwardContext ctx(q, lame, st, 1.0);
    const LsSolution sol = solve_lippmann_schwinger(ctx, plane_p_wave(theta, lame.kp(omega)), omega);

    ScalarField qs(g);
    for (int a = 0; a < g.size(); ++a) qs.v[a] = q.c[0][a] / lame.mu;
    const oracle::ScalarSolveResult ref =
        oracle::helmholtz_ls_reference(qs, lame.ks(omega), theta, 2.0, 1e-10);

    double num = 0.0, den = 0.0;
    for (int a = 0; a < g.size(); ++a) {
        num += std::norm(sol.v.x[a] - theta.x * ref.v.v[a]);
        num += std::norm(sol.v.y[a] - theta.y * ref.v.v[a]);
        den += std::norm(theta.x * ref.v.v[a]) + std::norm(theta.y * ref.v.v[a]);
    }
    const double rel = std::sqrt(num / den);
    detail = "relative difference " + fmt(rel) + " (tol 1e-6)";
    return rel <= 1e-6;
}

// --------------------------------------------------------------------------
// C3: Born-series convergence orders under amplitude halving.
// --------------------------------------------------------------------------
bool c3_born_orders(std::string& detail) {
    const GridSpec g(2.0, 16);
    const LameParams lame(2.0, 1.0);
    const double omega = 1.0;
    const double c = std::sqrt(lame.p_modulus()) * omega;
    const PlaneWave ui = plane_p_wave({1.0, 0.0}, omega);
    SolverSettings st;
    st.tol = 1e-12;
    const MatrixLoad base = make_load(g, LoadSpec{"pot2", 1.0, pattern_from_name("ones"), ""});

    double rem1[3], rem2[3];
    const double eps_list[3] = {0.2, 0.1, 0.05};
    for (int i = 0; i < 3; ++i) {
        const ForwardContext ctx(eps_list[i] * base, lame, st, 1.0);
        const LsSolution sol = solve_lippmann_schwinger(ctx, ui, c);
        rem1[i] = l2_norm(sol.v - oracle::born_series_oracle(ctx, ui, c, 1));
        rem2[i] = l2_norm(sol.v - oracle::born_series_oracle(ctx, ui, c, 2));
    }
    bool ok = true;
    std::ostringstream os;
    os << "order-1 ratios";
    for (int i = 0; i + 1 < 3; ++i) {
        const double r = rem1[i] / rem1[i + 1];
        os << ' ' << fmt(r);
        ok = ok && r >= 4.0 / 1.5 && r <= 4.0 * 1.5;
    }
    os << " (expect ~4), order-2 ratios";
    for (int i = 0; i + 1 < 3; ++i) {
        const double r = rem2[i] / rem2[i + 1];
        os << ' ' << fmt(r);
        ok = ok && r >= 8.0 / 1.5 && r <= 8.0 * 1.5;
    }
    os << " (expect ~8, factor 1.5)";
    detail = os.str();
    return ok;
}

// --------------------------------------------------------------------------
// C4: linear-level inversion (scattered fields suppressed) is pure algebra.
// --------------------------------------------------------------------------
CVec2 qhat_times(const MatrixLoad& q, Vec2 xi, Vec2 w) {
    const cd q11 = nuft_eval(ScalarField(q.grid, q.c[0]), xi);
    const cd q12 = nuft_eval(ScalarField(q.grid, q.c[1]), xi);
    const cd q21 = nuft_eval(ScalarField(q.grid, q.c[2]), xi);
    const cd q22 = nuft_eval(ScalarField(q.grid, q.c[3]), xi);
    return {q11 * w.x + q12 * w.y, q21 * w.x + q22 * w.y};
}

bool c4_linear_inversion(std::string& detail) {
    const GridSpec g(2.0, 16);
    const LameParams lame(2.0, 1.0);
    const MatrixLoad q = make_load(g, LoadSpec{"pot1", 1.0, pattern_from_name("ones"), ""});
    SolverSettings st;
    st.linearize = true;
    const ForwardContext ctx(q, lame, st, 1.0);
    const Fft2d fft(g.nodes_per_axis());

    auto coefficient_defect = [&](const MatrixLoad& born, bool skip_axes, Vec2 theta) {
        double worst = 0.0;
        std::array<std::vector<cd>, 4> coef;
        for (int k = 0; k < 4; ++k) coef[k] = dft_forward(ScalarField(g, born.c[k]), &fft);
        for (int a = 0; a < g.size(); ++a) {
            const Vec2 xi = g.freq(a);
            if (norm(xi) == 0.0) continue;
            if (skip_axes && detail::fixed_angle_quadrant(xi, theta) < 0) continue;
            const CVec2 col0 = qhat_times(q, xi, {1.0, 0.0});
            const CVec2 col1 = qhat_times(q, xi, {0.0, 1.0});
            const double scale = 2.0 * g.half_side();
            worst = std::max(worst, std::abs(scale * coef[0][a] - col0.x));
            worst = std::max(worst, std::abs(scale * coef[1][a] - col1.x));
            worst = std::max(worst, std::abs(scale * coef[2][a] - col0.y));
            worst = std::max(worst, std::abs(scale * coef[3][a] - col1.y));
        }
        return worst;
    };

    const MatrixLoad born_b = born_backscatter(synthesize_backscatter(ctx));
    const double defect_b = coefficient_defect(born_b, false, {1.0, 0.0});

    const Vec2 theta{1.0, 0.0};
    const MatrixLoad born_f = born_fixed_angle(synthesize_fixed_angle(ctx, theta, Regime::p));
    const double defect_f = coefficient_defect(born_f, true, theta);

    detail = "max coefficient defect: backscatter " + fmt(defect_b) + ", fixed-angle " +
             fmt(defect_f) + " (tol 1e-10)";
    return defect_b <= 1e-10 && defect_f <= 1e-10;
}

// --------------------------------------------------------------------------
// C5: small-load end-to-end reconstruction quality and its linear scaling.
// --------------------------------------------------------------------------
bool c5_small_load(std::string& detail) {
    const GridSpec g(2.0, 32);
    const LameParams lame(2.0, 1.0);
    SolverSettings st;
    st.tol = 1e-9;
    const Vec2 theta{1.0, 0.0};

    auto backscatter_err = [&](double amp) {
        const MatrixLoad q = make_load(g, LoadSpec{"pot2", amp, pattern_from_name("ones"), ""});
        const ForwardContext ctx(q, lame, st, 1.0);
        const MatrixLoad born = born_backscatter(synthesize_backscatter(ctx));
        return relative_l2_error(q, born);
    };
    auto fixed_err = [&](double amp) {
        const MatrixLoad q = make_load(g, LoadSpec{"pot2", amp, pattern_from_name("ones"), ""});
        const ForwardContext ctx(q, lame, st, 1.0);
        const MatrixLoad born = born_fixed_angle(synthesize_fixed_angle(ctx, theta, Regime::p));
        return relative_l2_error(q, born);
    };

    const double eb1 = backscatter_err(0.05);
    const double eb2 = backscatter_err(0.025);
    const double ef1 = fixed_err(0.05);
    const double ef2 = fixed_err(0.025);
    const double rb = eb1 / eb2, rf = ef1 / ef2;

    detail = "rel L2 error at amplitude 0.05: backscatter " + fmt(eb1) + ", fixed-angle " +
             fmt(ef1) + " (tol 0.05); halving ratios " + fmt(rb) + ", " + fmt(rf) +
             " (expect >= 1.5)";
    return eb1 <= 0.05 && ef1 <= 0.05 && rb >= 1.5 && rf >= 1.5;
}

// --------------------------------------------------------------------------
// C6: iterative refinement improves noisy unit-amplitude reconstructions.
// --------------------------------------------------------------------------
struct IterationCase {
    std::string label;
    double lambda;
    std::string kind;  // backscatter | fixed-angle
    Regime regime;
};

bool run_iteration_case(const IterationCase& ic, int n_grid, double support_radius,
                        std::string& detail, bool smoke = false) {
    const GridSpec g(2.0, n_grid);
    const LameParams lame(ic.lambda, 1.0);
    SolverSettings st;
    st.tol = 1e-8;
    const Vec2 theta{1.0, 0.0};
    const MatrixLoad q = make_load(g, LoadSpec{"pot2", 1.0, pattern_from_name("ones"), ""});
    const ForwardContext ctx(q, lame, st, support_radius);

    MatrixLoad born(g);
    IterationResult res;
    if (ic.kind == "backscatter") {
        BackscatterDataset data = synthesize_backscatter(ctx);
        add_noise(data, 0.05, 7);
        born = born_backscatter(data);
        res = iterate_backscatter(born, support_radius, 4, lame, st);
    } else {
        FixedAngleDataset data = synthesize_fixed_angle(ctx, theta, ic.regime);
        add_noise(data, 0.05, 7);
        born = born_fixed_angle(data);
        res = iterate_fixed_angle(born, theta, ic.regime, support_radius, 4, lame, st);
    }
    if (res.failed || res.iterates.size() < 5) {
        detail = ic.label + ": iteration failed (" + res.failure + ")";
        return false;
    }
    double err[5];
    for (int i = 0; i < 5; ++i) err[i] = reconstruction_error(q, res.iterates[i]);
    std::ostringstream os;
    os << ic.label << " error(n) =";
    for (int i = 0; i < 5; ++i) os << ' ' << fmt(err[i]);
    detail = os.str();
    for (int i = 0; i < 5; ++i)
        if (!std::isfinite(err[i])) return false;
    if (smoke) return true;  // the N=16 variant is a runtime check; asserts live at N=32
    return err[1] < err[0] && err[2] < err[1] && err[3] <= 0.5 * err[0];
}

// Moderate-load control: the same pipeline in the paper's "not too large
// loads" regime, gated on the iteration's own contraction (update norms) and
// net improvement, both robust to the noise floor.
bool c6_control(std::string& detail) {
    const std::vector<IterationCase> cases = {
        {"backscatter(l=2)", 2.0, "backscatter", Regime::p},
        {"fixed-angle(l=2,K>1)", 2.0, "fixed-angle", Regime::p},
        {"fixed-angle(l=-1.1,K<1)", -1.1, "fixed-angle", Regime::s},
    };
    const GridSpec g(2.0, 32);
    SolverSettings st;
    st.tol = 1e-8;
    const Vec2 theta{1.0, 0.0};
    const double rs = 1.6, amp = 0.25;
    bool all = true;
    std::string acc;
    for (const IterationCase& ic : cases) {
        const LameParams lame(ic.lambda, 1.0);
        const MatrixLoad q = make_load(g, LoadSpec{"pot2", amp, pattern_from_name("ones"), ""});
        const ForwardContext ctx(q, lame, st, rs);
        MatrixLoad born(g);
        IterationResult res;
        if (ic.kind == "backscatter") {
            BackscatterDataset data = synthesize_backscatter(ctx);
            add_noise(data, 0.05, 7);
            born = born_backscatter(data, rs);
            res = iterate_backscatter(born, rs, 4, lame, st);
        } else {
            FixedAngleDataset data = synthesize_fixed_angle(ctx, theta, ic.regime);
            add_noise(data, 0.05, 7);
            born = born_fixed_angle(data, rs);
            res = iterate_fixed_angle(born, theta, ic.regime, rs, 4, lame, st);
        }
        bool ok = !res.failed && res.update_norms.size() == 4;
        std::ostringstream os;
        os << ic.label << " err(1)=";
        if (ok) {
            const double e1 = reconstruction_error(q, res.iterates.front());
            const double e5 = reconstruction_error(q, res.iterates.back());
            os << fmt(e1) << " err(5)=" << fmt(e5) << " upd=";
            for (double u : res.update_norms) os << fmt(u) << ' ';
            ok = e5 < e1 && res.update_norms[3] <= 0.5 * res.update_norms[0];
            for (double u : res.update_norms) ok = ok && std::isfinite(u);
        } else {
            os << "failed: " << res.failure;
        }
        all = all && ok;
        if (!acc.empty()) acc += "; ";
        acc += os.str() + (ok ? "ok" : "VIOLATION");
    }
    detail = acc +
             " (amplitude 0.25, chi radius 1.6: need contracting updates and net improvement)";
    return all;
}

bool c6_iteration(std::string& detail, int n_grid, bool smoke) {
    const std::vector<IterationCase> cases = {
        {"backscatter(l=2)", 2.0, "backscatter", Regime::p},
        {"fixed-angle(l=2,K>1)", 2.0, "fixed-angle", Regime::p},
        {"fixed-angle(l=-1.1,K<1)", -1.1, "fixed-angle", Regime::s},
    };
    bool all = true;
    std::string acc;
    for (const IterationCase& ic : cases) {
        std::string d;
        const bool ok = run_iteration_case(ic, n_grid, 1.0, d, smoke);
        all = all && ok;
        if (!acc.empty()) acc += "; ";
        acc += d + (ok ? " ok" : " VIOLATION");
    }
    detail = acc + (smoke ? " (smoke: errors finite, run completes in budget)"
                          : " (need error strictly decreasing for n=1..3 and error(4) <= 0.5 "
                            "error(1))");
    return all;
}

// --------------------------------------------------------------------------
// C7: trigonometric truncation rate of the discrete Born approximation.
// --------------------------------------------------------------------------
bool c7_truncation_rate(std::string& detail) {
    const GridSpec fine(2.0, 128);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int nf = fine.nodes_per_axis();
    std::vector<cd> truth(fine.size());
    for (int a = 0; a < fine.size(); ++a) {
        const double j = std::hypot(double(fine.centered(a / nf)), double(fine.centered(a % nf)));
        truth[a] = std::polar(std::pow(1.0 + j, -2.8), 2.0 * M_PI * u(rng));
    }
    double h1_norm = 0.0;
    for (int a = 0; a < fine.size(); ++a) {
        const double j = std::hypot(double(fine.centered(a / nf)), double(fine.centered(a % nf)));
        h1_norm += std::pow(1.0 + j, 2.0) * std::norm(truth[a]);
    }
    h1_norm = std::sqrt(h1_norm);

    std::vector<double> hs, errs;
    bool bound_ok = true;
    for (const int n : {16, 32, 64}) {
        const GridSpec g(2.0, n);
        // Feed the synthetic coefficients through the data -> Born pipeline.
        BackscatterDataset data(g);
        data.lambda = 2.0;
        data.mu = 1.0;
        for (int a = 0; a < g.size(); ++a) {
            const Vec2 xi = g.freq(a);
            if (norm(xi) == 0.0) continue;
            const int j1 = g.centered(a / n), j2 = g.centered(a % n);
            const cd d = 2.0 * g.half_side() * truth[fine.flat(j1 + nf / 2, j2 + nf / 2)];
            double omega;
            Vec2 theta;
            backscatter_angles(xi, omega, theta);
            data.entries[a].vp = scaled(theta, d);
            data.entries[a].vs = scaled(perp(theta), d);
            data.entries[a].ok = true;
        }
        const MatrixLoad born = born_backscatter(data);
        const std::vector<cd> coarse = dft_forward(ScalarField(g, born.c[0]));
        double err2 = 0.0;
        for (int a = 0; a < fine.size(); ++a) {
            const int j1 = fine.centered(a / nf), j2 = fine.centered(a % nf);
            if (j1 == 0 && j2 == 0) continue;  // origin is convention-filled, not measured
            const bool inside = j1 >= -n / 2 && j1 < n / 2 && j2 >= -n / 2 && j2 < n / 2;
            if (inside) {
                const cd got = coarse[g.flat(j1 + n / 2, j2 + n / 2)];
                err2 += std::norm(got - truth[a]);
            } else {
                err2 += std::norm(truth[a]);
            }
        }
        const double err = std::sqrt(err2);
        hs.push_back(g.mesh());
        errs.push_back(err);
        bound_ok = bound_ok && err <= g.mesh() * h1_norm;
    }
    // Least-squares slope of log err against log h.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(hs.size());
    for (int i = 0; i < m; ++i) {
        const double x = std::log(hs[i]), y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    detail = "log-log slope " + fmt(slope) + " (need >= 0.9); h^1 bound " +
             (bound_ok ? "holds" : "violated");
    return slope >= 0.9 && bound_ok;
}

// --------------------------------------------------------------------------
// C8: the Lipschitz-diamond kink stays at x1 = 0 in the Born image.
// --------------------------------------------------------------------------
bool c8_singularity(std::string& detail) {
    const GridSpec g(2.0, 32);
    const LameParams lame(2.0, 1.0);
    SolverSettings st;
    st.tol = 1e-8;
    const MatrixLoad q =
        make_load(g, LoadSpec{"lipschitz-diamond", 10.0, pattern_from_name("identity"), ""});
    const ForwardContext ctx(q, lame, st, 1.0);
    const MatrixLoad born = born_backscatter(synthesize_backscatter(ctx));

    const int n = g.nodes_per_axis();
    const int i2 = n / 2;
    std::vector<double> section(n);
    for (int i1 = 0; i1 < n; ++i1) section[i1] = born.c[0][g.flat(i1, i2)].real();
    double best = -1.0;
    double best_x = 0.0;
    for (int i1 = 1; i1 + 1 < n; ++i1) {
        const double d2 = std::abs(section[i1 + 1] - 2.0 * section[i1] + section[i1 - 1]);
        if (d2 > best) {
            best = d2;
            best_x = g.node(i1, i2).x;
        }
    }
    detail = "max |second difference| at x1 = " + fmt(best_x) + " (need |x1| <= 2h = " +
             fmt(2.0 * g.mesh()) + ")";
    return std::abs(best_x) <= 2.0 * g.mesh() + 1e-12;
}

// --------------------------------------------------------------------------
// C9: byte-identical `iterate` runs through the CLI.
// --------------------------------------------------------------------------
std::string read_bytes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

bool c9_determinism(std::string& detail) {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "elsc_acceptance_c9";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string cfg_path = (root / "exp.cfg").string();
    {
        std::ofstream cfg(cfg_path);
        cfg << "lambda = 2\nmu = 1\nR = 2\nN = 16\nload = pot2\namplitude = 0.5\n"
               "pattern = ones\nkind = backscatter\nnoise = 0.05\nseed = 7\n"
               "iterations = 1\ntol = 1e-8\nthreads = 2\n";
    }
    const std::string cli = ELSC_CLI_PATH;
    auto run = [&](const std::string& sub, const std::string& out,
                   const std::string& extra) {
        const std::string cmd = cli + " " + sub + " -c " + cfg_path + " --outdir " + out + " " +
                                extra + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const std::string synth_out = (root / "synth").string();
    if (run("synth", synth_out, "") != 0) {
        detail = "synth run failed";
        return false;
    }
    const std::string data = synth_out + "/dataset.elbd";
    const std::string out_a = (root / "a").string(), out_b = (root / "b").string();
    if (run("iterate", out_a, "--data " + data + " --true-load") != 0 ||
        run("iterate", out_b, "--data " + data + " --true-load") != 0) {
        detail = "iterate run failed";
        return false;
    }
    // Also check that re-synthesizing with the same seed is byte-identical.
    const std::string synth_out2 = (root / "synth2").string();
    if (run("synth", synth_out2, "") != 0) {
        detail = "second synth run failed";
        return false;
    }
    bool same = read_bytes(data) == read_bytes(synth_out2 + "/dataset.elbd");
    int compared = 1;
    for (const auto& entry : fs::directory_iterator(out_a)) {
        const std::string name = entry.path().filename().string();
        const std::string other = out_b + "/" + name;
        if (!fs::exists(other)) {
            same = false;
            break;
        }
        same = same && read_bytes(entry.path().string()) == read_bytes(other);
        ++compared;
    }
    detail = same ? ("byte-identical outputs across reruns (" + std::to_string(compared) +
                     " files compared)")
                  : "outputs differ between identical runs";
    fs::remove_all(root);
    return same;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string selector = argc > 1 ? argv[1] : "all";
    std::vector<Criterion> criteria = {
        {"1", "ewald-geometry", c1_ewald},
        {"2", "solver-cross-check", c2_scalar_crosscheck},
        {"3", "born-series-orders", c3_born_orders},
        {"4", "linear-level-inversion", c4_linear_inversion},
        {"5", "small-load-end-to-end", c5_small_load},
        {"6", "iteration-improvement", [](std::string& d) { return c6_iteration(d, 32, false); }},
        {"6smoke", "iteration-improvement-smoke",
         [](std::string& d) { return c6_iteration(d, 16, true); }},
        {"6control", "iteration-moderate-load-control", c6_control},
        {"7", "truncation-rate", c7_truncation_rate},
        {"8", "singularity-recovery", c8_singularity},
        {"9", "determinism", c9_determinism},
    };

    int failures = 0, matched = 0;
    for (const Criterion& c : criteria) {
        if (selector != "all" && selector != c.id) continue;
        ++matched;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] C%s %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.id.c_str(),
                    c.name.c_str(), detail.c_str(), secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (matched == 0) {
        std::fprintf(stderr, "unknown criterion selector: %s\n", selector.c_str());
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
