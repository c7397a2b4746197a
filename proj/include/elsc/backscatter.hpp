#pragma once

#include <functional>

#include "elsc/far_field.hpp"
#include "elsc/parallel.hpp"

namespace elsc {

// Backscattering dataset: for every lattice frequency xi_j != 0 the two
// assembled far-field vectors at omega = |xi_j|/2, theta = -xi_j/|xi_j|.
struct BackscatterEntry {
    CVec2 vp, vs;
    bool ok = false;
};

struct BackscatterDataset {
    GridSpec grid;
    double lambda = 0.0, mu = 1.0;
    double noise_level = 0.0;
    bool synthetic = true;
    bool partial = false;
    std::vector<BackscatterEntry> entries;  // N^2 slots; the origin stays empty

    explicit BackscatterDataset(const GridSpec& g) : grid(g), entries(g.size()) {}

    LameParams lame() const { return LameParams(lambda, mu); }
};

// Unique polar factorization xi = -2 omega theta with omega > 0.
inline void backscatter_angles(Vec2 xi, double& omega, Vec2& theta) {
    const double r = norm(xi);
    if (r == 0.0) throw std::invalid_argument("backscatter_angles: xi must be nonzero");
    omega = 0.5 * r;
    theta = (-1.0 / r) * xi;
}

// (2mu+lambda) v^p_{p,inf}(-theta; sqrt(2mu+lambda) omega, theta)
//   + mu v^p_{s,inf}(-theta; 2 sqrt(2mu+lambda) omega/(K+1), theta):
// the p -> p datum at omega plus the p -> s datum rescaled to land on the
// same Fourier point -2 omega theta.
inline CVec2 assemble_vp_inf(const ForwardContext& ctx, double omega, Vec2 theta) {
    const double K = ctx.lame.speed_ratio();
    const Vec2 zeta = -theta;
    const CVec2 a = eval_channel(ctx, Channel::pp, omega, theta, theta, zeta).datum;
    const CVec2 b = eval_channel(ctx, Channel::ps, 2.0 * omega / (K + 1.0), theta, theta, zeta).datum;
    return a + b;
}

// Mirror assembly from the s -> p and s -> s data, landing on -2 omega theta
// with polarization theta_perp.
inline CVec2 assemble_vs_inf(const ForwardContext& ctx, double omega, Vec2 theta,
                             Vec2 theta_perp) {
    const double Kinv = 1.0 / ctx.lame.speed_ratio();
    const Vec2 zeta = -theta;
    const CVec2 a =
        eval_channel(ctx, Channel::sp, 2.0 * omega / (Kinv + 1.0), theta, theta_perp, zeta).datum;
    const CVec2 b = eval_channel(ctx, Channel::ss, omega, theta, theta_perp, zeta).datum;
    return a + b;
}

namespace detail {

// The scattered-only counterparts: error vectors e^p and e^s.
inline CVec2 backscatter_error_p(const ForwardContext& ctx, double omega, Vec2 theta) {
    const double K = ctx.lame.speed_ratio();
    const Vec2 zeta = -theta;
    const CVec2 a = eval_channel(ctx, Channel::pp, omega, theta, theta, zeta).scattered;
    const CVec2 b =
        eval_channel(ctx, Channel::ps, 2.0 * omega / (K + 1.0), theta, theta, zeta).scattered;
    return a + b;
}

inline CVec2 backscatter_error_s(const ForwardContext& ctx, double omega, Vec2 theta,
                                 Vec2 theta_perp) {
    const double Kinv = 1.0 / ctx.lame.speed_ratio();
    const Vec2 zeta = -theta;
    const CVec2 a =
        eval_channel(ctx, Channel::sp, 2.0 * omega / (Kinv + 1.0), theta, theta_perp, zeta).scattered;
    const CVec2 b = eval_channel(ctx, Channel::ss, omega, theta, theta_perp, zeta).scattered;
    return a + b;
}

// Column assembly M e_i = (e_i.theta) vp + (e_i.theta_perp) vs, i.e. the
// rank-two matrix vp (x) theta + vs (x) theta_perp.
struct AssembledPoint {
    cd m[4];  // a11 a12 a21 a22
};

inline AssembledPoint assemble_columns(CVec2 vp, CVec2 vs, Vec2 theta, Vec2 theta_perp) {
    AssembledPoint p;
    p.m[0] = vp.x * theta.x + vs.x * theta_perp.x;
    p.m[1] = vp.x * theta.y + vs.x * theta_perp.y;
    p.m[2] = vp.y * theta.x + vs.y * theta_perp.x;
    p.m[3] = vp.y * theta.y + vs.y * theta_perp.y;
    return p;
}

// Dense Hermitian solve by Gaussian elimination with partial pivoting; the
// completion systems below are tiny (at most 2N - 1 unknowns).
inline std::vector<cd> solve_dense(std::vector<cd> m, std::vector<cd> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
        if (std::abs(m[pivot * n + col]) == 0.0)
            throw std::runtime_error("singular completion system");
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(m[col * n + c], m[pivot * n + c]);
            std::swap(rhs[col], rhs[pivot]);
        }
        for (int r = col + 1; r < n; ++r) {
            const cd f = m[r * n + col] / m[col * n + col];
            if (f == cd{}) continue;
            for (int c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<cd> x(n);
    for (int r = n - 1; r >= 0; --r) {
        cd s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= m[r * n + c] * x[c];
        x[r] = s / m[r * n + r];
    }
    return x;
}

// Complete the unmeasured lattice coefficients (the origin; for fixed angle
// the two excluded axes) from the support constraint: the reconstruction is
// known to vanish away from the support ball, so the missing coefficients are
// chosen to minimize the reconstruction's weighted energy over the outer
// region.  The weight ramps from zero at r_out up to one at the domain
// boundary, leaning on the square's corners where admissible loads carry no
// mass at all.  For the origin alone this reduces to removing a weighted
// mean.  The least-squares system is Hermitian positive definite since
// trigonometric polynomials cannot vanish on an open set.
inline void fill_by_support(const GridSpec& g, std::vector<AssembledPoint>& dhat,
                            const std::vector<char>& assigned, double r_out) {
    const int n = g.nodes_per_axis();
    std::vector<int> missing;
    for (int a = 0; a < g.size(); ++a)
        if (!assigned[a]) missing.push_back(a);
    if (missing.empty()) return;

    ScalarField w(g);  // squared smoothstep weight
    const double span = std::max(g.half_side() - r_out, 2.0 * g.mesh());
    for (int a = 0; a < g.size(); ++a) {
        const double t = std::clamp((norm(g.node(a)) - r_out) / span, 0.0, 1.0);
        const double ramp = t * t * (3.0 - 2.0 * t);
        w.v[a] = ramp * ramp;
    }
    const Fft2d fft(n);
    const std::vector<cd> wcoef = dft_forward(w, &fft);
    const double inv2r = 1.0 / (2.0 * g.half_side());

    const int s = static_cast<int>(missing.size());
    std::vector<cd> gram(static_cast<size_t>(s) * s);
    for (int a = 0; a < s; ++a) {
        const int ja1 = g.centered(missing[a] / n), ja2 = g.centered(missing[a] % n);
        for (int b = 0; b < s; ++b) {
            const int jb1 = g.centered(missing[b] / n), jb2 = g.centered(missing[b] % n);
            const int d1 = ((ja1 - jb1) % n + n + n / 2) % n;  // wrapped, re-centered
            const int d2 = ((ja2 - jb2) % n + n + n / 2) % n;
            gram[a * s + b] = inv2r * wcoef[g.flat(d1, d2)];
        }
        gram[a * s + a] += 1e-12 * inv2r * wcoef[g.flat(n / 2, n / 2)].real();
    }

    for (int k = 0; k < 4; ++k) {
        std::vector<cd> coef(g.size());
        for (int a = 0; a < g.size(); ++a)
            coef[a] = assigned[a] ? inv2r * dhat[a].m[k] : cd{};
        ScalarField q0 = dft_inverse(g, std::move(coef), &fft);
        for (int a = 0; a < g.size(); ++a) q0.v[a] *= w.v[a];
        const std::vector<cd> proj = dft_forward(q0, &fft);
        std::vector<cd> rhs(s);
        for (int a = 0; a < s; ++a) rhs[a] = -proj[missing[a]];
        const std::vector<cd> fill = solve_dense(gram, rhs);
        for (int a = 0; a < s; ++a) dhat[missing[a]].m[k] = 2.0 * g.half_side() * fill[a];
    }
}

// Nodal matrix field from lattice samples of the plain Fourier transform:
// the coefficient of phi_j is Dhat_j / (2R).
inline MatrixLoad invert_assembled(const GridSpec& g, const std::vector<AssembledPoint>& dhat) {
    MatrixLoad out(g);
    const Fft2d fft(g.nodes_per_axis());
    const double inv2r = 1.0 / (2.0 * g.half_side());
    for (int k = 0; k < 4; ++k) {
        std::vector<cd> coef(g.size());
        for (int a = 0; a < g.size(); ++a) coef[a] = inv2r * dhat[a].m[k];
        out.c[k] = dft_inverse(g, std::move(coef), &fft).v;
    }
    return out;
}

}  // namespace detail

using ProgressFn = std::function<void(int, int)>;

// Forward-synthesize the full backscattering dataset: four Lippmann-Schwinger
// solves per lattice frequency.  With half_lattice set, only a half lattice is
// computed and the rest is filled through the Hermitian reflection valid for
// real loads.
inline BackscatterDataset synthesize_backscatter(const ForwardContext& ctx,
                                                 const ProgressFn& progress = {}) {
    const GridSpec& g = ctx.data_grid;
    BackscatterDataset data(g);
    data.lambda = ctx.lame.lambda;
    data.mu = ctx.lame.mu;
    const int n = g.nodes_per_axis();
    const int origin = g.flat(n / 2, n / 2);

    auto mirrored = [&](int a) {
        const int i1 = a / n, i2 = a % n;
        const int j1 = g.centered(i1), j2 = g.centered(i2);
        if (j1 == -n / 2 || j2 == -n / 2) return -1;  // edge rows have no partner
        return g.flat(-j1 + n / 2, -j2 + n / 2);
    };
    auto canonical = [&](int a) {
        if (mirrored(a) < 0) return true;
        const int j1 = g.centered(a / n), j2 = g.centered(a % n);
        return j1 > 0 || (j1 == 0 && j2 > 0);
    };

    std::vector<int> work;
    for (int a = 0; a < g.size(); ++a)
        if (a != origin && (!ctx.settings.half_lattice || canonical(a))) work.push_back(a);

    std::atomic<int> done{0};
    std::atomic<bool> any_failed{false};
    parallel_for(static_cast<int>(work.size()), ctx.settings.threads, [&](int w) {
        const int a = work[w];
        double omega;
        Vec2 theta;
        backscatter_angles(g.freq(a), omega, theta);
        BackscatterEntry& e = data.entries[a];
        try {
            e.vp = assemble_vp_inf(ctx, omega, theta);
            e.vs = assemble_vs_inf(ctx, omega, theta, perp(theta));
            e.ok = true;
        } catch (const SolverError&) {
            any_failed = true;  // entry stays absent; the dataset is marked partial
        }
        if (progress) progress(++done, static_cast<int>(work.size()));
    });
    data.partial = any_failed;

    if (ctx.settings.half_lattice) {
        for (int a = 0; a < g.size(); ++a) {
            if (a == origin || data.entries[a].ok) continue;
            const int b = mirrored(a);
            if (b < 0 || !data.entries[b].ok) continue;
            // theta(-xi) = -theta(xi): for real loads the assembled vectors
            // pick up a conjugate and a sign.
            data.entries[a].vp = {-std::conj(data.entries[b].vp.x), -std::conj(data.entries[b].vp.y)};
            data.entries[a].vs = {-std::conj(data.entries[b].vs.x), -std::conj(data.entries[b].vs.y)};
            data.entries[a].ok = true;
        }
    }
    return data;
}

// The completion region starts halfway between the declared support ball and
// the domain boundary; it is never empty since the ball is inscribed in G_R.
inline double completion_radius(const GridSpec& g, double support_radius) {
    return 0.5 * (std::min(support_radius, g.half_side()) + g.half_side());
}

// Discrete Born approximation: assemble Qhat_B(xi_j) e_i from the dataset and
// invert the DFT.  The unmeasured origin coefficient is completed from the
// support constraint.
inline MatrixLoad born_backscatter(const BackscatterDataset& data, double support_radius = -1.0) {
    const GridSpec& g = data.grid;
    if (support_radius <= 0.0) support_radius = 0.5 * g.half_side();
    const int n = g.nodes_per_axis();
    const int origin = g.flat(n / 2, n / 2);
    std::vector<detail::AssembledPoint> dhat(g.size());
    std::vector<char> assigned(g.size(), 0);
    for (int a = 0; a < g.size(); ++a) {
        if (a == origin) continue;
        if (!data.entries[a].ok)
            throw std::invalid_argument("born_backscatter: dataset is incomplete at a lattice point");
        double omega;
        Vec2 theta;
        backscatter_angles(g.freq(a), omega, theta);
        dhat[a] = detail::assemble_columns(data.entries[a].vp, data.entries[a].vs, theta, perp(theta));
        assigned[a] = 1;
    }
    detail::fill_by_support(g, dhat, assigned, completion_radius(g, support_radius));
    return detail::invert_assembled(g, dhat);
}

// Error term E(Q_n): four solves per lattice frequency with the current
// iterate as load, assembled exactly like the data but from the scattered
// parts alone.
inline MatrixLoad error_term_backscatter(const ForwardContext& ctx, const ProgressFn& progress = {}) {
    const GridSpec& g = ctx.data_grid;
    const int n = g.nodes_per_axis();
    const int origin = g.flat(n / 2, n / 2);
    std::vector<detail::AssembledPoint> dhat(g.size());
    std::vector<char> assigned(g.size(), 0);
    std::vector<int> work;
    for (int a = 0; a < g.size(); ++a)
        if (a != origin) work.push_back(a);

    std::atomic<int> done{0};
    parallel_for(static_cast<int>(work.size()), ctx.settings.threads, [&](int w) {
        const int a = work[w];
        double omega;
        Vec2 theta;
        backscatter_angles(g.freq(a), omega, theta);
        const Vec2 tp = perp(theta);
        try {
            const CVec2 ep = detail::backscatter_error_p(ctx, omega, theta);
            const CVec2 es = detail::backscatter_error_s(ctx, omega, theta, tp);
            dhat[a] = detail::assemble_columns(ep, es, theta, tp);
        } catch (const SolverError& err) {
            throw SolverError("error term failed at lattice point (" +
                                  std::to_string(g.centered(a / n)) + "," +
                                  std::to_string(g.centered(a % n)) + "), omega=" +
                                  std::to_string(omega) + ": " + err.what(),
                              err.residual());
        }
        assigned[a] = 1;
        if (progress) progress(++done, static_cast<int>(work.size()));
    });
    detail::fill_by_support(g, dhat, assigned, completion_radius(g, ctx.support_radius));
    return detail::invert_assembled(g, dhat);
}

struct IterationResult {
    std::vector<MatrixLoad> iterates;       // Q_1 .. Q_{M+1} (may stop short on failure)
    std::vector<double> update_norms;       // max-component L2 of Q_{n+1} - Q_n
    bool failed = false;
    std::string failure;
};

inline double max_component_l2(const MatrixLoad& q) {
    double best = 0.0;
    for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (const cd& z : q.c[k]) s += std::norm(z);
        best = std::max(best, q.grid.mesh() * std::sqrt(s));
    }
    return best;
}

// Q_1 = chi Q_B; Q_{n+1} = chi Q_B - chi E(Q_n), n = 1..M.  chi cuts to the
// closed ball of the declared support radius.
inline IterationResult iterate_backscatter(const MatrixLoad& q_born, double support_radius, int M,
                                           const LameParams& lame, const SolverSettings& settings,
                                           bool early_stop = false,
                                           const ProgressFn& progress = {}) {
    if (M < 1) throw std::invalid_argument("iterate_backscatter: M must be >= 1");
    IterationResult res;
    MatrixLoad q_cut = q_born;
    restrict_to_ball(q_cut, support_radius);
    res.iterates.push_back(q_cut);
    for (int it = 1; it <= M; ++it) {
        try {
            const ForwardContext ctx(res.iterates.back(), lame, settings, support_radius);
            MatrixLoad e = error_term_backscatter(ctx, progress);
            restrict_to_ball(e, support_radius);
            MatrixLoad next = q_cut - e;
            res.update_norms.push_back(max_component_l2(next - res.iterates.back()));
            res.iterates.push_back(std::move(next));
            if (early_stop && res.update_norms.back() <
                                  1e-3 * std::max(1e-300, max_component_l2(res.iterates.back())))
                break;
        } catch (const SolverError& err) {
            res.failed = true;
            res.failure = err.what();
            break;
        }
    }
    return res;
}

}  // namespace elsc
