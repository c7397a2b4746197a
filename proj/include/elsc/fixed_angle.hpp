#pragma once

#include "elsc/backscatter.hpp"
#include "elsc/ewald.hpp"

namespace elsc {

// Fixed-angle machinery.  For K > 1 the p-incident channels cover each half
// plane through the Ewald/K-Ewald representation; for K < 1 the s-incident
// channels take over with (theta_perp, 1/K) in place of (theta, K), each
// incident direction carrying its clockwise-perpendicular polarization.
enum class Regime { p, s };

struct FixedAngleEntry {
    CVec2 v_th;      // feeds the theta column of Qhat_B
    CVec2 v_pe;      // feeds the theta_perp column
    int8_t quad = -1;  // 0..3, or -1 for the excluded axes
    bool ok = false;
};

struct FixedAngleDataset {
    GridSpec grid;
    double lambda = 0.0, mu = 1.0;
    Vec2 theta{1.0, 0.0};
    Regime regime = Regime::p;
    double noise_level = 0.0;
    bool synthetic = true;
    bool partial = false;
    std::vector<FixedAngleEntry> entries;

    explicit FixedAngleDataset(const GridSpec& g) : grid(g), entries(g.size()) {}

    LameParams lame() const { return LameParams(lambda, mu); }
};

namespace detail {

// Quadrant of xi relative to the lines xi.theta = 0 and xi.theta_perp = 0,
// with a relative tolerance so near-axis lattice points are excluded rather
// than classified by rounding noise.  Returns -1 when excluded.
inline int fixed_angle_quadrant(Vec2 xi, Vec2 theta) {
    const double r = norm(xi);
    if (r == 0.0) return -1;
    const double tol = 1e-12 * r;
    const double t = dot(xi, theta);
    const double u = dot(xi, perp(theta));
    if (std::abs(t) <= tol || std::abs(u) <= tol) return -1;
    return (t < 0.0 ? 0 : 1) + (u < 0.0 ? 0 : 2);
}

// v = X + [ (Y - X) . b / (a . b) ] a : reconstructs a vector from its
// complement projection X = (I - Pi_a) v and projection Y = Pi_b v.
inline CVec2 oblique_combine(CVec2 X, CVec2 Y, Vec2 a, Vec2 b) {
    const double ab = dot(a, b);
    return X + scaled(a, dot(Y - X, b) / ab);
}

struct FixedEval {
    CVec2 datum;
    CVec2 scattered;
};

// p-regime building block over H_d: combine the p->p datum on the Ewald
// sphere with the p->s datum on the K-Ewald sphere.
inline FixedEval fixed_eval_p(const ForwardContext& ctx, Vec2 xi, Vec2 d) {
    const double K = ctx.lame.speed_ratio();
    const EwaldParams ew = ewald_params(xi, d, K);
    const ChannelEval pp = eval_channel(ctx, Channel::pp, ew.omega1, d, d, ew.zeta1);
    const ChannelEval ps = eval_channel(ctx, Channel::ps, ew.omega2, d, d, ew.zeta2);
    FixedEval r;
    r.datum = oblique_combine(ps.datum, pp.datum, ew.zeta2, ew.zeta1);
    r.scattered = oblique_combine(ps.scattered, pp.scattered, ew.zeta2, ew.zeta1);
    return r;
}

// s-regime building block over H_phi with polarization psi = perp_cw(phi):
// the s->s datum rides the Ewald sphere, the s->p datum the (1/K)-Ewald one.
inline FixedEval fixed_eval_s(const ForwardContext& ctx, Vec2 xi, Vec2 phi) {
    const double Kinv = 1.0 / ctx.lame.speed_ratio();
    const Vec2 psi = perp_cw(phi);
    const EwaldParams ew = ewald_params(xi, phi, Kinv);
    const ChannelEval ss = eval_channel(ctx, Channel::ss, ew.omega1, phi, psi, ew.zeta1);
    const ChannelEval sp = eval_channel(ctx, Channel::sp, ew.omega2, phi, psi, ew.zeta2);
    FixedEval r;
    r.datum = oblique_combine(ss.datum, sp.datum, ew.zeta1, ew.zeta2);
    r.scattered = oblique_combine(ss.scattered, sp.scattered, ew.zeta1, ew.zeta2);
    return r;
}

// Signed directions and assembly signs demanded by the quadrant of xi.
struct QuadrantPlan {
    Vec2 dir_th, dir_pe;     // incident direction for each column
    double sign_th, sign_pe;  // chi_H sign in the assembly
};

inline QuadrantPlan quadrant_plan(Vec2 xi, Vec2 theta, Regime regime) {
    const Vec2 tp = perp(theta);
    const double t = dot(xi, theta);
    const double u = dot(xi, tp);
    QuadrantPlan p;
    if (regime == Regime::p) {
        p.dir_th = (t < 0.0) ? theta : -theta;
        p.sign_th = (t < 0.0) ? 1.0 : -1.0;
        p.dir_pe = (u < 0.0) ? tp : -tp;
        p.sign_pe = (u < 0.0) ? 1.0 : -1.0;
    } else {
        // theta column from s-waves along +-theta_perp, theta_perp column
        // from s-waves along -+theta.
        p.dir_th = (u < 0.0) ? tp : -tp;
        p.sign_th = (u < 0.0) ? 1.0 : -1.0;
        p.dir_pe = (t > 0.0) ? -theta : theta;
        p.sign_pe = (t > 0.0) ? 1.0 : -1.0;
    }
    return p;
}

}  // namespace detail

// Public single-point evaluator: the assembled fixed-angle far-field vector
// v_inf for xi, before quadrant signs.
inline CVec2 v_inf_fixed(const ForwardContext& ctx, Vec2 xi, Vec2 dir, Regime regime) {
    return regime == Regime::p ? detail::fixed_eval_p(ctx, xi, dir).datum
                               : detail::fixed_eval_s(ctx, xi, dir).datum;
}

inline Regime default_regime(const LameParams& lame) {
    return lame.speed_ratio() >= 1.0 ? Regime::p : Regime::s;
}

inline void check_regime(const LameParams& lame, Regime regime) {
    const double K = lame.speed_ratio();
    if (std::abs(K - 1.0) <= 1e-12) return;  // either regime is admissible
    if (K > 1.0 && regime != Regime::p)
        throw std::invalid_argument("fixed-angle: K > 1 requires the p regime");
    if (K < 1.0 && regime != Regime::s)
        throw std::invalid_argument("fixed-angle: K < 1 requires the s regime");
}

inline FixedAngleDataset synthesize_fixed_angle(const ForwardContext& ctx, Vec2 theta,
                                                Regime regime, const ProgressFn& progress = {}) {
    if (!is_unit(theta)) throw std::invalid_argument("synthesize_fixed_angle: theta must be unit");
    check_regime(ctx.lame, regime);
    const GridSpec& g = ctx.data_grid;
    FixedAngleDataset data(g);
    data.lambda = ctx.lame.lambda;
    data.mu = ctx.lame.mu;
    data.theta = theta;
    data.regime = regime;

    std::vector<int> work;
    for (int a = 0; a < g.size(); ++a) {
        const int q = detail::fixed_angle_quadrant(g.freq(a), theta);
        data.entries[a].quad = static_cast<int8_t>(q);
        if (q >= 0) work.push_back(a);
    }
    std::atomic<int> done{0};
    std::atomic<bool> any_failed{false};
    parallel_for(static_cast<int>(work.size()), ctx.settings.threads, [&](int w) {
        const int a = work[w];
        const Vec2 xi = g.freq(a);
        const detail::QuadrantPlan plan = detail::quadrant_plan(xi, theta, regime);
        FixedAngleEntry& e = data.entries[a];
        try {
            if (regime == Regime::p) {
                e.v_th = detail::fixed_eval_p(ctx, xi, plan.dir_th).datum;
                e.v_pe = detail::fixed_eval_p(ctx, xi, plan.dir_pe).datum;
            } else {
                e.v_th = detail::fixed_eval_s(ctx, xi, plan.dir_th).datum;
                e.v_pe = detail::fixed_eval_s(ctx, xi, plan.dir_pe).datum;
            }
            e.ok = true;
        } catch (const SolverError&) {
            any_failed = true;  // entry stays absent; the dataset is marked partial
        }
        if (progress) progress(++done, static_cast<int>(work.size()));
    });
    data.partial = any_failed;
    return data;
}

// Fixed-angle Born approximation: quadrant-signed assembly of the two columns
// and inverse DFT; the coefficients on the two excluded axes are completed
// from the support constraint.
inline MatrixLoad born_fixed_angle(const FixedAngleDataset& data, double support_radius = -1.0) {
    const LameParams lame = data.lame();
    check_regime(lame, data.regime);
    const GridSpec& g = data.grid;
    if (support_radius <= 0.0) support_radius = 0.5 * g.half_side();
    const Vec2 theta = data.theta;
    const Vec2 tp = perp(theta);
    std::vector<detail::AssembledPoint> dhat(g.size());
    std::vector<char> assigned(g.size(), 0);
    for (int a = 0; a < g.size(); ++a) {
        const FixedAngleEntry& e = data.entries[a];
        if (e.quad < 0) continue;
        if (!e.ok)
            throw std::invalid_argument("born_fixed_angle: dataset is incomplete at a lattice point");
        const detail::QuadrantPlan plan = detail::quadrant_plan(g.freq(a), theta, data.regime);
        dhat[a] = detail::assemble_columns(plan.sign_th * e.v_th, plan.sign_pe * e.v_pe, theta, tp);
        assigned[a] = 1;
    }
    detail::fill_by_support(g, dhat, assigned, completion_radius(g, support_radius));
    return detail::invert_assembled(g, dhat);
}

// Error term E^theta(Q_n): per off-axis lattice point, the two partial error
// vectors demanded by its quadrant, each from two solves.
inline MatrixLoad error_term_fixed_angle(const ForwardContext& ctx, Vec2 theta, Regime regime,
                                         const ProgressFn& progress = {}) {
    check_regime(ctx.lame, regime);
    const GridSpec& g = ctx.data_grid;
    const Vec2 tp = perp(theta);
    std::vector<detail::AssembledPoint> dhat(g.size());
    std::vector<char> assigned(g.size(), 0);
    std::vector<int> work;
    for (int a = 0; a < g.size(); ++a)
        if (detail::fixed_angle_quadrant(g.freq(a), theta) >= 0) work.push_back(a);

    std::atomic<int> done{0};
    parallel_for(static_cast<int>(work.size()), ctx.settings.threads, [&](int w) {
        const int a = work[w];
        const Vec2 xi = g.freq(a);
        const detail::QuadrantPlan plan = detail::quadrant_plan(xi, theta, regime);
        auto eval = [&](Vec2 dir, const char* column) {
            try {
                return regime == Regime::p ? detail::fixed_eval_p(ctx, xi, dir).scattered
                                           : detail::fixed_eval_s(ctx, xi, dir).scattered;
            } catch (const SolverError& err) {
                const int n = g.nodes_per_axis();
                throw SolverError("error term failed at lattice point (" +
                                      std::to_string(g.centered(a / n)) + "," +
                                      std::to_string(g.centered(a % n)) + "), " + column +
                                      " column, direction (" + std::to_string(dir.x) + "," +
                                      std::to_string(dir.y) + "): " + err.what(),
                                  err.residual());
            }
        };
        const CVec2 e_th = eval(plan.dir_th, "theta");
        const CVec2 e_pe = eval(plan.dir_pe, "theta-perp");
        dhat[a] = detail::assemble_columns(plan.sign_th * e_th, plan.sign_pe * e_pe, theta, tp);
        assigned[a] = 1;
        if (progress) progress(++done, static_cast<int>(work.size()));
    });
    detail::fill_by_support(g, dhat, assigned, completion_radius(g, ctx.support_radius));
    return detail::invert_assembled(g, dhat);
}

inline IterationResult iterate_fixed_angle(const MatrixLoad& q_born, Vec2 theta, Regime regime,
                                           double support_radius, int M, const LameParams& lame,
                                           const SolverSettings& settings, bool early_stop = false,
                                           const ProgressFn& progress = {}) {
    if (M < 1) throw std::invalid_argument("iterate_fixed_angle: M must be >= 1");
    IterationResult res;
    MatrixLoad q_cut = q_born;
    restrict_to_ball(q_cut, support_radius);
    res.iterates.push_back(q_cut);
    for (int it = 1; it <= M; ++it) {
        try {
            const ForwardContext ctx(res.iterates.back(), lame, settings, support_radius);
            MatrixLoad e = error_term_fixed_angle(ctx, theta, regime, progress);
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
