#pragma once

#include "elsc/lippmann_schwinger.hpp"

namespace elsc {

enum class Branch { p, s };

// Scattering amplitude of a computed scattered field v for incident wave ui:
// branch p gives (2mu+lambda)^{-1} Pi_zeta (Q(ui+v))^(k_p zeta), branch s
// gives mu^{-1} (I - Pi_zeta)(Q(ui+v))^(k_s zeta).  c^2 is the solve energy.
inline CVec2 far_field(const MatrixLoad& Q, const PlaneWave& ui, const VectorField& v,
                       Branch branch, Vec2 zeta, const LameParams& lame, double c) {
    if (!is_unit(zeta)) throw std::invalid_argument("far_field: zeta must be a unit vector");
    if (Q.grid != v.grid) throw std::invalid_argument("far_field: field/load grid mismatch");
    const GridSpec& g = Q.grid;
    VectorField qu(g);
    for (int a = 0; a < g.size(); ++a) {
        const cd phase = std::polar(1.0, ui.freq * dot(ui.dir, g.node(a)));
        const CVec2 total{phase * ui.pol.x + v.x[a], phase * ui.pol.y + v.y[a]};
        qu.set(a, Q.apply(a, total));
    }
    if (branch == Branch::p) {
        const CVec2 fhat = nuft_eval(qu, lame.kp(c) * zeta);
        return (1.0 / lame.p_modulus()) * project_dir(zeta, fhat);
    }
    const CVec2 fhat = nuft_eval(qu, lame.ks(c) * zeta);
    return (1.0 / lame.mu) * reject_dir(zeta, fhat);
}

// The four rescaled scattering data.  pp/ps ride on an incident p-wave
// e^{i omega theta.x} theta at energy (2mu+lambda) omega^2; sp/ss on an
// incident s-wave e^{i omega dir.x} pol at energy mu omega^2.  Receiver
// frequencies are omega zeta, K omega zeta, omega zeta / K and omega zeta.
enum class Channel { pp, ps, sp, ss };

struct ChannelEval {
    CVec2 datum;      // rescaled amplitude: linear part plus scattered part
    CVec2 scattered;  // the projected (Q v)^ contribution alone
};

inline ChannelEval eval_channel(const ForwardContext& ctx, Channel ch, double omega, Vec2 dir,
                                Vec2 pol, Vec2 zeta) {
    if (!(omega > 0.0)) throw std::invalid_argument("eval_channel: omega must be positive");
    if (!is_unit(zeta)) throw std::invalid_argument("eval_channel: zeta must be a unit vector");
    const bool p_incident = (ch == Channel::pp || ch == Channel::ps);
    const PlaneWave ui = p_incident ? plane_p_wave(dir, omega) : plane_s_wave(dir, pol, omega);
    const double c =
        p_incident ? std::sqrt(ctx.lame.p_modulus()) * omega : std::sqrt(ctx.lame.mu) * omega;
    const double K = ctx.lame.speed_ratio();

    double eval_scale = omega;
    if (ch == Channel::ps) eval_scale = K * omega;
    if (ch == Channel::sp) eval_scale = omega / K;
    const Vec2 xi_eval = eval_scale * zeta;
    const bool project_on = (ch == Channel::pp || ch == Channel::sp);

    const GridSpec& g = ctx.solve_grid;
    VectorField qu(g);
    for (int a = 0; a < g.size(); ++a) {
        const cd phase = std::polar(1.0, ui.freq * dot(ui.dir, g.node(a)));
        qu.set(a, ctx.Q.apply(a, {phase * ui.pol.x, phase * ui.pol.y}));
    }
    const CVec2 linear_raw = nuft_eval(qu, xi_eval);

    CVec2 scattered_raw{};
    if (!ctx.settings.linearize) {
        const LsSolution sol = solve_lippmann_schwinger(ctx, ui, c);
        for (int a = 0; a < g.size(); ++a) qu.set(a, ctx.Q.apply(a, sol.v.at(a)));
        scattered_raw = nuft_eval(qu, xi_eval);
    }

    ChannelEval out;
    if (project_on) {
        out.datum = project_dir(zeta, linear_raw + scattered_raw);
        out.scattered = project_dir(zeta, scattered_raw);
    } else {
        out.datum = reject_dir(zeta, linear_raw + scattered_raw);
        out.scattered = reject_dir(zeta, scattered_raw);
    }
    return out;
}

// One rescaled scattering datum; dir/pol describe the incident wave (pol is
// ignored for p-incidence).
inline CVec2 scattering_datum(const ForwardContext& ctx, Channel ch, double omega, Vec2 dir,
                              Vec2 pol, Vec2 zeta) {
    return eval_channel(ctx, ch, omega, dir, pol, zeta).datum;
}

}  // namespace elsc
