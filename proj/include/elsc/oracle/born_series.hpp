#pragma once

#include "elsc/lippmann_schwinger.hpp"

namespace elsc::oracle {

// Truncated Neumann series of the Lippmann-Schwinger equation:
// v1 = R(Q u_i), v2 = v1 + R(Q v1).
inline VectorField born_series_oracle(const ForwardContext& ctx, const PlaneWave& ui, double c,
                                      int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("born_series_oracle: order must be 1 or 2");
    const GridSpec& g = ctx.solve_grid;
    const LameResolvent rop(ctx.tables, ctx.lame, c);
    const Fft2d fft(g.nodes_per_axis());

    auto resolvent_of_q_times = [&](const VectorField& w) {
        VectorField qw(g);
        for (int a = 0; a < g.size(); ++a) qw.set(a, ctx.Q.apply(a, w.at(a)));
        std::vector<cd> cx = dft_forward(ScalarField(g, qw.x), &fft);
        std::vector<cd> cy = dft_forward(ScalarField(g, qw.y), &fft);
        rop.apply_coeff(cx, cy);
        VectorField r(g);
        r.x = dft_inverse(g, std::move(cx), &fft).v;
        r.y = dft_inverse(g, std::move(cy), &fft).v;
        return r;
    };

    const VectorField uin = sample_plane_wave(g, ui);
    VectorField v1 = resolvent_of_q_times(uin);
    if (order == 1) return v1;
    return v1 + resolvent_of_q_times(v1);
}

}  // namespace elsc::oracle
