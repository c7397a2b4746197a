#pragma once

#include "elsc/spectral.hpp"

namespace elsc::oracle {

// Spectral application of the Lame operator plus energy,
// (mu Delta I + (lambda+mu) grad div + omega^2 I) v, through the Fourier
// symbol -mu |xi|^2 I - (lambda+mu) xi xi^T + omega^2 I.
inline VectorField apply_lame_operator(const VectorField& v, const LameParams& lame, double omega) {
    const GridSpec& g = v.grid;
    const Fft2d fft(g.nodes_per_axis());
    std::vector<cd> cx = dft_forward(ScalarField(g, v.x), &fft);
    std::vector<cd> cy = dft_forward(ScalarField(g, v.y), &fft);
    const double w2 = omega * omega;
    for (int a = 0; a < g.size(); ++a) {
        const Vec2 xi = g.freq(a);
        const double s2 = dot(xi, xi);
        const cd divv = cx[a] * xi.x + cy[a] * xi.y;
        const cd nx = (w2 - lame.mu * s2) * cx[a] - (lame.lambda + lame.mu) * divv * xi.x;
        const cd ny = (w2 - lame.mu * s2) * cy[a] - (lame.lambda + lame.mu) * divv * xi.y;
        cx[a] = nx;
        cy[a] = ny;
    }
    VectorField r(g);
    r.x = dft_inverse(g, std::move(cx), &fft).v;
    r.y = dft_inverse(g, std::move(cy), &fft).v;
    return r;
}

}  // namespace elsc::oracle
