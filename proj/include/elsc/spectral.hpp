#pragma once

#include <vector>

#include "elsc/fft.hpp"
#include "elsc/grid.hpp"

namespace elsc {

// Trigonometric-basis coefficients of a nodal field and back.  With the
// orthonormal basis phi_j(x) = e^{i pi j.x / R} / (2R) the coefficient and
// nodal representations satisfy 2R vhat = h^2 F_h v and v = (2R/h^2) F_h^{-1} vhat,
// with F_h the centered discrete Fourier transform.  Both arrays are stored in
// ascending-index order; conversion to FFT layout is a half-plane swap.
inline std::vector<cd> dft_forward(const ScalarField& f, const Fft2d* fft = nullptr) {
    const int n = f.grid.nodes_per_axis();
    std::vector<cd> c = f.v;
    shift_halves(c, n);
    if (fft) {
        fft->forward(c.data());
    } else {
        Fft2d local(n);
        local.forward(c.data());
    }
    shift_halves(c, n);
    const double scale = f.grid.mesh() * f.grid.mesh() / (2.0 * f.grid.half_side());
    for (cd& z : c) z *= scale;
    return c;
}

inline ScalarField dft_inverse(const GridSpec& grid, std::vector<cd> coef,
                               const Fft2d* fft = nullptr) {
    if (static_cast<int>(coef.size()) != grid.size())
        throw std::invalid_argument("dft_inverse: coefficient count does not match grid");
    const int n = grid.nodes_per_axis();
    shift_halves(coef, n);
    if (fft) {
        fft->backward(coef.data());
    } else {
        Fft2d local(n);
        local.backward(coef.data());
    }
    shift_halves(coef, n);
    const double scale = 1.0 / (2.0 * grid.half_side());
    for (cd& z : coef) z *= scale;
    return ScalarField(grid, std::move(coef));
}

// Rank-one projector onto a unit direction, Pi_zeta v = (v.zeta) zeta.
// The pairing is bilinear: complex components against a real direction.
inline CVec2 project_dir(Vec2 zeta, CVec2 v) {
    if (!is_unit(zeta)) throw std::invalid_argument("project_dir: zeta must be a unit vector");
    return scaled(zeta, dot(v, zeta));
}

inline CVec2 reject_dir(Vec2 zeta, CVec2 v) { return v - project_dir(zeta, v); }

enum class LerayPart { gradient, solenoidal };

// Frequency-wise splitting of a vector field into its curl-free and
// divergence-free parts.  The zero mode is assigned to the gradient part.
inline VectorField leray_apply(const VectorField& f, LerayPart part) {
    const GridSpec& g = f.grid;
    const Fft2d fft(g.nodes_per_axis());
    std::vector<cd> cx = dft_forward(ScalarField(g, f.x), &fft);
    std::vector<cd> cy = dft_forward(ScalarField(g, f.y), &fft);
    for (int a = 0; a < g.size(); ++a) {
        const Vec2 xi = g.freq(a);
        const double s = norm(xi);
        cd px, py;
        if (s == 0.0) {
            px = cx[a];
            py = cy[a];
        } else {
            const cd along = (cx[a] * xi.x + cy[a] * xi.y) / (s * s);
            px = along * xi.x;
            py = along * xi.y;
        }
        if (part == LerayPart::gradient) {
            cx[a] = px;
            cy[a] = py;
        } else {
            cx[a] -= px;
            cy[a] -= py;
        }
    }
    VectorField r(g);
    r.x = dft_inverse(g, std::move(cx), &fft).v;
    r.y = dft_inverse(g, std::move(cy), &fft).v;
    return r;
}

// Trapezoid quadrature of the Fourier integral of f (compactly supported in
// G_R) at an arbitrary frequency: fhat(xi) = h^2 sum_n f(x_n) e^{-i xi.x_n}.
// At lattice frequencies this reproduces 2R times the basis coefficient.
inline cd nuft_eval(const ScalarField& f, Vec2 xi) {
    const GridSpec& g = f.grid;
    const int n = g.nodes_per_axis();
    std::vector<cd> ph1(n), ph2(n);
    for (int i = 0; i < n; ++i) {
        const double t = g.centered(i) * g.mesh();
        ph1[i] = std::polar(1.0, -xi.x * t);
        ph2[i] = std::polar(1.0, -xi.y * t);
    }
    cd sum{};
    for (int i1 = 0; i1 < n; ++i1) {
        cd row{};
        const cd* base = f.v.data() + static_cast<size_t>(i1) * n;
        for (int i2 = 0; i2 < n; ++i2) row += base[i2] * ph2[i2];
        sum += ph1[i1] * row;
    }
    return g.mesh() * g.mesh() * sum;
}

inline CVec2 nuft_eval(const VectorField& f, Vec2 xi) {
    return {nuft_eval(ScalarField(f.grid, f.x), xi), nuft_eval(ScalarField(f.grid, f.y), xi)};
}

// Sobolev norm over the truncated index set: (sum_j (1+|j|)^{2 eta} |fhat_j|^2)^{1/2}.
inline double sobolev_norm(const ScalarField& f, double eta) {
    const std::vector<cd> c = dft_forward(f);
    const GridSpec& g = f.grid;
    const int n = g.nodes_per_axis();
    double s = 0.0;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
            const double j = std::hypot(double(g.centered(i1)), double(g.centered(i2)));
            s += std::pow(1.0 + j, 2.0 * eta) * std::norm(c[g.flat(i1, i2)]);
        }
    return std::sqrt(s);
}

// Trigonometric interpolation onto a grid refined by an integer factor
// (coefficient zero-padding).  Exact on T_h.
inline ScalarField refine_spectral(const ScalarField& f, int factor) {
    if (factor < 1) throw std::invalid_argument("refine_spectral: factor must be >= 1");
    if (factor == 1) return f;
    const GridSpec& g = f.grid;
    const GridSpec fine(g.half_side(), g.nodes_per_axis() * factor);
    std::vector<cd> c = dft_forward(f);
    std::vector<cd> cf(fine.size(), cd{});
    const int off = (fine.nodes_per_axis() - g.nodes_per_axis()) / 2;
    for (int i1 = 0; i1 < g.nodes_per_axis(); ++i1)
        for (int i2 = 0; i2 < g.nodes_per_axis(); ++i2)
            cf[fine.flat(i1 + off, i2 + off)] = c[g.flat(i1, i2)];
    return dft_inverse(fine, std::move(cf));
}

// Nodal zero-extension onto a grid whose box is larger by an integer factor
// at the same mesh width.  Node sets are nested, so values carry over.
inline ScalarField extend_box(const ScalarField& f, int factor) {
    if (factor < 1) throw std::invalid_argument("extend_box: factor must be >= 1");
    if (factor == 1) return f;
    const GridSpec& g = f.grid;
    const GridSpec big(g.half_side() * factor, g.nodes_per_axis() * factor);
    ScalarField r(big);
    const int off = (big.nodes_per_axis() - g.nodes_per_axis()) / 2;
    for (int i1 = 0; i1 < g.nodes_per_axis(); ++i1)
        for (int i2 = 0; i2 < g.nodes_per_axis(); ++i2)
            r.v[big.flat(i1 + off, i2 + off)] = f.v[g.flat(i1, i2)];
    return r;
}

}  // namespace elsc
