#pragma once

#include <cmath>
#include <vector>

#include "elsc/spectral.hpp"

namespace elsc {

// Fourier transform (plain convention, fhat(xi) = int f e^{-i xi.x} dx) of the
// truncated outgoing Helmholtz kernel chi(|x| <= rho) (i/4) H0^1(k|x|):
//
//   Khat(s) = [ -1 + (i pi rho / 2) (k J0(s rho) H1^1(k rho) - s J1(s rho) H0^1(k rho)) ]
//             / (k^2 - s^2),
//
// an entire function of s; at s = k the removable singularity evaluates to
// (i pi rho^2 / 4) [ J0 H0^1 + J1 H1^1 ](k rho).  Periodizing a truncated
// kernel on the computational box turns convolution into multiplication by
// exactly these values on the frequency lattice.
inline cd truncated_kernel_hat(double k, double s, double rho) {
    if (!(k > 0.0)) throw std::invalid_argument("truncated_kernel_hat: k must be positive");
    const double j0k = std::cyl_bessel_j(0, k * rho);
    const double j1k = std::cyl_bessel_j(1, k * rho);
    const cd h0{j0k, std::cyl_neumann(0, k * rho)};
    const cd h1{j1k, std::cyl_neumann(1, k * rho)};
    if (std::abs(s - k) <= 1e-10 * std::max(1.0, k)) {
        return cd{0.0, M_PI * rho * rho / 4.0} * (j0k * h0 + j1k * h1);
    }
    const double j0s = std::cyl_bessel_j(0, s * rho);
    const double j1s = (s == 0.0) ? 0.0 : std::cyl_bessel_j(1, s * rho);
    const cd w = k * j0s * h1 - s * j1s * h0;
    return (cd{-1.0, 0.0} + cd{0.0, M_PI * rho / 2.0} * w) / ((k - s) * (k + s));
}

// Lattice data reused by every multiplier assembly on one grid: |xi_j|,
// J0/J1/J2 at |xi_j| rho, and the unit frequency directions.
struct KernelTables {
    GridSpec grid;
    double rho;
    std::vector<double> s, j0, j1, j2, ux, uy;

    KernelTables(const GridSpec& g, double rho_) : grid(g), rho(rho_) {
        if (!(rho > 0.0)) throw std::invalid_argument("KernelTables: rho must be positive");
        const int n = g.size();
        s.resize(n);
        j0.resize(n);
        j1.resize(n);
        j2.resize(n);
        ux.assign(n, 0.0);
        uy.assign(n, 0.0);
        for (int a = 0; a < n; ++a) {
            const Vec2 xi = g.freq(a);
            const double sa = norm(xi);
            s[a] = sa;
            j0[a] = std::cyl_bessel_j(0, sa * rho);
            j1[a] = (sa == 0.0) ? 0.0 : std::cyl_bessel_j(1, sa * rho);
            j2[a] = (sa == 0.0) ? 0.0 : std::cyl_bessel_j(2, sa * rho);
            if (sa > 0.0) {
                ux[a] = xi.x / sa;
                uy[a] = xi.y / sa;
            }
        }
    }
};

namespace detail {

// truncated_kernel_hat evaluated from precomputed J0/J1 tables.
inline cd kernel_hat_tabled(const KernelTables& t, int a, double k, cd h0k, cd h1k, double j0k,
                            double j1k) {
    const double rho = t.rho;
    const double sa = t.s[a];
    if (std::abs(sa - k) <= 1e-10 * std::max(1.0, k)) {
        return cd{0.0, M_PI * rho * rho / 4.0} * (j0k * h0k + j1k * h1k);
    }
    const cd w = k * t.j0[a] * h1k - sa * t.j1[a] * h0k;
    return (cd{-1.0, 0.0} + cd{0.0, M_PI * rho / 2.0} * w) / ((k - sa) * (k + sa));
}

}  // namespace detail

// Scalar resolvent multiplier sigma_k = -Khat over the lattice.
inline std::vector<cd> helmholtz_multiplier(const KernelTables& t, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("helmholtz_multiplier: k must be positive");
    const double j0k = std::cyl_bessel_j(0, k * t.rho);
    const double j1k = std::cyl_bessel_j(1, k * t.rho);
    const cd h0{j0k, std::cyl_neumann(0, k * t.rho)};
    const cd h1{j1k, std::cyl_neumann(1, k * t.rho)};
    std::vector<cd> sigma(t.s.size());
    for (int a = 0; a < static_cast<int>(t.s.size()); ++a)
        sigma[a] = -detail::kernel_hat_tabled(t, a, k, h0, h1, j0k, j1k);
    return sigma;
}

// Outgoing resolvent of the Lame operator at energy c^2, realized by
// periodized convolution with the truncated elastic Green tensor
//
//   G(z) = mu^{-1} Phi_{k_s}(z) I + omega^{-2} grad grad [Phi_{k_s} - Phi_{k_p}](z),
//
// cut at |z| <= rho.  Its Fourier transform has the closed form
//
//   FT[chi G](xi) = mu^{-1} Khat_{k_s}(s) I + omega^{-2} T(xi),
//   T(xi) = pi rho psi'(rho) (J0 + J2)(s rho) I
//         + [ 2 pi rho ( s psi(rho) J1(s rho) - psi'(rho) J2(s rho) )
//             - s^2 (Khat_{k_s} - Khat_{k_p})(s) ] unit(xi) unit(xi)^T,
//
// where psi = Phi_{k_s} - Phi_{k_p} (the ring terms come from integrating
// grad grad psi by parts over the truncation disc).  The resolvent multiplier
// is -FT[chi G] on the frequency lattice; convolution with the truncated
// tensor reproduces the exact outgoing solution on the source support, and
// at lambda = -mu (k_p = k_s) it collapses to the scalar Helmholtz kernel
// componentwise.
class LameResolvent {
public:
    LameResolvent(const KernelTables& tables, const LameParams& lame, double c)
        : tables_(&tables), iso_(tables.s.size()), aniso_(tables.s.size()) {
        const double rho = tables.rho;
        const double kp = lame.kp(c);
        const double ks = lame.ks(c);
        const double w2 = c * c;

        const double j0p = std::cyl_bessel_j(0, kp * rho), j1p = std::cyl_bessel_j(1, kp * rho);
        const double j0s = std::cyl_bessel_j(0, ks * rho), j1s = std::cyl_bessel_j(1, ks * rho);
        const cd h0p{j0p, std::cyl_neumann(0, kp * rho)}, h1p{j1p, std::cyl_neumann(1, kp * rho)};
        const cd h0s{j0s, std::cyl_neumann(0, ks * rho)}, h1s{j1s, std::cyl_neumann(1, ks * rho)};

        // psi(rho) and psi'(rho) for psi = (i/4)(H0(ks r) - H0(kp r)).
        const cd quarter_i{0.0, 0.25};
        const cd psi_rho = quarter_i * (h0s - h0p);
        const cd dpsi_rho = -quarter_i * (ks * h1s - kp * h1p);

        for (size_t a = 0; a < tables.s.size(); ++a) {
            const double s = tables.s[a];
            const cd khat_p = detail::kernel_hat_tabled(tables, static_cast<int>(a), kp, h0p, h1p,
                                                        j0p, j1p);
            const cd khat_s = detail::kernel_hat_tabled(tables, static_cast<int>(a), ks, h0s, h1s,
                                                        j0s, j1s);
            const cd t_iso = M_PI * rho * dpsi_rho * (tables.j0[a] + tables.j2[a]);
            const cd t_aniso = 2.0 * M_PI * rho * (s * psi_rho * tables.j1[a] - dpsi_rho * tables.j2[a]) -
                               s * s * (khat_s - khat_p);
            iso_[a] = -(khat_s / lame.mu + t_iso / w2);
            aniso_[a] = -t_aniso / w2;
        }
    }

    // Coefficient arrays of the source, overwritten with those of R f.
    void apply_coeff(std::vector<cd>& cx, std::vector<cd>& cy) const {
        const KernelTables& t = *tables_;
        for (size_t a = 0; a < cx.size(); ++a) {
            const cd along = cx[a] * t.ux[a] + cy[a] * t.uy[a];
            const cd nx = iso_[a] * cx[a] + aniso_[a] * along * t.ux[a];
            const cd ny = iso_[a] * cy[a] + aniso_[a] * along * t.uy[a];
            cx[a] = nx;
            cy[a] = ny;
        }
    }

    const GridSpec& grid() const { return tables_->grid; }

private:
    const KernelTables* tables_;
    std::vector<cd> iso_, aniso_;
};

// Nodal-in, nodal-out application; rho = 2 * support_radius keeps the
// periodized convolution exact on the support ball.
inline VectorField resolvent_apply(const VectorField& f, const LameParams& lame, double c,
                                   double support_radius) {
    const GridSpec& g = f.grid;
    if (!(support_radius > 0.0) || 2.0 * support_radius > g.half_side() + 1e-12)
        throw std::invalid_argument("resolvent_apply: need 0 < support_radius <= R/2");
    const KernelTables tables(g, 2.0 * support_radius);
    const LameResolvent rop(tables, lame, c);
    const Fft2d fft(g.nodes_per_axis());
    std::vector<cd> cx = dft_forward(ScalarField(g, f.x), &fft);
    std::vector<cd> cy = dft_forward(ScalarField(g, f.y), &fft);
    rop.apply_coeff(cx, cy);
    VectorField r(g);
    r.x = dft_inverse(g, std::move(cx), &fft).v;
    r.y = dft_inverse(g, std::move(cy), &fft).v;
    return r;
}

}  // namespace elsc
