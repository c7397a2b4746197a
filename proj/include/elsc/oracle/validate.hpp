#pragma once

#include <random>
#include <sstream>

#include "elsc/ewald.hpp"
#include "elsc/loads.hpp"
#include "elsc/oracle/born_series.hpp"
#include "elsc/oracle/helmholtz.hpp"
#include "elsc/oracle/lame_operator.hpp"

namespace elsc::oracle {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// Smooth source confined to |x| <~ 0.7: a sharp Gaussian times a random
// low-order polynomial, so both the field and its Fourier tail are tiny at
// the support radius and the grid Nyquist frequency.
inline VectorField smooth_bump_field(const GridSpec& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double cx[5], cy[5];
    for (double& c : cx) c = u(rng);
    for (double& c : cy) c = u(rng);
    VectorField f(g);
    for (int a = 0; a < g.size(); ++a) {
        const Vec2 x = g.node(a);
        const double env = std::exp(-20.0 * dot(x, x));
        const double p1 = cx[0] + cx[1] * x.x + cx[2] * x.y + cx[3] * x.x * x.y +
                          cx[4] * (x.x * x.x - x.y * x.y);
        const double p2 = cy[0] + cy[1] * x.x + cy[2] * x.y + cy[3] * x.x * x.y +
                          cy[4] * (x.x * x.x - x.y * x.y);
        f.x[a] = env * p1;
        f.y[a] = env * p2;
    }
    return f;
}

inline double rel_error_on_ball(const VectorField& a, const VectorField& b, double radius) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < a.grid.size(); ++i) {
        if (norm(a.grid.node(i)) > radius) continue;
        num += std::norm(a.x[i] - b.x[i]) + std::norm(a.y[i] - b.y[i]);
        den += std::norm(b.x[i]) + std::norm(b.y[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace detail

inline CheckResult check_dft_roundtrip() {
    const GridSpec g(2.0, 16);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(g);
    for (cd& z : f.v) z = {u(rng), u(rng)};
    const ScalarField back = dft_inverse(g, dft_forward(f));
    double err = 0.0, ref = 0.0;
    for (int a = 0; a < g.size(); ++a) {
        err += std::norm(back.v[a] - f.v[a]);
        ref += std::norm(f.v[a]);
    }
    const double rel = std::sqrt(err / ref);
    return {"dft-roundtrip", rel <= 1e-12, "relative error " + detail::fmt(rel)};
}

inline CheckResult check_nuft_lattice() {
    const GridSpec g(2.0, 16);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(g);
    for (cd& z : f.v) z = {u(rng), u(rng)};
    const std::vector<cd> c = dft_forward(f);
    double worst = 0.0;
    for (int a = 0; a < g.size(); a += 7) {
        const cd direct = nuft_eval(f, g.freq(a));
        worst = std::max(worst, std::abs(direct - 2.0 * g.half_side() * c[a]));
    }
    return {"nuft-lattice-consistency", worst <= 1e-10, "max deviation " + detail::fmt(worst)};
}

inline CheckResult check_leray_split() {
    const GridSpec g(2.0, 16);
    const VectorField f = detail::smooth_bump_field(g, 13);
    const VectorField grad = leray_apply(f, LerayPart::gradient);
    const VectorField sol = leray_apply(f, LerayPart::solenoidal);
    double err = 0.0, ref = 0.0;
    for (int a = 0; a < g.size(); ++a) {
        err += std::norm(grad.x[a] + sol.x[a] - f.x[a]) + std::norm(grad.y[a] + sol.y[a] - f.y[a]);
        ref += std::norm(f.x[a]) + std::norm(f.y[a]);
    }
    const double rel = std::sqrt(err / ref);
    return {"leray-parts-sum", rel <= 1e-12, "relative error " + detail::fmt(rel)};
}

inline CheckResult check_kernel_hat_quadrature() {
    double worst = 0.0;
    for (const double k : {0.7, 2.0, 5.3})
        for (const double s : {0.0, 1.0, 2.0, 4.9, 11.0}) {
            const cd closed = truncated_kernel_hat(k, s, 2.0);
            const cd quad = -scalar_kernel_multiplier(k, s, 2.0);
            worst = std::max(worst, std::abs(closed - quad));
        }
    return {"kernel-hat-closed-form", worst <= 1e-8, "max |closed - quadrature| " + detail::fmt(worst)};
}

inline CheckResult check_resolvent_residual() {
    const GridSpec g(2.0, 64);
    const LameParams lame(2.0, 1.0);
    const double c = 2.0;
    const VectorField f = detail::smooth_bump_field(g, 14);
    const VectorField v = resolvent_apply(f, lame, c, 1.0);
    const VectorField back = apply_lame_operator(v, lame, c);
    const double rel = detail::rel_error_on_ball(back, f, 1.0);
    return {"resolvent-residual", rel <= 1e-6, "relative residual " + detail::fmt(rel)};
}

inline CheckResult check_resolvent_decoupling() {
    const GridSpec g(2.0, 32);
    const LameParams lame(-1.0, 1.0);  // lambda + mu = 0
    const double c = 1.5;
    const VectorField f = detail::smooth_bump_field(g, 15);
    const VectorField v = resolvent_apply(f, lame, c, 1.0);
    // Independent scalar resolvent applied componentwise, scaled by 1/mu.
    const ScalarResolvent rop(g, lame.ks(c), 2.0);
    const ScalarField vx = rop.apply(ScalarField(g, f.x));
    const ScalarField vy = rop.apply(ScalarField(g, f.y));
    double num = 0.0, den = 0.0;
    for (int a = 0; a < g.size(); ++a) {
        num += std::norm(v.x[a] - vx.v[a] / lame.mu) + std::norm(v.y[a] - vy.v[a] / lame.mu);
        den += std::norm(v.x[a]) + std::norm(v.y[a]);
    }
    const double rel = std::sqrt(num / den);
    return {"resolvent-decoupling", rel <= 1e-8, "relative difference " + detail::fmt(rel)};
}

inline CheckResult check_scalar_crosscheck() {
    const GridSpec g(2.0, 24);
    const LameParams lame(-1.0, 1.0);
    const double omega = 1.2;  // energy c = omega; k_p = k_s = omega here
    MatrixLoad q = make_load(g, LoadSpec{"pot2", 0.5, pattern_from_name("identity"), ""});
    SolverSettings st;
    st.tol = 1e-10;
    const Vec2 theta{1.0, 0.0};
    const ForwardContext ctx(q, lame, st, 1.0);
    const LsSolution sol = solve_lippmann_schwinger(ctx, plane_p_wave(theta, lame.kp(omega)), omega);

    ScalarField qs(g);
    for (int a = 0; a < g.size(); ++a) qs.v[a] = q.c[0][a] / lame.mu;
    const ScalarSolveResult ref = helmholtz_ls_reference(qs, lame.ks(omega), theta, 2.0, 1e-10);
    double num = 0.0, den = 0.0;
    for (int a = 0; a < g.size(); ++a) {
        num += std::norm(sol.v.x[a] - theta.x * ref.v.v[a]);
        num += std::norm(sol.v.y[a] - theta.y * ref.v.v[a]);
        den += std::norm(ref.v.v[a]);
    }
    const double rel = std::sqrt(num / den);
    return {"scalar-ls-crosscheck", rel <= 1e-6, "relative difference " + detail::fmt(rel)};
}

inline CheckResult check_born_series_order() {
    const GridSpec g(2.0, 16);
    const LameParams lame(2.0, 1.0);
    const double omega = 1.0;
    const double c = std::sqrt(lame.p_modulus()) * omega;
    SolverSettings st;
    st.tol = 1e-11;
    const PlaneWave ui = plane_p_wave({1.0, 0.0}, omega);
    const MatrixLoad base = make_load(g, LoadSpec{"pot2", 1.0, pattern_from_name("ones"), ""});
    double rem[2];
    int idx = 0;
    for (const double eps : {0.1, 0.05}) {
        const MatrixLoad q = eps * base;
        const ForwardContext ctx(q, lame, st, 1.0);
        const LsSolution sol = solve_lippmann_schwinger(ctx, ui, c);
        const VectorField v1 = born_series_oracle(ctx, ui, c, 1);
        rem[idx++] = l2_norm(sol.v - v1);
    }
    const double ratio = rem[0] / rem[1];
    const bool ok = ratio > 4.0 / 1.5 && ratio < 4.0 * 1.5;
    return {"born-series-first-order", ok, "halving ratio " + detail::fmt(ratio) + " (expect ~4)"};
}

inline CheckResult check_ewald_identity() {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uk(1.0, 5.0);
    double worst = 0.0;
    int tested = 0;
    while (tested < 1000) {
        const Vec2 xi{4.0 * u(rng), 4.0 * u(rng)};
        const double ang = M_PI * u(rng);
        const Vec2 theta{std::cos(ang), std::sin(ang)};
        if (dot(xi, theta) >= -1e-3 || norm(xi) < 1e-3) continue;
        const double K = uk(rng);
        const EwaldParams e = ewald_params(xi, theta, K);
        const Vec2 r1 = e.omega1 * (e.zeta1 - theta) - xi;
        const Vec2 r2 = e.omega2 * (K * e.zeta2 - theta) - xi;
        worst = std::max(worst, std::max(norm(r1), norm(r2)) / norm(xi));
        worst = std::max(worst, std::abs(norm(e.zeta1) - 1.0));
        worst = std::max(worst, std::abs(norm(e.zeta2) - 1.0));
        if (dot(e.zeta1, e.zeta2) < 1.0 / K - 1e-10) worst = std::max(worst, 1.0);
        ++tested;
    }
    return {"ewald-representation", worst <= 1e-10, "max defect " + detail::fmt(worst)};
}

inline std::vector<CheckResult> run_validation() {
    std::vector<CheckResult> results;
    results.push_back(check_dft_roundtrip());
    results.push_back(check_nuft_lattice());
    results.push_back(check_leray_split());
    results.push_back(check_kernel_hat_quadrature());
    results.push_back(check_ewald_identity());
    results.push_back(check_resolvent_residual());
    results.push_back(check_resolvent_decoupling());
    results.push_back(check_born_series_order());
    results.push_back(check_scalar_crosscheck());
    return results;
}

}  // namespace elsc::oracle
