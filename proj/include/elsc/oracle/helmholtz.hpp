#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>

#include "elsc/gmres.hpp"
#include "elsc/spectral.hpp"

namespace elsc::oracle {

// Reference scalar Helmholtz machinery, deliberately independent of the
// elastic solver: the truncated-kernel multiplier is obtained by adaptive
// quadrature of 2 pi int_0^rho (i/4) H0^1(k r) J0(s r) r dr with GSL Bessel
// functions, not from the closed form the production path uses.
namespace detail {

struct KernelIntegrand {
    double k, s;
    bool imag_part;
};

inline double kernel_integrand(double r, void* params) {
    const KernelIntegrand* p = static_cast<KernelIntegrand*>(params);
    const double j0s = gsl_sf_bessel_J0(p->s * r);
    if (p->imag_part) return 0.25 * gsl_sf_bessel_J0(p->k * r) * j0s * r;
    return -0.25 * gsl_sf_bessel_Y0(p->k * r) * j0s * r;
}

inline double integrate_part(double k, double s, double rho, bool imag_part,
                             gsl_integration_workspace* ws) {
    KernelIntegrand p{k, s, imag_part};
    gsl_function f;
    f.function = &kernel_integrand;
    f.params = &p;
    double result = 0.0, abserr = 0.0;
    const int status =
        gsl_integration_qags(&f, 0.0, rho, 1e-12, 1e-11, ws->limit, ws, &result, &abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error("oracle kernel quadrature failed");
    return result;
}

}  // namespace detail

// -Khat_rho(s) for the outgoing kernel at wavenumber k, by quadrature.
inline cd scalar_kernel_multiplier(double k, double s, double rho) {
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
    cd khat;
    try {
        const double re = 2.0 * M_PI * detail::integrate_part(k, s, rho, false, ws);
        const double im = 2.0 * M_PI * detail::integrate_part(k, s, rho, true, ws);
        khat = cd{re, im};
    } catch (...) {
        gsl_integration_workspace_free(ws);
        gsl_set_error_handler(old);
        throw;
    }
    gsl_integration_workspace_free(ws);
    gsl_set_error_handler(old);
    return -khat;
}

// Scalar outgoing resolvent of (Delta + k^2) realized by the periodized
// truncated kernel, multiplier built point by point with the quadrature above.
class ScalarResolvent {
public:
    ScalarResolvent(const GridSpec& g, double k, double rho) : grid_(g), sigma_(g.size()) {
        gsl_error_handler_t* old = gsl_set_error_handler_off();
        gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
        try {
            for (int a = 0; a < g.size(); ++a) {
                const double s = norm(g.freq(a));
                const double re = 2.0 * M_PI * detail::integrate_part(k, s, rho, false, ws);
                const double im = 2.0 * M_PI * detail::integrate_part(k, s, rho, true, ws);
                sigma_[a] = -cd{re, im};
            }
        } catch (...) {
            gsl_integration_workspace_free(ws);
            gsl_set_error_handler(old);
            throw;
        }
        gsl_integration_workspace_free(ws);
        gsl_set_error_handler(old);
    }

    ScalarField apply(const ScalarField& f) const {
        std::vector<cd> c = dft_forward(f);
        for (int a = 0; a < grid_.size(); ++a) c[a] *= sigma_[a];
        return dft_inverse(grid_, std::move(c));
    }

private:
    GridSpec grid_;
    std::vector<cd> sigma_;
};

struct ScalarSolveResult {
    ScalarField v;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Scattered solution of Delta u + k^2 u = q u for incident e^{i k dir.x}:
// v = R_k(q u_i) + R_k(q v), solved by GMRES on I - R_k q.
inline ScalarSolveResult helmholtz_ls_reference(const ScalarField& q, double k, Vec2 dir,
                                                double rho, double tol = 1e-9,
                                                int max_iter = 400) {
    if (!is_unit(dir)) throw std::invalid_argument("helmholtz_ls_reference: dir must be unit");
    const GridSpec& g = q.grid;
    const ScalarResolvent rop(g, k, rho);

    ScalarField qui(g);
    for (int a = 0; a < g.size(); ++a)
        qui.v[a] = q.v[a] * std::polar(1.0, k * dot(dir, g.node(a)));
    const ScalarField b = rop.apply(qui);

    auto apply_op = [&](const std::vector<cd>& in, std::vector<cd>& out) {
        ScalarField t(g);
        for (int a = 0; a < g.size(); ++a) t.v[a] = q.v[a] * in[a];
        t = rop.apply(t);
        out.resize(in.size());
        for (int a = 0; a < g.size(); ++a) out[a] = in[a] - t.v[a];
    };
    std::vector<cd> x = b.v;
    const GmresResult gr = gmres(apply_op, b.v, x, tol, max_iter, 40);

    ScalarSolveResult out{ScalarField(g, std::move(x))};
    out.residual = gr.residual;
    out.iterations = gr.iterations;
    out.converged = gr.converged;
    if (!gr.converged)
        throw SolverError("scalar Helmholtz reference solve did not converge", gr.residual);
    return out;
}

}  // namespace elsc::oracle
