#pragma once

#include <memory>
#include <optional>
#include <string>

#include "elsc/gmres.hpp"
#include "elsc/resolvent.hpp"

namespace elsc {

// Incident plane wave e^{i freq dir.x} pol.  For p-waves pol = dir; for
// s-waves pol is a unit vector orthogonal to dir.
struct PlaneWave {
    Vec2 dir;
    Vec2 pol;
    double freq;
};

inline PlaneWave plane_p_wave(Vec2 dir, double freq) {
    if (!is_unit(dir)) throw std::invalid_argument("plane_p_wave: direction must be unit");
    return {dir, dir, freq};
}

inline PlaneWave plane_s_wave(Vec2 dir, Vec2 pol, double freq) {
    if (!is_unit(dir) || !is_unit(pol) || std::abs(dot(dir, pol)) > 1e-10)
        throw std::invalid_argument("plane_s_wave: direction and polarization must be orthonormal");
    return {dir, pol, freq};
}

struct SolverSettings {
    double tol = 1e-8;       // relative residual target
    int max_iter = 300;      // total operator applications allowed
    double pad_factor = 2.0; // periodization box side over 2*support_radius
    int restart = 30;        // GMRES restart length
    int oversample = 1;      // solver-grid refinement over the data grid
    bool linearize = false;  // suppress scattered fields (Born linearization)
    int threads = 0;         // 0 = hardware concurrency
    bool half_lattice = false;  // synthesize half the lattice, reflect Hermitian

    void validate() const {
        if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("settings: tol must be in (0,1)");
        if (max_iter < 1) throw std::invalid_argument("settings: max_iter must be >= 1");
        if (!(pad_factor >= 2.0)) throw std::invalid_argument("settings: pad_factor must be >= 2");
        if (restart < 1) throw std::invalid_argument("settings: restart must be >= 1");
        if (oversample < 1) throw std::invalid_argument("settings: oversample must be >= 1");
    }
};

struct LsSolution {
    VectorField v;
    double residual = 0.0;
    int iterations = 0;
    bool born_iteration = false;  // solved by plain fixed point
};

// State shared by the many forward solves of one synthesis or error-term
// pass: the load embedded on the solver grid and the lattice kernel tables.
// Immutable after construction, safe to share across threads.
class ForwardContext {
public:
    ForwardContext(const MatrixLoad& Q_data, const LameParams& lame_,
                   const SolverSettings& settings_, double support_radius_)
        : data_grid(Q_data.grid),
          solve_grid(derive_grid(Q_data.grid, settings_, support_radius_)),
          Q(embed(Q_data, solve_grid)),
          lame(lame_),
          settings(settings_),
          support_radius(support_radius_),
          tables(solve_grid, 2.0 * support_radius_) {}

    GridSpec data_grid;
    GridSpec solve_grid;
    MatrixLoad Q;
    LameParams lame;
    SolverSettings settings;
    double support_radius;
    KernelTables tables;

private:
    static GridSpec derive_grid(const GridSpec& g, const SolverSettings& st, double r_supp) {
        st.validate();
        if (!(r_supp > 0.0)) throw std::invalid_argument("support_radius must be positive");
        int box = 1;
        while (box * g.half_side() < st.pad_factor * r_supp - 1e-12) ++box;
        return GridSpec(box * g.half_side(), box * st.oversample * g.nodes_per_axis());
    }

    static MatrixLoad embed(const MatrixLoad& q, const GridSpec& target) {
        if (q.grid == target) return q;
        const int ov = target.nodes_per_axis() / (q.grid.nodes_per_axis() *
                       static_cast<int>(std::lround(target.half_side() / q.grid.half_side())));
        const int box = static_cast<int>(std::lround(target.half_side() / q.grid.half_side()));
        MatrixLoad out(target);
        for (int k = 0; k < 4; ++k) {
            ScalarField f(q.grid, q.c[k]);
            f = refine_spectral(f, ov);
            f = extend_box(f, box);
            out.c[k] = std::move(f.v);
        }
        return out;
    }
};

// Nodal samples of a plane wave.
inline VectorField sample_plane_wave(const GridSpec& g, const PlaneWave& w) {
    VectorField u(g);
    for (int a = 0; a < g.size(); ++a) {
        const cd phase = std::polar(1.0, w.freq * dot(w.dir, g.node(a)));
        u.x[a] = phase * w.pol.x;
        u.y[a] = phase * w.pol.y;
    }
    return u;
}

namespace detail {

// Workspace for v -> v - R(Q v) on packed (x|y) coefficient-free nodal vectors.
struct LsOperator {
    const MatrixLoad& Q;
    const LameResolvent& rop;
    const Fft2d& fft;
    mutable std::vector<cd> cx, cy;

    LsOperator(const MatrixLoad& q, const LameResolvent& r, const Fft2d& f)
        : Q(q), rop(r), fft(f), cx(q.grid.size()), cy(q.grid.size()) {}

    // out = R(Q in); in/out are packed nodal vectors of length 2 N^2.
    void resolvent_of_product(const std::vector<cd>& in, std::vector<cd>& out) const {
        const GridSpec& g = Q.grid;
        const int n = g.size();
        for (int a = 0; a < n; ++a) {
            const CVec2 w = Q.apply(a, {in[a], in[n + a]});
            cx[a] = w.x;
            cy[a] = w.y;
        }
        apply_resolvent_nodal(out);
    }

    // out = R(cx, cy) where cx, cy already hold nodal source values.
    void apply_resolvent_nodal(std::vector<cd>& out) const {
        const GridSpec& g = Q.grid;
        const int n = g.size();
        const int na = g.nodes_per_axis();
        const double fscale = g.mesh() * g.mesh() / (2.0 * g.half_side());
        const double bscale = 1.0 / (2.0 * g.half_side());
        shift_halves(cx, na);
        shift_halves(cy, na);
        fft.forward(cx.data());
        fft.forward(cy.data());
        shift_halves(cx, na);
        shift_halves(cy, na);
        for (cd& z : cx) z *= fscale;
        for (cd& z : cy) z *= fscale;
        rop.apply_coeff(cx, cy);
        shift_halves(cx, na);
        shift_halves(cy, na);
        fft.backward(cx.data());
        fft.backward(cy.data());
        shift_halves(cx, na);
        shift_halves(cy, na);
        out.resize(2 * static_cast<size_t>(n));
        for (int a = 0; a < n; ++a) {
            out[a] = bscale * cx[a];
            out[n + a] = bscale * cy[a];
        }
    }

    void operator()(const std::vector<cd>& in, std::vector<cd>& out) const {
        resolvent_of_product(in, out);
        for (size_t i = 0; i < in.size(); ++i) out[i] = in[i] - out[i];
    }
};

}  // namespace detail

// Solve v = R(c^2+i0)(Q u_i) + R(c^2+i0)(Q v) on the context's solver grid.
// Starts with plain fixed-point (Born) iteration and falls back to restarted
// GMRES unless the first two corrections contract by at least 2x.
inline LsSolution solve_lippmann_schwinger(const ForwardContext& ctx, const PlaneWave& ui,
                                           double c) {
    const GridSpec& g = ctx.solve_grid;
    const int n = g.size();
    const LameResolvent rop(ctx.tables, ctx.lame, c);
    const Fft2d fft(g.nodes_per_axis());
    detail::LsOperator op(ctx.Q, rop, fft);

    // b = R(Q u_i)
    const VectorField uin = sample_plane_wave(g, ui);
    std::vector<cd> b;
    {
        for (int a = 0; a < n; ++a) {
            const CVec2 w = ctx.Q.apply(a, uin.at(a));
            op.cx[a] = w.x;
            op.cy[a] = w.y;
        }
        op.apply_resolvent_nodal(b);
    }

    LsSolution sol{VectorField(g)};
    const double bnorm = detail::vec_norm(b);
    if (bnorm == 0.0) return sol;  // zero load or orthogonal data: v = 0

    const SolverSettings& st = ctx.settings;
    std::vector<cd> v = b, step(2 * static_cast<size_t>(n));
    // Fixed-point corrections: step_m = (RQ)^m b; residual of the current
    // iterate equals the next correction's norm.
    op.resolvent_of_product(v, step);
    double d_prev = detail::vec_norm(step);
    int iters = 1;
    bool contracting = d_prev <= 0.5 * bnorm;
    if (contracting) {
        while (iters < st.max_iter) {
            for (size_t i = 0; i < v.size(); ++i) v[i] += step[i];
            if (d_prev <= st.tol * bnorm) break;
            op.resolvent_of_product(step, step);
            ++iters;
            const double d = detail::vec_norm(step);
            if (d > 0.9 * d_prev) {  // stagnating; hand over to GMRES
                contracting = false;
                break;
            }
            d_prev = d;
        }
    }
    if (contracting && d_prev <= st.tol * bnorm) {
        sol.born_iteration = true;
        sol.iterations = iters;
        sol.residual = d_prev / bnorm;
    } else {
        GmresResult gr = gmres([&op](const std::vector<cd>& in, std::vector<cd>& out) { op(in, out); },
                               b, v, st.tol, st.max_iter, st.restart);
        sol.iterations = gr.iterations;
        if (!gr.converged)
            throw SolverError("Lippmann-Schwinger solve did not converge: residual " +
                                  std::to_string(gr.residual) + " after " +
                                  std::to_string(gr.iterations) + " iterations",
                              gr.residual);
        // The residual contract is asserted, not assumed: recompute it from
        // the returned field rather than trusting the GMRES recurrence.
        op(v, step);
        for (size_t i = 0; i < step.size(); ++i) step[i] = b[i] - step[i];
        sol.residual = detail::vec_norm(step) / bnorm;
        if (sol.residual > 2.0 * st.tol)
            throw SolverError("Lippmann-Schwinger residual recomputation failed the contract",
                              sol.residual);
    }
    for (int a = 0; a < n; ++a) {
        sol.v.x[a] = v[a];
        sol.v.y[a] = v[n + a];
    }
    return sol;
}

// Convenience entry point on the load's own grid.
inline LsSolution solve_lippmann_schwinger(const MatrixLoad& Q, const PlaneWave& ui,
                                           const LameParams& lame, double c,
                                           const SolverSettings& st, double support_radius) {
    const ForwardContext ctx(Q, lame, st, support_radius);
    return solve_lippmann_schwinger(ctx, ui, c);
}

}  // namespace elsc
