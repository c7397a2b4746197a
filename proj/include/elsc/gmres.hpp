#pragma once

#include <cmath>
#include <vector>

#include "elsc/types.hpp"

namespace elsc {

struct GmresResult {
    int iterations = 0;
    double residual = 0.0;  // relative to ||b||
    bool converged = false;
};

namespace detail {

inline double vec_norm(const std::vector<cd>& a) {
    double s = 0.0;
    for (const cd& z : a) s += std::norm(z);
    return std::sqrt(s);
}

inline cd vec_dot(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s{};
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace detail

// Restarted GMRES with modified Gram-Schmidt and complex Givens rotations.
// `apply` computes y = A x; x holds the initial guess on entry.
template <class Op>
GmresResult gmres(const Op& apply, const std::vector<cd>& b, std::vector<cd>& x, double tol,
                  int max_iter, int restart) {
    using detail::vec_dot;
    using detail::vec_norm;

    const size_t n = b.size();
    const double bnorm = vec_norm(b);
    GmresResult out;
    if (bnorm == 0.0) {
        x.assign(n, cd{});
        out.converged = true;
        return out;
    }
    const int m = std::max(1, restart);

    std::vector<std::vector<cd>> V(m + 1, std::vector<cd>(n));
    std::vector<std::vector<cd>> H(m + 1, std::vector<cd>(m, cd{}));
    std::vector<cd> g(m + 1), cs(m), sn(m), w(n), y(m);

    int iters = 0;
    while (iters < max_iter) {
        apply(x, w);  // w = A x
        for (size_t i = 0; i < n; ++i) w[i] = b[i] - w[i];
        double beta = vec_norm(w);
        out.residual = beta / bnorm;
        if (out.residual <= tol) {
            out.converged = true;
            out.iterations = iters;
            return out;
        }
        for (size_t i = 0; i < n; ++i) V[0][i] = w[i] / beta;
        std::fill(g.begin(), g.end(), cd{});
        g[0] = beta;

        int j = 0;
        for (; j < m && iters < max_iter; ++j, ++iters) {
            apply(V[j], w);
            for (int i = 0; i <= j; ++i) {
                H[i][j] = vec_dot(V[i], w);
                for (size_t t = 0; t < n; ++t) w[t] -= H[i][j] * V[i][t];
            }
            const double h_next = vec_norm(w);
            H[j + 1][j] = h_next;
            if (h_next > 0.0)
                for (size_t t = 0; t < n; ++t) V[j + 1][t] = w[t] / h_next;

            for (int i = 0; i < j; ++i) {
                const cd t1 = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
                H[i + 1][j] = -std::conj(sn[i]) * H[i][j] + cs[i] * H[i + 1][j];
                H[i][j] = t1;
            }
            const cd h1 = H[j][j];
            const double h2 = H[j + 1][j].real();
            const double t = std::sqrt(std::norm(h1) + h2 * h2);
            if (std::abs(h1) == 0.0) {
                cs[j] = 0.0;
                sn[j] = 1.0;
            } else {
                cs[j] = std::abs(h1) / t;
                sn[j] = (h1 / std::abs(h1)) * (h2 / t);
            }
            H[j][j] = cs[j] * h1 + sn[j] * h2;
            H[j + 1][j] = 0.0;
            g[j + 1] = -std::conj(sn[j]) * g[j];
            g[j] = cs[j] * g[j];

            out.residual = std::abs(g[j + 1]) / bnorm;
            if (out.residual <= tol || h_next == 0.0) {
                ++j;
                ++iters;
                break;
            }
        }

        // x += V y with R y = g solved by back substitution.
        for (int i = j - 1; i >= 0; --i) {
            cd s = g[i];
            for (int kk = i + 1; kk < j; ++kk) s -= H[i][kk] * y[kk];
            y[i] = s / H[i][i];
        }
        for (int i = 0; i < j; ++i)
            for (size_t t = 0; t < n; ++t) x[t] += y[i] * V[i][t];

        if (out.residual <= tol) {
            out.converged = true;
            out.iterations = iters;
            return out;
        }
    }
    out.iterations = iters;
    return out;
}

}  // namespace elsc
