#pragma once

#include "elsc/grid.hpp"

namespace elsc {

// error(n) = max_{i,j} ( h^2 sum_nodes | Q_ij - Re (Q_n)_ij |^2 )^{1/2},
// the reconstruction metric comparing a (real) load against the real part
// of an iterate.
inline double reconstruction_error(const MatrixLoad& q_true, const MatrixLoad& q_n) {
    if (q_true.grid != q_n.grid)
        throw std::invalid_argument("reconstruction_error: grid mismatch");
    double best = 0.0;
    for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int a = 0; a < q_true.grid.size(); ++a) {
            const double d = q_true.c[k][a].real() - q_n.c[k][a].real();
            s += d * d;
        }
        best = std::max(best, q_true.grid.mesh() * std::sqrt(s));
    }
    return best;
}

// Relative L2(G_R) distance between the real parts, over all components.
inline double relative_l2_error(const MatrixLoad& q_true, const MatrixLoad& q_n) {
    if (q_true.grid != q_n.grid) throw std::invalid_argument("relative_l2_error: grid mismatch");
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int a = 0; a < q_true.grid.size(); ++a) {
            const double d = q_true.c[k][a].real() - q_n.c[k][a].real();
            num += d * d;
            den += q_true.c[k][a].real() * q_true.c[k][a].real();
        }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace elsc
