#pragma once

#include "elsc/types.hpp"

namespace elsc {

// Ewald and K-Ewald sphere parameters of a frequency xi in the half plane
// H_theta = { xi . theta < 0 }: the unique (omega1, zeta1), (omega2, zeta2)
// with xi = omega1 (zeta1 - theta) = omega2 (K zeta2 - theta).
struct EwaldParams {
    double omega1;
    Vec2 zeta1;
    double omega2;
    Vec2 zeta2;
};

inline EwaldParams ewald_params(Vec2 xi, Vec2 theta, double K) {
    if (!is_unit(theta)) throw std::invalid_argument("ewald_params: theta must be a unit vector");
    if (K < 1.0 - 1e-12)
        throw std::invalid_argument("ewald_params: K must be >= 1 (pass 1/K in the s-regime)");
    const double t = dot(xi, theta);
    if (!(t < 0.0)) throw std::invalid_argument("ewald_params: xi must lie in H_theta (xi.theta < 0)");
    const double r2 = dot(xi, xi);

    EwaldParams e;
    e.omega1 = -r2 / (2.0 * t);
    e.zeta1 = (-2.0 * t / r2) * xi + theta;

    const double disc = t * t + r2 * (K * K - 1.0);
    if (disc < 0.0) throw std::logic_error("ewald_params: negative discriminant");
    e.omega2 = r2 / (-t + std::sqrt(disc));
    e.zeta2 = (1.0 / K) * ((1.0 / e.omega2) * xi + theta);
    return e;
}

}  // namespace elsc
