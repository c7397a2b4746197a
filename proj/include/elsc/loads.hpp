#pragma once

#include <array>
#include <string>

#include "elsc/grid.hpp"

namespace elsc {

// Built-in scalar test loads, all supported in |x| < 1.
inline double load_pot1(Vec2 x) {
    if (std::abs(x.x) + std::abs(x.y) < 0.2) return 1.2;
    const double r = norm(x);
    if (r > 0.6 && r < 0.8) return 1.0;
    return 0.0;
}

inline double load_pot2(Vec2 x) {
    const double d1 = (x.x - 0.5) * (x.x - 0.5) + x.y * x.y;
    const double d2 = (x.x + 0.5) * (x.x + 0.5) + (x.y - 0.4) * (x.y - 0.4);
    const double d3 = (x.x + 0.4) * (x.x + 0.4) + (x.y + 0.4) * (x.y + 0.4);
    return std::exp(-5.0 * d1) + 1.5 * std::exp(-4.0 * d2) + 2.0 * std::exp(-7.0 * d3 - 0.4);
}

inline double load_lipschitz_diamond(Vec2 x) {
    return std::max(0.0, 1.0 - (std::abs(x.x) + std::abs(x.y)));
}

// 2x2 pattern the scalar profile multiplies.
struct MatrixPattern {
    std::array<double, 4> w;  // a11 a12 a21 a22
};

inline MatrixPattern pattern_from_name(const std::string& name,
                                       const std::array<double, 4>& weights = {1, 1, 1, 1}) {
    if (name == "ones") return {{1.0, 1.0, 1.0, 1.0}};
    if (name == "identity") return {{1.0, 0.0, 0.0, 1.0}};
    if (name == "diagonal") return {{weights[0], 0.0, 0.0, weights[1]}};
    if (name == "general") return {{weights[0], weights[1], weights[2], weights[3]}};
    throw ConfigError("unknown matrix pattern: " + name);
}

struct LoadSpec {
    std::string name = "pot2";       // pot1 | pot2 | lipschitz-diamond | custom-samples
    double amplitude = 1.0;
    MatrixPattern pattern{{1, 1, 1, 1}};
    std::string sample_file;         // for custom-samples
};

template <class F>
MatrixLoad sample_load(const GridSpec& g, double amplitude, const MatrixPattern& pattern, F&& q) {
    MatrixLoad out(g);
    for (int a = 0; a < g.size(); ++a) {
        const double s = amplitude * q(g.node(a));
        for (int k = 0; k < 4; ++k) out.c[k][a] = s * pattern.w[k];
    }
    return out;
}

inline MatrixLoad make_load(const GridSpec& g, const LoadSpec& spec) {
    if (spec.name == "pot1") return sample_load(g, spec.amplitude, spec.pattern, load_pot1);
    if (spec.name == "pot2") return sample_load(g, spec.amplitude, spec.pattern, load_pot2);
    if (spec.name == "lipschitz-diamond")
        return sample_load(g, spec.amplitude, spec.pattern, load_lipschitz_diamond);
    throw ConfigError("unknown load: " + spec.name);
}

}  // namespace elsc
