#pragma once

#include <random>

#include "elsc/backscatter.hpp"
#include "elsc/fixed_angle.hpp"

namespace elsc {

enum class NoiseModel { per_datum, global };

namespace detail {

inline CVec2 draw_direction(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
    CVec2 go{{normal(rng), normal(rng)}, {normal(rng), normal(rng)}};
    const double n = norm(go);
    if (n == 0.0) return {{1.0, 0.0}, {0.0, 0.0}};
    return (1.0 / n) * go;
}

// Apply relative noise to a flat list of data vectors.  per_datum perturbs
// each vector by exactly `level` of its own norm; global rescales one
// Gaussian draw so the dataset-level relative perturbation is `level`.
inline void perturb(std::vector<CVec2*>& data, double level, uint64_t seed, NoiseModel model) {
    if (level < 0.0 || level >= 1.0) throw std::invalid_argument("noise level must be in [0,1)");
    if (level == 0.0) return;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (model == NoiseModel::per_datum) {
        for (CVec2* d : data) {
            const CVec2 g = draw_direction(rng, normal);
            *d = *d + (level * norm(*d)) * g;
        }
        return;
    }
    std::vector<CVec2> g(data.size());
    double data_norm2 = 0.0, g_norm2 = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
        g[i] = {{normal(rng), normal(rng)}, {normal(rng), normal(rng)}};
        const double dn = norm(*data[i]);
        data_norm2 += dn * dn;
        const double gn = norm(g[i]);
        g_norm2 += gn * gn;
    }
    if (g_norm2 == 0.0 || data_norm2 == 0.0) return;
    const double s = level * std::sqrt(data_norm2 / g_norm2);
    for (size_t i = 0; i < data.size(); ++i) *data[i] = *data[i] + s * g[i];
}

}  // namespace detail

inline void add_noise(BackscatterDataset& data, double level, uint64_t seed,
                      NoiseModel model = NoiseModel::per_datum) {
    std::vector<CVec2*> vecs;
    for (auto& e : data.entries) {
        if (!e.ok) continue;
        vecs.push_back(&e.vp);
        vecs.push_back(&e.vs);
    }
    detail::perturb(vecs, level, seed, model);
    if (level > 0.0) {
        data.noise_level = level;
        data.synthetic = true;
    }
}

inline void add_noise(FixedAngleDataset& data, double level, uint64_t seed,
                      NoiseModel model = NoiseModel::per_datum) {
    std::vector<CVec2*> vecs;
    for (auto& e : data.entries) {
        if (!e.ok || e.quad < 0) continue;
        vecs.push_back(&e.v_th);
        vecs.push_back(&e.v_pe);
    }
    detail::perturb(vecs, level, seed, model);
    if (level > 0.0) data.noise_level = level;
}

}  // namespace elsc
