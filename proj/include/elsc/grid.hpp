#pragma once

#include <array>
#include <vector>

#include "elsc/types.hpp"

namespace elsc {

// Uniform mesh on the square G_R = (-R, R)^2 with N nodes per axis and
// mesh width h = 2R/N.  Node index j runs over Z_h^2, i.e. -N/2 <= j_k < N/2,
// stored in ascending coordinate order with x2 fastest.  The frequency
// lattice carries the angular convention xi_j = (pi/R) j.
class GridSpec {
public:
    GridSpec(double R, int N) : R_(R), N_(N) {
        if (!(R > 0.0)) throw std::invalid_argument("GridSpec: R must be positive");
        if (N < 2 || N % 2 != 0)
            throw std::invalid_argument("GridSpec: N must be an even integer >= 2");
        h_ = 2.0 * R / N;
    }

    double half_side() const { return R_; }
    int nodes_per_axis() const { return N_; }
    double mesh() const { return h_; }
    int size() const { return N_ * N_; }

    int flat(int i1, int i2) const { return i1 * N_ + i2; }
    // Centered index component from an array index in [0, N).
    int centered(int i) const { return i - N_ / 2; }

    Vec2 node(int i1, int i2) const {
        return {centered(i1) * h_, centered(i2) * h_};
    }
    Vec2 node(int a) const { return node(a / N_, a % N_); }

    Vec2 freq(int i1, int i2) const {
        const double s = M_PI / R_;
        return {centered(i1) * s, centered(i2) * s};
    }
    Vec2 freq(int a) const { return freq(a / N_, a % N_); }

    bool operator==(const GridSpec& o) const { return R_ == o.R_ && N_ == o.N_; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

private:
    double R_;
    int N_;
    double h_;
};

inline GridSpec make_grid(double R, int N) { return GridSpec(R, N); }

struct ScalarField {
    GridSpec grid;
    std::vector<cd> v;

    explicit ScalarField(const GridSpec& g) : grid(g), v(g.size()) {}
    ScalarField(const GridSpec& g, std::vector<cd> values) : grid(g), v(std::move(values)) {
        if (static_cast<int>(v.size()) != g.size())
            throw std::invalid_argument("ScalarField: value count does not match grid");
    }
};

struct VectorField {
    GridSpec grid;
    std::vector<cd> x, y;

    explicit VectorField(const GridSpec& g) : grid(g), x(g.size()), y(g.size()) {}

    CVec2 at(int a) const { return {x[a], y[a]}; }
    void set(int a, CVec2 w) {
        x[a] = w.x;
        y[a] = w.y;
    }
};

// Complex 2x2 matrix field: the load Q and its reconstructions.
struct MatrixLoad {
    GridSpec grid;
    std::array<std::vector<cd>, 4> c;  // a11, a12, a21, a22

    explicit MatrixLoad(const GridSpec& g) : grid(g) {
        for (auto& comp : c) comp.assign(g.size(), cd{});
    }

    std::vector<cd>& component(int i, int j) { return c[2 * i + j]; }
    const std::vector<cd>& component(int i, int j) const { return c[2 * i + j]; }

    // Pointwise matrix-vector product at node a.
    CVec2 apply(int a, CVec2 w) const {
        return {c[0][a] * w.x + c[1][a] * w.y, c[2][a] * w.x + c[3][a] * w.y};
    }
};

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    if (a.grid != b.grid) throw std::invalid_argument("VectorField: grid mismatch");
    VectorField r(a.grid);
    for (int i = 0; i < a.grid.size(); ++i) {
        r.x[i] = a.x[i] + b.x[i];
        r.y[i] = a.y[i] + b.y[i];
    }
    return r;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    if (a.grid != b.grid) throw std::invalid_argument("VectorField: grid mismatch");
    VectorField r(a.grid);
    for (int i = 0; i < a.grid.size(); ++i) {
        r.x[i] = a.x[i] - b.x[i];
        r.y[i] = a.y[i] - b.y[i];
    }
    return r;
}

// Discrete L^2(G_R) norm, h * l2 of the nodal values.
inline double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (const cd& z : f.v) s += std::norm(z);
    return f.grid.mesh() * std::sqrt(s);
}

inline double l2_norm(const VectorField& f) {
    double s = 0.0;
    for (int i = 0; i < f.grid.size(); ++i) s += std::norm(f.x[i]) + std::norm(f.y[i]);
    return f.grid.mesh() * std::sqrt(s);
}

inline MatrixLoad operator-(const MatrixLoad& a, const MatrixLoad& b) {
    if (a.grid != b.grid) throw std::invalid_argument("MatrixLoad: grid mismatch");
    MatrixLoad r(a.grid);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < a.grid.size(); ++i) r.c[k][i] = a.c[k][i] - b.c[k][i];
    return r;
}

inline MatrixLoad operator*(double s, const MatrixLoad& a) {
    MatrixLoad r(a.grid);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < a.grid.size(); ++i) r.c[k][i] = s * a.c[k][i];
    return r;
}

// Nodal indicator of the closed ball |x| <= radius.
inline void restrict_to_ball(MatrixLoad& q, double radius) {
    for (int a = 0; a < q.grid.size(); ++a) {
        if (norm(q.grid.node(a)) > radius)
            for (auto& comp : q.c) comp[a] = cd{};
    }
}

}  // namespace elsc
