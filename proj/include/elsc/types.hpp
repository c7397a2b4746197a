#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace elsc {

using cd = std::complex<double>;

// Real 2-vector (directions, grid points, frequencies).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Counterclockwise quarter turn; the global choice for theta-perp.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
// Clockwise quarter turn; pairs an s-wave direction with its polarization.
inline Vec2 perp_cw(Vec2 a) { return {a.y, -a.x}; }

inline Vec2 normalized(Vec2 a) {
    const double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    return {a.x / n, a.y / n};
}

inline bool is_unit(Vec2 a, double tol = 1e-10) { return std::abs(norm(a) - 1.0) <= tol; }

// Complex 2-vector (field values, far-field data).
struct CVec2 {
    cd x{0.0, 0.0};
    cd y{0.0, 0.0};
};

inline CVec2 operator+(CVec2 a, CVec2 b) { return {a.x + b.x, a.y + b.y}; }
inline CVec2 operator-(CVec2 a, CVec2 b) { return {a.x - b.x, a.y - b.y}; }
inline CVec2 operator*(cd s, CVec2 a) { return {s * a.x, s * a.y}; }
inline CVec2 operator*(double s, CVec2 a) { return {s * a.x, s * a.y}; }
inline CVec2 operator-(CVec2 a) { return {-a.x, -a.y}; }

// Bilinear pairing with a real vector (no conjugation).
inline cd dot(CVec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(CVec2 a) { return std::sqrt(std::norm(a.x) + std::norm(a.y)); }

inline CVec2 scaled(Vec2 d, cd s) { return {s * d.x, s * d.y}; }

// Lame constants with the strong-ellipticity requirement mu > 0, 2mu+lambda > 0.
struct LameParams {
    double lambda;
    double mu;

    LameParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
        if (!(mu > 0.0)) throw std::invalid_argument("LameParams: mu must be positive");
        if (!(2.0 * mu + lambda > 0.0))
            throw std::invalid_argument("LameParams: 2*mu + lambda must be positive");
    }

    // Modulus seen by the compressional part of the field.
    double p_modulus() const { return 2.0 * mu + lambda; }

    // Wavenumbers at energy c^2 and the speed ratio K = k_s / k_p.
    double kp(double c) const { return c / std::sqrt(p_modulus()); }
    double ks(double c) const { return c / std::sqrt(mu); }
    double speed_ratio() const { return std::sqrt(p_modulus() / mu); }
};

// Thrown when an iterative solve fails to reach its tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace elsc
