#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "elsc/backscatter.hpp"
#include "elsc/fixed_angle.hpp"

namespace elsc {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

constexpr uint32_t kFormatVersion = 1;

inline void put_u32(std::ostream& os, uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
inline void put_i32(std::ostream& os, int32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
inline void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

inline uint32_t get_u32(std::istream& is) {
    uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
inline int32_t get_i32(std::istream& is) {
    int32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
inline double get_f64(std::istream& is) {
    double v = 0.0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

inline void pad_to(std::ostream& os, std::streampos start, int size) {
    const auto written = os.tellp() - start;
    for (int i = static_cast<int>(written); i < size; ++i) os.put('\0');
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    return os;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    return is;
}

inline void expect_magic(std::istream& is, const char* magic, const std::string& path) {
    char buf[4];
    is.read(buf, 4);
    if (!is || std::memcmp(buf, magic, 4) != 0)
        throw IoError("bad magic in " + path + " (expected " + magic + ")");
}

}  // namespace detail

// Flat binary field format "ELSC": 64-byte header (magic, version, N,
// component count, R) followed by row-major complex doubles, components in
// order.  Components: 1 scalar, 2 vector (x,y), 4 matrix (11,12,21,22).
inline void write_field(const std::string& path, const GridSpec& g,
                        const std::vector<const std::vector<cd>*>& comps) {
    auto os = detail::open_out(path);
    const std::streampos start = os.tellp();
    os.write("ELSC", 4);
    detail::put_u32(os, detail::kFormatVersion);
    detail::put_u32(os, static_cast<uint32_t>(g.nodes_per_axis()));
    detail::put_u32(os, static_cast<uint32_t>(comps.size()));
    detail::put_f64(os, g.half_side());
    detail::pad_to(os, start, 64);
    for (const auto* comp : comps) {
        if (static_cast<int>(comp->size()) != g.size())
            throw IoError("write_field: component size mismatch");
        for (const cd& z : *comp) {
            detail::put_f64(os, z.real());
            detail::put_f64(os, z.imag());
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

inline void write_field(const std::string& path, const MatrixLoad& q) {
    write_field(path, q.grid, {&q.c[0], &q.c[1], &q.c[2], &q.c[3]});
}

inline void write_field(const std::string& path, const VectorField& v) {
    write_field(path, v.grid, {&v.x, &v.y});
}

struct FieldFile {
    GridSpec grid;
    std::vector<std::vector<cd>> comps;
};

inline FieldFile read_field(const std::string& path) {
    auto is = detail::open_in(path);
    detail::expect_magic(is, "ELSC", path);
    const uint32_t version = detail::get_u32(is);
    if (version != detail::kFormatVersion) throw IoError("unsupported field version in " + path);
    const uint32_t n = detail::get_u32(is);
    const uint32_t ncomp = detail::get_u32(is);
    const double R = detail::get_f64(is);
    is.seekg(64);
    FieldFile f{GridSpec(R, static_cast<int>(n)), {}};
    f.comps.resize(ncomp);
    for (auto& comp : f.comps) {
        comp.resize(f.grid.size());
        for (cd& z : comp) {
            const double re = detail::get_f64(is);
            const double im = detail::get_f64(is);
            z = {re, im};
        }
    }
    if (!is) throw IoError("truncated field file: " + path);
    return f;
}

inline MatrixLoad read_matrix_load(const std::string& path) {
    FieldFile f = read_field(path);
    if (f.comps.size() != 4) throw IoError("expected a 4-component field in " + path);
    MatrixLoad q(f.grid);
    for (int k = 0; k < 4; ++k) q.c[k] = std::move(f.comps[k]);
    return q;
}

// Backscattering dataset "ELBD": header + one record per lattice point
// (origin excluded): j1, j2, then v_inf^p and v_inf^s as four complex doubles.
inline void write_dataset(const std::string& path, const BackscatterDataset& d) {
    auto os = detail::open_out(path);
    const std::streampos start = os.tellp();
    os.write("ELBD", 4);
    detail::put_u32(os, detail::kFormatVersion);
    detail::put_u32(os, static_cast<uint32_t>(d.grid.nodes_per_axis()));
    uint32_t flags = (d.synthetic ? 1u : 0u) | (d.partial ? 2u : 0u);
    detail::put_u32(os, flags);
    detail::put_f64(os, d.grid.half_side());
    detail::put_f64(os, d.lambda);
    detail::put_f64(os, d.mu);
    detail::put_f64(os, d.noise_level);
    detail::pad_to(os, start, 64);
    const int n = d.grid.nodes_per_axis();
    for (int a = 0; a < d.grid.size(); ++a) {
        if (!d.entries[a].ok) continue;
        detail::put_i32(os, d.grid.centered(a / n));
        detail::put_i32(os, d.grid.centered(a % n));
        for (const cd& z : {d.entries[a].vp.x, d.entries[a].vp.y, d.entries[a].vs.x,
                            d.entries[a].vs.y}) {
            detail::put_f64(os, z.real());
            detail::put_f64(os, z.imag());
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

inline BackscatterDataset read_backscatter(const std::string& path) {
    auto is = detail::open_in(path);
    detail::expect_magic(is, "ELBD", path);
    if (detail::get_u32(is) != detail::kFormatVersion)
        throw IoError("unsupported dataset version in " + path);
    const uint32_t n = detail::get_u32(is);
    const uint32_t flags = detail::get_u32(is);
    const double R = detail::get_f64(is);
    BackscatterDataset d{GridSpec(R, static_cast<int>(n))};
    d.lambda = detail::get_f64(is);
    d.mu = detail::get_f64(is);
    d.noise_level = detail::get_f64(is);
    d.synthetic = flags & 1u;
    d.partial = flags & 2u;
    is.seekg(64);
    const int half = static_cast<int>(n) / 2;
    for (;;) {
        const int32_t j1 = detail::get_i32(is);
        if (!is) break;
        const int32_t j2 = detail::get_i32(is);
        if (j1 < -half || j1 >= half || j2 < -half || j2 >= half)
            throw IoError("lattice index out of range in " + path);
        BackscatterEntry e;
        double buf[8];
        for (double& x : buf) x = detail::get_f64(is);
        e.vp = {{buf[0], buf[1]}, {buf[2], buf[3]}};
        e.vs = {{buf[4], buf[5]}, {buf[6], buf[7]}};
        e.ok = true;
        d.entries[d.grid.flat(j1 + half, j2 + half)] = e;
        if (!is) throw IoError("truncated dataset: " + path);
    }
    return d;
}

// Fixed-angle dataset "ELFA": like ELBD plus theta and the regime flag; every
// lattice point is recorded with its quadrant tag, excluded axis points with
// quad = -1 and zero vectors.
inline void write_dataset(const std::string& path, const FixedAngleDataset& d) {
    auto os = detail::open_out(path);
    const std::streampos start = os.tellp();
    os.write("ELFA", 4);
    detail::put_u32(os, detail::kFormatVersion);
    detail::put_u32(os, static_cast<uint32_t>(d.grid.nodes_per_axis()));
    uint32_t flags = (d.synthetic ? 1u : 0u) | (d.partial ? 2u : 0u) |
                     (d.regime == Regime::s ? 4u : 0u);
    detail::put_u32(os, flags);
    detail::put_f64(os, d.grid.half_side());
    detail::put_f64(os, d.lambda);
    detail::put_f64(os, d.mu);
    detail::put_f64(os, d.theta.x);
    detail::put_f64(os, d.theta.y);
    detail::put_f64(os, d.noise_level);
    detail::pad_to(os, start, 64);
    const int n = d.grid.nodes_per_axis();
    for (int a = 0; a < d.grid.size(); ++a) {
        const FixedAngleEntry& e = d.entries[a];
        if (e.quad >= 0 && !e.ok) continue;  // missing entry of a partial dataset
        detail::put_i32(os, d.grid.centered(a / n));
        detail::put_i32(os, d.grid.centered(a % n));
        detail::put_i32(os, e.quad);
        detail::put_i32(os, 0);
        for (const cd& z : {e.v_th.x, e.v_th.y, e.v_pe.x, e.v_pe.y}) {
            detail::put_f64(os, z.real());
            detail::put_f64(os, z.imag());
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

inline FixedAngleDataset read_fixed_angle(const std::string& path) {
    auto is = detail::open_in(path);
    detail::expect_magic(is, "ELFA", path);
    if (detail::get_u32(is) != detail::kFormatVersion)
        throw IoError("unsupported dataset version in " + path);
    const uint32_t n = detail::get_u32(is);
    const uint32_t flags = detail::get_u32(is);
    const double R = detail::get_f64(is);
    FixedAngleDataset d{GridSpec(R, static_cast<int>(n))};
    d.lambda = detail::get_f64(is);
    d.mu = detail::get_f64(is);
    d.theta = {detail::get_f64(is), detail::get_f64(is)};
    d.noise_level = detail::get_f64(is);
    d.synthetic = flags & 1u;
    d.partial = flags & 2u;
    d.regime = (flags & 4u) ? Regime::s : Regime::p;
    is.seekg(64);
    const int half = static_cast<int>(n) / 2;
    for (;;) {
        const int32_t j1 = detail::get_i32(is);
        if (!is) break;
        const int32_t j2 = detail::get_i32(is);
        const int32_t quad = detail::get_i32(is);
        detail::get_i32(is);
        if (j1 < -half || j1 >= half || j2 < -half || j2 >= half)
            throw IoError("lattice index out of range in " + path);
        FixedAngleEntry e;
        double buf[8];
        for (double& x : buf) x = detail::get_f64(is);
        e.v_th = {{buf[0], buf[1]}, {buf[2], buf[3]}};
        e.v_pe = {{buf[4], buf[5]}, {buf[6], buf[7]}};
        e.quad = static_cast<int8_t>(quad);
        e.ok = quad >= 0;
        d.entries[d.grid.flat(j1 + half, j2 + half)] = e;
        if (!is) throw IoError("truncated dataset: " + path);
    }
    // Entries missing from a partial file still carry their true quadrant so
    // downstream code sees them as absent measurements, not excluded axes.
    for (int a = 0; a < d.grid.size(); ++a) {
        if (!d.entries[a].ok && d.entries[a].quad < 0)
            d.entries[a].quad =
                static_cast<int8_t>(detail::fixed_angle_quadrant(d.grid.freq(a), d.theta));
    }
    return d;
}

}  // namespace elsc
