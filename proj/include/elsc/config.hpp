#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "elsc/lippmann_schwinger.hpp"
#include "elsc/loads.hpp"

namespace elsc {

// Experiment description: one key-value pair per line, '#' comments.  Every
// key can also be overridden from the command line.
struct ExperimentConfig {
    double lambda = 2.0;
    double mu = 1.0;
    double R = 2.0;
    int N = 32;

    std::string load = "pot2";  // pot1 | pot2 | lipschitz-diamond | custom-samples
    double amplitude = 1.0;
    std::string pattern = "ones";  // ones | identity | diagonal | general
    std::array<double, 4> pattern_weights{1.0, 1.0, 1.0, 1.0};
    std::string load_file;  // custom-samples source

    std::string kind = "backscatter";  // backscatter | fixed-angle
    Vec2 theta{1.0, 0.0};
    std::string kregime = "auto";  // p | s | auto (only consulted at K = 1)

    double noise = 0.0;
    std::string noise_model = "per-datum";  // per-datum | global
    uint64_t seed = 1;

    int iterations = 4;
    bool early_stop = false;
    double support_radius = 1.0;

    SolverSettings solver;
    std::string outdir = "out";

    GridSpec grid() const { return GridSpec(R, N); }
    LameParams lame() const { return LameParams(lambda, mu); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

inline long to_long(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: bad boolean value for '" + key + "': " + v);
}

inline std::vector<double> to_doubles(const std::string& key, const std::string& v, size_t count) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.size() != count)
        throw ConfigError("config: '" + key + "' expects " + std::to_string(count) + " values");
    return out;
}

}  // namespace detail

inline std::map<std::string, std::string> parse_config_text(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: missing '=' on line " + std::to_string(lineno));
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key on line " + std::to_string(lineno));
        kv[key] = value;
    }
    return kv;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    return parse_config_text(is);
}

inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
    using namespace detail;
    if (key == "lambda") cfg.lambda = to_double(key, value);
    else if (key == "mu") cfg.mu = to_double(key, value);
    else if (key == "R") cfg.R = to_double(key, value);
    else if (key == "N") cfg.N = static_cast<int>(to_long(key, value));
    else if (key == "load") cfg.load = value;
    else if (key == "amplitude") cfg.amplitude = to_double(key, value);
    else if (key == "pattern") cfg.pattern = value;
    else if (key == "pattern_weights") {
        // two values (diagonal) or four (general); independent of key order
        std::vector<double> w;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(to_double(key, trim(item)));
        if (w.size() == 2) cfg.pattern_weights = {w[0], w[1], 0.0, 0.0};
        else if (w.size() == 4) cfg.pattern_weights = {w[0], w[1], w[2], w[3]};
        else throw ConfigError("config: pattern_weights expects 2 or 4 values");
    } else if (key == "load_file") cfg.load_file = value;
    else if (key == "kind") cfg.kind = value;
    else if (key == "theta") {
        const auto t = to_doubles(key, value, 2);
        cfg.theta = normalized({t[0], t[1]});
    } else if (key == "kregime") cfg.kregime = value;
    else if (key == "noise") cfg.noise = to_double(key, value);
    else if (key == "noise_model") cfg.noise_model = value;
    else if (key == "seed") cfg.seed = static_cast<uint64_t>(to_long(key, value));
    else if (key == "iterations") cfg.iterations = static_cast<int>(to_long(key, value));
    else if (key == "early_stop") cfg.early_stop = to_bool(key, value);
    else if (key == "support_radius") cfg.support_radius = to_double(key, value);
    else if (key == "tol") cfg.solver.tol = to_double(key, value);
    else if (key == "max_iter") cfg.solver.max_iter = static_cast<int>(to_long(key, value));
    else if (key == "pad_factor") cfg.solver.pad_factor = to_double(key, value);
    else if (key == "restart") cfg.solver.restart = static_cast<int>(to_long(key, value));
    else if (key == "oversample") cfg.solver.oversample = static_cast<int>(to_long(key, value));
    else if (key == "linearize") cfg.solver.linearize = to_bool(key, value);
    else if (key == "threads") cfg.solver.threads = static_cast<int>(to_long(key, value));
    else if (key == "half_lattice") cfg.solver.half_lattice = to_bool(key, value);
    else if (key == "outdir") cfg.outdir = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

inline ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    for (const auto& [k, v] : kv) apply_config_entry(cfg, k, v);
    return cfg;
}

inline void validate_config(const ExperimentConfig& cfg) {
    cfg.lame();           // strong ellipticity
    cfg.grid();           // N even and positive, R > 0
    cfg.solver.validate();
    if (cfg.kind != "backscatter" && cfg.kind != "fixed-angle")
        throw ConfigError("config: kind must be backscatter or fixed-angle");
    if (cfg.noise < 0.0 || cfg.noise >= 1.0) throw ConfigError("config: noise must be in [0,1)");
    if (cfg.noise_model != "per-datum" && cfg.noise_model != "global")
        throw ConfigError("config: noise_model must be per-datum or global");
    if (cfg.kregime != "auto" && cfg.kregime != "p" && cfg.kregime != "s")
        throw ConfigError("config: kregime must be auto, p or s");
    if (cfg.iterations < 1) throw ConfigError("config: iterations must be >= 1");
    if (!(cfg.support_radius > 0.0) || cfg.support_radius > cfg.R + 1e-12)
        throw ConfigError("config: support_radius must satisfy 0 < r <= R");
    if (cfg.load == "custom-samples" && cfg.load_file.empty())
        throw ConfigError("config: custom-samples requires load_file");
}

// Canonical dump: fixed key order, full precision; hashed into the
// provenance line of every emitted CSV.
inline std::string canonical_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda=" << cfg.lambda << "\nmu=" << cfg.mu << "\nR=" << cfg.R << "\nN=" << cfg.N
       << "\nload=" << cfg.load << "\namplitude=" << cfg.amplitude << "\npattern=" << cfg.pattern
       << "\npattern_weights=" << cfg.pattern_weights[0] << ',' << cfg.pattern_weights[1] << ','
       << cfg.pattern_weights[2] << ',' << cfg.pattern_weights[3]
       << "\nload_file=" << cfg.load_file << "\nkind=" << cfg.kind << "\ntheta=" << cfg.theta.x
       << ',' << cfg.theta.y << "\nkregime=" << cfg.kregime << "\nnoise=" << cfg.noise
       << "\nnoise_model=" << cfg.noise_model << "\nseed=" << cfg.seed
       << "\niterations=" << cfg.iterations << "\nearly_stop=" << cfg.early_stop
       << "\nsupport_radius=" << cfg.support_radius << "\ntol=" << cfg.solver.tol
       << "\nmax_iter=" << cfg.solver.max_iter << "\npad_factor=" << cfg.solver.pad_factor
       << "\nrestart=" << cfg.solver.restart << "\noversample=" << cfg.solver.oversample
       << "\nlinearize=" << cfg.solver.linearize << "\nthreads=" << cfg.solver.threads
       << "\nhalf_lattice=" << cfg.solver.half_lattice << "\n";
    return os.str();
}

inline uint64_t fnv1a_hash(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << std::hex << fnv1a_hash(canonical_config(cfg));
    return os.str();
}

}  // namespace elsc
