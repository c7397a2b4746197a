#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "elsc/experiment.hpp"

using namespace elsc;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("elsc_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("field files round-trip") {
    TempDir tmp;
    const GridSpec g(2.0, 8);
    MatrixLoad q(g);
    for (int a = 0; a < g.size(); ++a)
        for (int k = 0; k < 4; ++k) q.c[k][a] = cd(0.1 * a + k, -0.2 * a);
    const std::string path = tmp.file("field.elsc");
    write_field(path, q);
    const MatrixLoad back = read_matrix_load(path);
    REQUIRE(back.grid == g);
    for (int k = 0; k < 4; ++k)
        for (int a = 0; a < g.size(); ++a) CHECK(back.c[k][a] == q.c[k][a]);

    VectorField v(g);
    v.x[3] = cd(1.0, 2.0);
    write_field(tmp.file("vec.elsc"), v);
    const FieldFile f = read_field(tmp.file("vec.elsc"));
    CHECK(f.comps.size() == 2);
    CHECK(f.comps[0][3] == cd(1.0, 2.0));

    CHECK_THROWS_AS(read_matrix_load(tmp.file("vec.elsc")), IoError);
    CHECK_THROWS_AS(read_field(tmp.file("missing.elsc")), IoError);
}

TEST_CASE("backscatter dataset files round-trip") {
    TempDir tmp;
    const GridSpec g(2.0, 4);
    BackscatterDataset d(g);
    d.lambda = 2.0;
    d.mu = 1.0;
    d.noise_level = 0.05;
    d.synthetic = true;
    for (int a = 0; a < g.size(); ++a) {
        if (a == g.flat(2, 2)) continue;
        d.entries[a].vp = {cd(a, 1.0), cd(2.0, -a)};
        d.entries[a].vs = {cd(-1.0, a), cd(a, 3.0)};
        d.entries[a].ok = true;
    }
    const std::string path = tmp.file("d.elbd");
    write_dataset(path, d);
    const BackscatterDataset back = read_backscatter(path);
    REQUIRE(back.grid == g);
    CHECK(back.lambda == 2.0);
    CHECK(back.mu == 1.0);
    CHECK(back.noise_level == 0.05);
    CHECK(back.synthetic);
    for (int a = 0; a < g.size(); ++a) {
        REQUIRE(back.entries[a].ok == d.entries[a].ok);
        if (!d.entries[a].ok) continue;
        CHECK(back.entries[a].vp.x == d.entries[a].vp.x);
        CHECK(back.entries[a].vs.y == d.entries[a].vs.y);
    }
    CHECK_THROWS_AS(read_fixed_angle(path), IoError);  // wrong magic
}

TEST_CASE("fixed-angle dataset files round-trip") {
    TempDir tmp;
    const GridSpec g(2.0, 4);
    FixedAngleDataset d(g);
    d.lambda = -1.1;
    d.mu = 1.0;
    d.theta = normalized({1.0, 1.0});
    d.regime = Regime::s;
    for (int a = 0; a < g.size(); ++a) {
        const int quad = detail::fixed_angle_quadrant(g.freq(a), d.theta);
        d.entries[a].quad = static_cast<int8_t>(quad);
        if (quad >= 0) {
            d.entries[a].v_th = {cd(a, 0.5), cd(0.25, a)};
            d.entries[a].v_pe = {cd(-a, 1.5), cd(1.25, -a)};
            d.entries[a].ok = true;
        }
    }
    const std::string path = tmp.file("d.elfa");
    write_dataset(path, d);
    const FixedAngleDataset back = read_fixed_angle(path);
    REQUIRE(back.grid == g);
    CHECK(back.regime == Regime::s);
    CHECK(back.lambda == -1.1);
    CHECK(back.theta.x == Catch::Approx(d.theta.x));
    for (int a = 0; a < g.size(); ++a) {
        CHECK(back.entries[a].quad == d.entries[a].quad);
        if (d.entries[a].ok) {
            CHECK(back.entries[a].v_th.x == d.entries[a].v_th.x);
            CHECK(back.entries[a].v_pe.y == d.entries[a].v_pe.y);
        }
    }
}

TEST_CASE("config parsing with comments, overrides and errors") {
    std::istringstream is(
        "# experiment\n"
        "lambda = 2\n"
        "mu = 1.0\n"
        "N = 16   # trailing comment\n"
        "load = pot1\n"
        "theta = 0,2\n"
        "noise = 0.05\n"
        "\n");
    const auto kv = parse_config_text(is);
    ExperimentConfig cfg;
    for (const auto& [k, v] : kv) apply_config_entry(cfg, k, v);
    CHECK(cfg.N == 16);
    CHECK(cfg.load == "pot1");
    CHECK(cfg.theta.y == Catch::Approx(1.0));  // normalized
    CHECK(cfg.noise == 0.05);
    validate_config(cfg);

    CHECK_THROWS_AS(apply_config_entry(cfg, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "N", "sixteen"), ConfigError);
    std::istringstream bad("novalue\n");
    CHECK_THROWS_AS(parse_config_text(bad), ConfigError);

    ExperimentConfig invalid;
    invalid.kind = "sideways";
    CHECK_THROWS_AS(validate_config(invalid), ConfigError);
    invalid = ExperimentConfig{};
    invalid.noise = 1.0;
    CHECK_THROWS_AS(validate_config(invalid), ConfigError);
    invalid = ExperimentConfig{};
    invalid.support_radius = 2.5;  // > R
    CHECK_THROWS_AS(validate_config(invalid), ConfigError);
}

TEST_CASE("config hash is stable and value-sensitive") {
    ExperimentConfig a, b;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("CSV files carry the provenance comment and a header row") {
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.outdir = tmp.file("out");
    std::filesystem::create_directories(cfg.outdir);
    const GridSpec g(2.0, 4);
    MatrixLoad q(g);
    write_central_section(tmp.file("out/c.csv"), q, &q, cfg);
    std::ifstream is(tmp.file("out/c.csv"));
    std::string line1, line2;
    std::getline(is, line1);
    std::getline(is, line2);
    CHECK(line1.rfind("# elsc", 0) == 0);
    CHECK(line1.find("config=") != std::string::npos);
    CHECK(line2 == "x1,Q11,ReQB11");
}

TEST_CASE("run_synth and run_born produce coherent artifacts") {
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.N = 8;
    cfg.load = "pot2";
    cfg.amplitude = 0.2;
    cfg.solver.linearize = true;  // keep this IO test cheap
    cfg.outdir = tmp.file("out");
    const SynthResult s = run_synth(cfg);
    CHECK(std::filesystem::exists(s.dataset_path));
    CHECK(std::filesystem::exists(s.csv_path));

    const BornResult b = run_born(cfg, s.dataset_path);
    CHECK(std::filesystem::exists(b.field_path));
    CHECK(std::filesystem::exists(b.central_path));
    CHECK(b.q_born.grid.nodes_per_axis() == 8);

    // fixed-angle flavor
    cfg.kind = "fixed-angle";
    cfg.outdir = tmp.file("out_fa");
    const SynthResult sf = run_synth(cfg);
    CHECK(sf.dataset_path.find(".elfa") != std::string::npos);
    const BornResult bf = run_born(cfg, sf.dataset_path);
    CHECK(std::filesystem::exists(bf.field_path));
}

TEST_CASE("custom-samples loads come from field files") {
    TempDir tmp;
    const GridSpec g(2.0, 8);
    MatrixLoad q(g);
    for (int a = 0; a < g.size(); ++a) q.c[0][a] = load_pot2(g.node(a));
    const std::string path = tmp.file("q.elsc");
    write_field(path, q);

    ExperimentConfig cfg;
    cfg.N = 8;
    cfg.load = "custom-samples";
    cfg.load_file = path;
    validate_config(cfg);
    const MatrixLoad back = config_load(cfg, g);
    CHECK(back.c[0][10] == q.c[0][10]);

    cfg.N = 16;  // grid mismatch must be rejected
    CHECK_THROWS_AS(config_load(cfg, cfg.grid()), ConfigError);

    cfg = ExperimentConfig{};
    cfg.load = "custom-samples";  // missing load_file
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("run_iterate without a true load reports update norms") {
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.N = 8;
    cfg.amplitude = 0.2;
    cfg.iterations = 1;
    cfg.solver.tol = 1e-8;
    cfg.outdir = tmp.file("out");
    const SynthResult s = run_synth(cfg);
    const IterateResult r = run_iterate(cfg, s.dataset_path, false);
    CHECK(r.errors.empty());
    REQUIRE(r.iteration.update_norms.size() == 1);
    CHECK(std::isfinite(r.iteration.update_norms[0]));
    std::ifstream is(r.history_path);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    CHECK(line == "n,update");
}

TEST_CASE("partial fixed-angle datasets keep their missing entries visible") {
    TempDir tmp;
    const GridSpec g(2.0, 8);
    FixedAngleDataset d(g);
    d.lambda = 2.0;
    d.mu = 1.0;
    d.theta = {1.0, 0.0};
    d.regime = Regime::p;
    int dropped = -1;
    for (int a = 0; a < g.size(); ++a) {
        const int quad = detail::fixed_angle_quadrant(g.freq(a), d.theta);
        d.entries[a].quad = static_cast<int8_t>(quad);
        if (quad < 0) continue;
        if (dropped < 0) {
            dropped = a;  // simulate one failed solve
            d.partial = true;
            continue;
        }
        d.entries[a].v_th = {cd(1.0, 0.0), cd(0.0, 1.0)};
        d.entries[a].v_pe = {cd(0.5, 0.0), cd(0.0, 0.5)};
        d.entries[a].ok = true;
    }
    const std::string path = tmp.file("partial.elfa");
    write_dataset(path, d);
    const FixedAngleDataset back = read_fixed_angle(path);
    CHECK(back.partial);
    REQUIRE(dropped >= 0);
    CHECK(back.entries[dropped].quad >= 0);  // still an off-axis point
    CHECK_FALSE(back.entries[dropped].ok);   // but with no measurement
    CHECK_THROWS_AS(born_fixed_angle(back), std::invalid_argument);
}
