#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "beamopt/ase.hpp"
#include "beamopt/commands.hpp"
#include "beamopt/errors.hpp"
#include "beamopt/model.hpp"
#include "beamopt/runconfig.hpp"
#include "doctest.h"

using namespace beamopt;

namespace {

RunConfig quick_fr2() {
    RunConfig rc;
    rc.band = "fr2";
    apply_band_preset(rc);
    rc.isd_m = 125.0;
    rc.speed_kmh = 30.0;
    return rc;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find(needle) != std::string::npos) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("config parse, serialize, parse is the identity") {
    RunConfig a;
    a.band = "custom";
    a.isd_m = 333.25;
    a.speed_kmh = 17.0 / 3.0;
    a.freq_ghz = 27.125;
    a.bw_mhz = 123.0;
    a.tx_dbm = 41.5;
    a.noise_dbm_hz = -173.25;
    a.ssb_ms = 19.5;
    a.t_beam_ms = 11.0;
    a.t_cell_ms = 47.0;
    a.alpha_los = 2.1;
    a.alpha_nlos = 3.9;
    a.los_radius_m = 60.0;
    a.sinr_cap_db = 25.0;
    a.quad.inner_rel_tol = 1e-8;
    a.quad.outer_rel_tol = 2e-7;
    a.quad.rate_rel_tol = 3e-6;
    a.quad.r_max = 1234.5;
    a.quad.max_intervals = 2048;
    a.quad.rate_seed_decades = 5;
    a.quad.noise = NoiseConvention::n0;
    a.samples = 12345;
    a.seed = 987654321;
    a.threads = 2;
    a.trajectory_m = 2.5e5;
    a.window_m = 777.5;
    a.out_path = "results.csv";
    a.log_base = "bits";

    const std::string text = serialize_run_config(a);
    std::istringstream in(text);
    const RunConfig b = parse_run_config(in);
    CHECK(serialize_run_config(b) == text);
    CHECK(b.speed_kmh == a.speed_kmh);
    CHECK(b.quad.noise == NoiseConvention::n0);
    CHECK(b.samples == 12345);
    CHECK(b.out_path == "results.csv");
    CHECK(b.log_base == "bits");
}

TEST_CASE("band presets resolve the reference deployments") {
    std::istringstream fr2_in("[deployment]\nband = fr2\nisd_m = 125\n");
    const RunConfig c = parse_run_config(fr2_in);
    CHECK(c.freq_ghz == 28.0);
    CHECK(c.bw_mhz == 400.0);
    CHECK(c.tx_dbm == 36.0);
    CHECK(c.alpha_los == 1.9);
    CHECK(c.los_radius_m == 75.0);
    CHECK(c.isd_m == 125.0);
    const NetworkConfig net = to_network(c);
    CHECK(net.bs_intensity == doctest::Approx(8.1487330863050412e-05).epsilon(1e-14));

    // explicit keys override the preset regardless of their order vs `band`
    std::istringstream mixed("[deployment]\nbw_mhz = 50\nband = fr1\n");
    const RunConfig d = parse_run_config(mixed);
    CHECK(d.bw_mhz == 50.0);
    CHECK(d.freq_ghz == 3.5);
    CHECK(d.tx_dbm == 43.0);

    RunConfig bad;
    bad.band = "fr3";
    CHECK_THROWS_AS(apply_band_preset(bad), validation_error);
}

TEST_CASE("malformed configs are rejected with specific messages") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_run_config(in);
    };
    CHECK_THROWS_WITH_AS(parse("[deployment]\nbogus_key = 1\n"),
                         "unknown config key: deployment.bogus_key", validation_error);
    CHECK_THROWS_AS(parse("[deployment]\nno equals sign\n"), validation_error);
    CHECK_THROWS_AS(parse("[deployment\nband = fr1\n"), validation_error);
    CHECK_THROWS_AS(parse("[output]\nlog_base = decibels\n"), validation_error);
    CHECK_THROWS_AS(parse("[quadrature]\nnoise_convention = foo\n"), validation_error);
    CHECK_THROWS_AS(parse("[mc]\nsamples = -5\n"), validation_error);
    CHECK_THROWS_AS(parse("[mc]\nsamples = 1.5\n"), validation_error);
    CHECK_THROWS_AS(parse("[deployment]\nisd_m = abc\n"), validation_error);
    CHECK_THROWS_AS(parse_run_config_file("/nonexistent/path.cfg"), validation_error);

    // comments and blank lines are fine
    std::istringstream ok("# a comment\n\n[deployment]\nband = fr1  ; trailing\n");
    CHECK(parse_run_config(ok).band == "fr1");
}

TEST_CASE("bundled sweep grids parse with the documented shapes") {
    const std::string dir = GRID_DIR;
    const SweepGrid g1 = parse_sweep_grid_file(dir + "/fig_fr1.grid");
    CHECK(g1.bands == std::vector<std::string>{"fr1"});
    CHECK(g1.isd_m == std::vector<double>{250.0, 500.0, 1000.0});
    CHECK(g1.speed_kmh == std::vector<double>{3.0, 30.0, 120.0});
    CHECK(g1.n_min == 1);
    CHECK(g1.n_max == 10);
    CHECK(g1.bands.size() * g1.isd_m.size() * g1.speed_kmh.size() *
              static_cast<size_t>(g1.n_max - g1.n_min + 1) ==
          90);

    const SweepGrid g2 = parse_sweep_grid_file(dir + "/fig_fr2.grid");
    CHECK(g2.bands == std::vector<std::string>{"fr2"});
    CHECK(g2.isd_m == std::vector<double>{75.0, 125.0, 250.0});
    CHECK(g2.speed_kmh == std::vector<double>{3.0, 30.0});
    CHECK(g2.bands.size() * g2.isd_m.size() * g2.speed_kmh.size() *
              static_cast<size_t>(g2.n_max - g2.n_min + 1) ==
          60);

    std::istringstream bad("[grid]\nbands = fr1\nfoo = 1\n");
    CHECK_THROWS_AS(parse_sweep_grid(bad), validation_error);
    CHECK_THROWS_AS(parse_sweep_grid_file("/nonexistent.grid"), validation_error);
}

TEST_CASE("evaluate reports the point and appends machine rows") {
    RunConfig rc = quick_fr2();
    const std::filesystem::path csv = temp_file("beamopt_test_eval.csv");
    std::filesystem::remove(csv);
    rc.out_path = csv.string();

    std::ostringstream out, err;
    CHECK(cmd_evaluate(rc, 4, out, err) == 0);
    const std::string report = out.str();
    CHECK(report.find("n=4 (16 beams)") != std::string::npos);
    CHECK(report.find("p_bm") != std::string::npos);
    CHECK(report.find("T_o") != std::string::npos);
    CHECK(report.find("effective ASE") != std::string::npos);
    CHECK(err.str().find("appended 1 row to") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cmd_evaluate(rc, 5, out2, err2) == 0);

    std::ifstream in(csv);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string file = buf.str();
    CHECK(file.rfind("#schema=1\n", 0) == 0);
    CHECK(count_lines_with(file, "band,isd_m,speed_kmh,n,") == 1);  // preamble written once
    CHECK(count_lines_with(file, "fr2,125,30,4,") == 1);
    CHECK(count_lines_with(file, "fr2,125,30,5,") == 1);
    std::filesystem::remove(csv);

    std::ostringstream o3, e3;
    CHECK(cmd_evaluate(rc, 0, o3, e3) == 1);  // beam exponent out of range
    CHECK(e3.str().find("error (validation)") != std::string::npos);
}

TEST_CASE("optimize prints the curve and flags the winner") {
    RunConfig rc = quick_fr2();
    std::ostringstream out, err;
    CHECK(cmd_optimize(rc, 3, 3, out, err) == 0);
    const std::string report = out.str();
    CHECK(count_lines_with(report, "<- optimal") == 1);
    CHECK(report.find("optimal n = 3 (8 beams)") != std::string::npos);

    std::ostringstream o2, e2;
    CHECK(cmd_optimize(rc, 0, 3, o2, e2) == 1);
    CHECK(cmd_optimize(rc, 5, 3, o2, e2) == 1);
    CHECK(!e2.str().empty());
}

TEST_CASE("sweep emits a deterministic schema-stamped CSV") {
    const std::filesystem::path grid = temp_file("beamopt_test_sweep.grid");
    {
        std::ofstream g(grid);
        g << "[grid]\nbands = fr2\nisd_m = 125\nspeed_kmh = 30\nn_min = 2\nn_max = 3\n";
    }

    RunConfig rc = quick_fr2();
    rc.threads = 1;
    std::ostringstream first, err1;
    CHECK(cmd_sweep(rc, grid.string(), first, err1) == 0);
    rc.threads = 3;
    std::ostringstream second, err2;
    CHECK(cmd_sweep(rc, grid.string(), second, err2) == 0);
    CHECK(first.str() == second.str());

    const std::string text = first.str();
    CHECK(text.rfind("#schema=1\n", 0) == 0);
    CHECK(count_lines_with(text, "band,isd_m,speed_kmh,n,p_bm,mu_b,mu_c,T_o,rate,ase_eff") == 1);
    CHECK(count_lines_with(text, "fr2,125,30,2,") == 1);
    CHECK(count_lines_with(text, "fr2,125,30,3,") == 1);
    std::filesystem::remove(grid);

    std::ostringstream o3, e3;
    CHECK(cmd_sweep(rc, "/nonexistent.grid", o3, e3) == 1);
    CHECK(e3.str().find("error (validation)") != std::string::npos);
}

TEST_CASE("validate passes at modest sample counts") {
    RunConfig rc;  // fr1 defaults: isd 500, speed 30
    rc.samples = 1000;
    std::ostringstream out, err;
    const int code = cmd_validate(rc, 1.0, out, err);
    const std::string log = out.str();
    CHECK(code == 0);
    CHECK(log.find("RESULT: PASS") != std::string::npos);
    CHECK(log.find("verdict=FAIL") == std::string::npos);
    CHECK(count_lines_with(log, "check crossing-handover") == 1);
    CHECK(count_lines_with(log, "check crossing-reselection") == 3);
    CHECK(count_lines_with(log, "check success-prob") == 21);
    CHECK(count_lines_with(log, "check ergodic-rate") == 1);
}

TEST_CASE("validate catches a rigged analytic gain") {
    RunConfig rc;
    rc.samples = 2000;
    std::ostringstream out, err;
    const int code = cmd_validate(rc, 2.0, out, err);
    const std::string log = out.str();
    CHECK(code == 3);
    CHECK(log.find("self-test: analytic main-lobe gain scaled by 2") != std::string::npos);
    CHECK(count_lines_with(log, "verdict=FAIL") >= 1);
    CHECK(log.find("RESULT: FAIL") != std::string::npos);
    // the gain-free crossing checks must not be poisoned by the perturbation
    std::istringstream lines(log);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find("check crossing-") != std::string::npos) {
            CHECK(line.find("verdict=PASS") != std::string::npos);
        }
    }
}
