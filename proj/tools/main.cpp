#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "beamopt/commands.hpp"
#include "beamopt/errors.hpp"
#include "beamopt/runconfig.hpp"

namespace {

// Deployment/solver flags shared by every subcommand. Values are staged here
// and copied into the RunConfig only when the flag was actually given, so the
// precedence is: built-in defaults < config file < --band preset < flags.
struct Shared {
    std::string config;
    std::string band;
    std::string log_base;
    std::string noise;
    std::string out;
    double isd = 0.0;
    double speed = 0.0;
    double tol = 0.0;
    double trajectory = 0.0;
    double window = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int threads = 0;

    CLI::Option* o_config = nullptr;
    CLI::Option* o_band = nullptr;
    CLI::Option* o_isd = nullptr;
    CLI::Option* o_speed = nullptr;
    CLI::Option* o_samples = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_threads = nullptr;
    CLI::Option* o_tol = nullptr;
    CLI::Option* o_log_base = nullptr;
    CLI::Option* o_noise = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_trajectory = nullptr;
    CLI::Option* o_window = nullptr;
};

void add_shared(CLI::App& app, Shared& s) {
    s.o_config = app.add_option("--config", s.config,
                                "Run configuration file (sectioned key=value text)");
    s.o_band = app.add_option("--band", s.band, "Deployment preset: fr1, fr2, or custom")
                   ->check(CLI::IsMember({"fr1", "fr2", "custom"}));
    s.o_isd = app.add_option("--isd", s.isd, "Inter-site distance, m");
    s.o_speed = app.add_option("--speed", s.speed, "MT speed, km/h");
    s.o_samples = app.add_option("--samples", s.samples, "Monte Carlo realizations");
    s.o_seed = app.add_option("--seed", s.seed, "Monte Carlo master seed");
    s.o_threads = app.add_option("--threads", s.threads, "Worker threads (0 = hardware)");
    s.o_tol = app.add_option(
        "--tol", s.tol,
        "Relative tolerance of the rate integral; inner/outer integrals use tol/100 and tol/10");
    s.o_log_base = app.add_option("--log-base", s.log_base, "Rate units: nats or bits")
                       ->check(CLI::IsMember({"nats", "bits"}));
    s.o_noise =
        app.add_option("--noise-convention", s.noise,
                       "Noise power in the SINR: sigma2 (bandwidth * N0) or n0 (bare density)")
            ->check(CLI::IsMember({"sigma2", "n0"}));
    s.o_out = app.add_option("--out", s.out, "Output CSV path");
    s.o_trajectory =
        app.add_option("--trajectory", s.trajectory, "Crossing-check trajectory length, m");
    s.o_window = app.add_option("--window", s.window,
                                "Interference window radius override, m (0 = auto)");
}

beamopt::RunConfig build(const Shared& s) {
    beamopt::RunConfig rc;
    if (s.o_config->count()) rc = beamopt::parse_run_config_file(s.config);
    if (s.o_band->count()) {
        rc.band = s.band;
        beamopt::apply_band_preset(rc);
    }
    if (s.o_isd->count()) rc.isd_m = s.isd;
    if (s.o_speed->count()) rc.speed_kmh = s.speed;
    if (s.o_samples->count()) rc.samples = s.samples;
    if (s.o_seed->count()) rc.seed = s.seed;
    if (s.o_threads->count()) rc.threads = s.threads;
    if (s.o_tol->count()) {
        rc.quad.rate_rel_tol = s.tol;
        rc.quad.outer_rel_tol = s.tol / 10.0;
        rc.quad.inner_rel_tol = s.tol / 100.0;
    }
    if (s.o_log_base->count()) rc.log_base = s.log_base;
    if (s.o_noise->count())
        rc.quad.noise =
            s.noise == "n0" ? beamopt::NoiseConvention::n0 : beamopt::NoiseConvention::sigma2;
    if (s.o_out->count()) rc.out_path = s.out;
    if (s.o_trajectory->count()) rc.trajectory_m = s.trajectory;
    if (s.o_window->count()) rc.window_m = s.window;
    return rc;
}

// Accepts "2", "2.0", or "2x".
double parse_perturb(const std::string& text) {
    std::string t = text;
    if (!t.empty() && (t.back() == 'x' || t.back() == 'X')) t.pop_back();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !(v > 0.0))
        throw beamopt::validation_error("bad --perturb-gain value: " + text);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Effective area spectral efficiency of a beam-managed cellular downlink:\n"
        "closed-form rate/overhead model, beam-count optimizer, and Monte Carlo\n"
        "cross-validation of every formula."};
    app.require_subcommand(1);

    Shared s;
    add_shared(app, s);

    int n = 4;
    int n_min = 1;
    int n_max = 10;
    std::string grid_path;
    std::string perturb = "1";

    CLI::App* eval = app.add_subcommand("evaluate", "Report one beam-count exponent");
    eval->fallthrough();
    eval->add_option("--n", n, "Beam-count exponent (2^n beams per BS)")->capture_default_str();

    CLI::App* opti =
        app.add_subcommand("optimize", "Search the exponent range for maximal effective ASE");
    opti->fallthrough();
    opti->add_option("--n-min", n_min, "Smallest exponent")->capture_default_str();
    opti->add_option("--n-max", n_max, "Largest exponent")->capture_default_str();

    CLI::App* swp = app.add_subcommand("sweep", "Evaluate a (band, ISD, speed, n) grid to CSV");
    swp->fallthrough();
    swp->add_option("--grid", grid_path, "Grid file")->required();

    CLI::App* val = app.add_subcommand(
        "validate", "Cross-check the closed forms against stochastic simulation");
    val->fallthrough();
    val->add_option("--perturb-gain", perturb,
                    "Scale the analytic main-lobe gain (e.g. 2x); proves the checks can fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const beamopt::RunConfig rc = build(s);
        if (*eval) return beamopt::cmd_evaluate(rc, n, std::cout, std::cerr);
        if (*opti) return beamopt::cmd_optimize(rc, n_min, n_max, std::cout, std::cerr);
        if (*swp) return beamopt::cmd_sweep(rc, grid_path, std::cout, std::cerr);
        return beamopt::cmd_validate(rc, parse_perturb(perturb), std::cout, std::cerr);
    } catch (const beamopt::validation_error& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return 1;
    } catch (const beamopt::numerical_error& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
