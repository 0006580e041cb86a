#include "beamopt/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "beamopt/ase.hpp"
#include "beamopt/errors.hpp"
#include "beamopt/mc.hpp"
#include "beamopt/mobility.hpp"
#include "beamopt/model.hpp"
#include "beamopt/sinr_rate.hpp"
#include "beamopt/units.hpp"

namespace beamopt {
namespace {

std::string g12(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string g6(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

template <typename Fn>
int guard(std::ostream& err, Fn&& body) {
    try {
        return body();
    } catch (const validation_error& e) {
        err << "error (validation): " << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        err << "error (numerical): " << e.what() << " (partial estimate "
            << g12(e.partial_estimate) << ", error bound " << g12(e.error_bound) << ")\n";
        return 2;
    }
}

const char* rate_unit(const RunConfig& rc) {
    return rc.log_base == "bits" ? "bits" : "nats";
}

// One comment line per band echoing the fully resolved deployment numbers,
// so a CSV is interpretable without the config that produced it.
void preset_comment(std::ostream& os, const RunConfig& rc, const std::string& band) {
    RunConfig t = rc;
    t.band = band;
    apply_band_preset(t);
    os << "# preset " << band << ": freq_ghz=" << g12(t.freq_ghz) << " bw_mhz=" << g12(t.bw_mhz)
       << " tx_dbm=" << g12(t.tx_dbm) << " noise_dbm_hz=" << g12(t.noise_dbm_hz)
       << " ssb_ms=" << g12(t.ssb_ms) << " t_beam_ms=" << g12(t.t_beam_ms)
       << " t_cell_ms=" << g12(t.t_cell_ms) << " alpha_los=" << g12(t.alpha_los)
       << " alpha_nlos=" << g12(t.alpha_nlos) << " los_radius_m=" << g12(t.los_radius_m)
       << " sinr_cap_db=" << g12(t.sinr_cap_db) << "\n";
}

void csv_preamble(std::ostream& os, const RunConfig& rc, const std::vector<std::string>& bands) {
    os << "#schema=1\n";
    for (const auto& b : bands) preset_comment(os, rc, b);
    os << "# log_base=" << rc.log_base << " noise_convention="
       << (rc.quad.noise == NoiseConvention::sigma2 ? "sigma2" : "n0") << "\n";
    os << "band,isd_m,speed_kmh,n,p_bm,mu_b,mu_c,T_o,rate,ase_eff\n";
}

void csv_row(std::ostream& os, double scale, const std::string& band, double isd_m,
             double speed_kmh, const AseResult& r) {
    const double mu_c = r.mobility.mu_s_cell * units::kmh_to_mps(speed_kmh);
    os << band << ',' << g12(isd_m) << ',' << g12(speed_kmh) << ',' << r.n << ','
       << g12(r.mobility.p_bm) << ',' << g12(r.mobility.mu_b_eff) << ',' << g12(mu_c) << ','
       << g12(r.overhead) << ',' << g12(r.rate * scale) << ',' << g12(r.effective_ase * scale)
       << "\n";
}

void emit_warnings(const NetworkConfig& cfg, std::ostream& err) {
    for (const auto& w : validate(cfg)) err << "warning: " << w << "\n";
}

}  // namespace

int cmd_evaluate(const RunConfig& rc, int n, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        const NetworkConfig cfg = to_network(rc);
        emit_warnings(cfg, err);
        const BeamSetting beams = beam_setting(n);
        const AseResult r = effective_ase(cfg, beams, rc.quad);
        if (misalignment_saturated(r.mobility))
            err << "warning: misalignment probability saturated (p_bm=" << g6(r.mobility.p_bm)
                << "); the SSB period dwarfs the beam dwell time at n=" << n << "\n";

        const double scale = rate_scale(rc);
        const char* u = rate_unit(rc);
        const MobilityProfile& m = r.mobility;
        out << "band " << rc.band << ", isd " << g6(rc.isd_m) << " m, speed " << g6(rc.speed_kmh)
            << " km/h, n=" << n << " (" << (1 << n) << " beams)\n"
            << "  lambda            " << g6(cfg.bs_intensity) << " BS/m^2\n"
            << "  p_bm              " << g6(m.p_bm) << "\n"
            << "  mu_s_cell         " << g6(m.mu_s_cell) << " /m\n"
            << "  mu_s_beam         " << g6(m.mu_s_beam) << " /m\n"
            << "  mu_c              " << g6(m.mu_s_cell * cfg.speed) << " /s\n"
            << "  mu_t_beam         " << g6(m.mu_t_beam) << " /s\n"
            << "  mu_b (ssb-capped) " << g6(m.mu_b_eff) << " /s\n"
            << "  T_o               " << g6(r.overhead) << "\n"
            << "  rate              " << g6(r.rate * scale) << " " << u << "/s\n"
            << "  effective ASE     " << g6(r.effective_ase * scale) << " " << u << "/s/m^2\n";

        if (!rc.out_path.empty()) {
            namespace fs = std::filesystem;
            std::error_code ec;
            const bool fresh = !fs::exists(rc.out_path, ec) || fs::file_size(rc.out_path, ec) == 0;
            std::ofstream f(rc.out_path, std::ios::app);
            if (!f) throw validation_error("cannot open output file: " + rc.out_path);
            if (fresh) csv_preamble(f, rc, {rc.band});
            csv_row(f, scale, rc.band, rc.isd_m, rc.speed_kmh, r);
            err << "appended 1 row to " << rc.out_path << "\n";
        }
        return 0;
    });
}

int cmd_optimize(const RunConfig& rc, int n_min, int n_max, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        const NetworkConfig cfg = to_network(rc);
        emit_warnings(cfg, err);
        const OptimizeResult res = optimal_n(cfg, rc.quad, n_min, n_max);

        std::string saturated;
        for (const AseResult& a : res.curve)
            if (misalignment_saturated(a.mobility)) saturated += " " + std::to_string(a.n);
        if (!saturated.empty())
            err << "warning: misalignment probability saturated at n:" << saturated << "\n";

        const double scale = rate_scale(rc);
        const char* u = rate_unit(rc);
        out << "band " << rc.band << ", isd " << g6(rc.isd_m) << " m, speed " << g6(rc.speed_kmh)
            << " km/h\n";
        char line[256];
        std::snprintf(line, sizeof line, "%4s %8s %12s %12s %12s %14s %16s\n", "n", "beams",
                      "p_bm", "mu_b[/s]", "T_o", "rate", "ase_eff");
        out << line;
        for (const AseResult& a : res.curve) {
            std::snprintf(line, sizeof line, "%4d %8d %12.6g %12.6g %12.6g %14.8g %16.8g%s\n",
                          a.n, 1 << a.n, a.mobility.p_bm, a.mobility.mu_b_eff, a.overhead,
                          a.rate * scale, a.effective_ase * scale,
                          a.n == res.best_n ? "  <- optimal" : "");
            out << line;
        }
        out << "optimal n = " << res.best_n << " (" << (1 << res.best_n)
            << " beams), effective ASE = "
            << g6(res.curve[static_cast<size_t>(res.best_n - n_min)].effective_ase * scale) << " "
            << u << "/s/m^2\n";
        if (res.degenerate)
            out << "note: degenerate optimum; overhead saturates the whole range (every candidate "
                   "scores zero), smallest n reported\n";

        if (!rc.out_path.empty()) {
            std::ofstream f(rc.out_path, std::ios::trunc);
            if (!f) throw validation_error("cannot open output file: " + rc.out_path);
            csv_preamble(f, rc, {rc.band});
            for (const AseResult& a : res.curve) csv_row(f, scale, rc.band, rc.isd_m, rc.speed_kmh, a);
            err << "wrote " << res.curve.size() << " rows to " << rc.out_path << "\n";
        }
        return 0;
    });
}

int cmd_sweep(const RunConfig& rc, const std::string& grid_path, std::ostream& out,
              std::ostream& err) {
    return guard(err, [&] {
        const SweepGrid grid = parse_sweep_grid_file(grid_path);
        const std::vector<SweepRow> rows = sweep(grid, rc.quad, rc.threads);
        const double scale = rate_scale(rc);

        std::ofstream file;
        std::ostream* os = &out;
        if (!rc.out_path.empty()) {
            file.open(rc.out_path, std::ios::trunc);
            if (!file) throw validation_error("cannot open output file: " + rc.out_path);
            os = &file;
        }
        csv_preamble(*os, rc, grid.bands);
        int failed = 0;
        for (const SweepRow& row : rows) {
            if (row.error.empty()) {
                csv_row(*os, scale, row.band, row.isd_m, row.speed_kmh, row.result);
            } else {
                ++failed;
                *os << row.band << ',' << g12(row.isd_m) << ',' << g12(row.speed_kmh) << ','
                    << row.n << ",nan,nan,nan,nan,nan,nan\n"
                    << "# error band=" << row.band << " isd_m=" << g12(row.isd_m)
                    << " speed_kmh=" << g12(row.speed_kmh) << " n=" << row.n << ": " << row.error
                    << "\n";
            }
        }
        if (!rc.out_path.empty())
            err << "wrote " << rows.size() << " rows to " << rc.out_path << "\n";
        if (failed > 0) {
            err << "error (numerical): " << failed << " of " << rows.size()
                << " grid points failed; see # error comments in the CSV\n";
            return 2;
        }
        return 0;
    });
}

int cmd_validate(const RunConfig& rc, double perturb_gain, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        const NetworkConfig cfg = to_network(rc);
        emit_warnings(cfg, err);
        const McSettings mc = to_mc_settings(rc);

        const double isd_eq = isd_from_intensity(cfg.bs_intensity);
        if (rc.trajectory_m < 100.0 * isd_eq)
            err << "warning: trajectory " << g6(rc.trajectory_m)
                << " m is shorter than 100 mean cell diameters (" << g6(100.0 * isd_eq)
                << " m); crossing estimates will be noisy\n";

        out << "cross-validation: band " << rc.band << ", isd " << g6(rc.isd_m) << " m, speed "
            << g6(rc.speed_kmh) << " km/h, samples " << mc.samples << ", seed " << mc.seed
            << ", trajectory " << g6(rc.trajectory_m) << " m\n";
        if (perturb_gain != 1.0)
            out << "self-test: analytic main-lobe gain scaled by " << g6(perturb_gain) << "\n";

        int total = 0;
        int passed = 0;
        auto report = [&](const std::string& label, double target, double estimate,
                          double tol_abs) {
            ++total;
            const double diff = std::fabs(estimate - target);
            const bool ok = diff <= tol_abs;
            if (ok) ++passed;
            out << "check " << label << ": target=" << g6(target) << " estimate=" << g6(estimate)
                << " tolerance=" << g6(tol_abs) << " |diff|=" << g6(diff) << " verdict="
                << (ok ? "PASS" : "FAIL") << "\n";
        };

        // Crossing intensities are gain-free, so the perturbation leaves them
        // alone by construction. Handover counts do not depend on n; check once.
        // Tolerance is 2% with a 3-sigma Poisson floor so short trajectories or
        // sparse deployments (few events) do not turn shot noise into failures.
        const auto count_tol = [&](double target, std::uint64_t events) {
            const double se = std::sqrt(static_cast<double>(std::max<std::uint64_t>(events, 1))) /
                              rc.trajectory_m;
            return std::max(0.02 * target, 3.0 * se);
        };
        bool handover_done = false;
        for (int n : {1, 2, 4}) {
            const BeamSetting b = beam_setting(n);
            const CrossingCounts cc = count_crossings(cfg, b, rc.trajectory_m, rc.seed);
            if (!handover_done) {
                const double target = handover_intensity(cfg).per_m;
                report("crossing-handover", target, cc.handover_per_m,
                       count_tol(target, cc.handovers));
                handover_done = true;
            }
            const double target = beam_reselection_intensity(cfg, b).per_m;
            report("crossing-reselection n=" + std::to_string(n), target, cc.reselection_per_m,
                   count_tol(target, cc.reselections));
        }

        const std::vector<double> beta_db = {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
        std::vector<double> thresholds;
        thresholds.reserve(beta_db.size());
        for (double d : beta_db) thresholds.push_back(units::db_to_linear(d));

        for (int n : {2, 4, 6}) {
            const BeamSetting actual = beam_setting(n);
            const BeamSetting analytic =
                beam_setting(n, std::ldexp(perturb_gain, n), std::ldexp(1.0, -n));
            const CurveEstimate curve = simulate_success_curve(cfg, actual, thresholds, mc);
            for (size_t i = 0; i < thresholds.size(); ++i) {
                const double target = success_probability(cfg, analytic, thresholds[i], rc.quad);
                const McEstimate& e = curve.per_beta[i];
                const double tol = std::max(0.01, 3.0 * e.standard_error);
                char lbl[64];
                std::snprintf(lbl, sizeof lbl, "success-prob n=%d beta=%gdB", n, beta_db[i]);
                report(lbl, target, e.estimate, tol);
            }
        }

        {
            const int n = 4;
            const BeamSetting actual = beam_setting(n);
            const BeamSetting analytic =
                beam_setting(n, std::ldexp(perturb_gain, n), std::ldexp(1.0, -n));
            const double target = ergodic_rate(cfg, analytic, rc.quad);
            const McEstimate e = simulate_rate(cfg, actual, mc);
            const double scale = rate_scale(rc);
            const double tol = std::max(0.03 * std::fabs(target), 3.0 * e.standard_error);
            report("ergodic-rate n=4", target * scale, e.estimate * scale, tol * scale);
        }

        out << "RESULT: " << (passed == total ? "PASS" : "FAIL") << " (" << passed << "/" << total
            << " checks)\n";
        return passed == total ? 0 : 3;
    });
}

}  // namespace beamopt
