#include "beamopt/model.hpp"

#include <cmath>
#include <numbers>

#include "beamopt/errors.hpp"
#include "beamopt/units.hpp"

namespace beamopt {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxBeamExponent = 20;

void require(bool ok, const char* msg) {
    if (!ok) throw validation_error(msg);
}
}  // namespace

std::vector<std::string> validate(const NetworkConfig& cfg) {
    require(std::isfinite(cfg.bs_intensity) && cfg.bs_intensity > 0, "bs_intensity must be > 0");
    require(std::isfinite(cfg.speed) && cfg.speed >= 0, "speed must be >= 0");
    require(std::isfinite(cfg.ssb_period) && cfg.ssb_period > 0, "ssb_period must be > 0");
    require(std::isfinite(cfg.tx_power) && cfg.tx_power > 0, "tx_power must be > 0");
    require(std::isfinite(cfg.bandwidth) && cfg.bandwidth > 0, "bandwidth must be > 0");
    require(std::isfinite(cfg.noise_density) && cfg.noise_density > 0, "noise_density must be > 0");
    require(std::isfinite(cfg.carrier_freq) && cfg.carrier_freq > 0, "carrier_freq must be > 0");
    require(std::isfinite(cfg.los_radius) && cfg.los_radius >= 0, "los_radius must be >= 0");
    require(std::isfinite(cfg.sinr_cap) && cfg.sinr_cap > 0, "sinr_cap must be > 0");
    require(std::isfinite(cfg.overhead_beam) && cfg.overhead_beam >= 0, "overhead_beam must be >= 0");
    require(std::isfinite(cfg.overhead_cell) && cfg.overhead_cell >= 0, "overhead_cell must be >= 0");
    require(cfg.alpha_nlos >= cfg.alpha_los, "alpha_nlos must be >= alpha_los");
    // Interference from the far field (and the success-probability integrals)
    // diverge for alpha_nlos <= 2 on an infinite plane.
    require(cfg.alpha_nlos > 2.0, "alpha_nlos must be > 2");

    std::vector<std::string> warnings;
    if (cfg.los_radius > 0 && (cfg.alpha_los < 1.8 || cfg.alpha_los > 2.5)) {
        warnings.push_back("alpha_los outside the typical LOS range [1.8, 2.5]");
    }
    return warnings;
}

DerivedConstants derive(const NetworkConfig& cfg) {
    const double k = units::speed_of_light / (4.0 * kPi * cfg.carrier_freq);
    return DerivedConstants{k * k, cfg.bandwidth * cfg.noise_density};
}

NetworkConfig config_from_deployment(double isd_m, double speed_kmh, double freq_ghz,
                                     double bw_mhz, double tx_dbm, double noise_dbm_hz,
                                     double ssb_ms, double t_beam_ms, double t_cell_ms,
                                     double alpha_los, double alpha_nlos,
                                     double los_radius_m, double sinr_cap_db) {
    require(std::isfinite(isd_m) && isd_m > 0, "isd must be > 0");
    NetworkConfig cfg{};
    cfg.bs_intensity = 4.0 / (kPi * isd_m * isd_m);
    cfg.speed = units::kmh_to_mps(speed_kmh);
    cfg.ssb_period = units::ms_to_s(ssb_ms);
    cfg.tx_power = units::dbm_to_watts(tx_dbm);
    cfg.bandwidth = units::mhz_to_hz(bw_mhz);
    cfg.noise_density = units::dbm_to_watts(noise_dbm_hz);  // dBm/Hz -> W/Hz
    cfg.carrier_freq = units::ghz_to_hz(freq_ghz);
    cfg.alpha_los = los_radius_m == 0 ? alpha_nlos : alpha_los;
    cfg.alpha_nlos = alpha_nlos;
    cfg.los_radius = los_radius_m;
    cfg.overhead_beam = units::ms_to_s(t_beam_ms);
    cfg.overhead_cell = units::ms_to_s(t_cell_ms);
    cfg.sinr_cap = units::db_to_linear(sinr_cap_db);
    validate(cfg);
    return cfg;
}

double isd_from_intensity(double bs_intensity) {
    require(bs_intensity > 0, "bs_intensity must be > 0");
    return 2.0 / std::sqrt(kPi * bs_intensity);
}

NetworkConfig fr1_config(double isd_m, double speed_kmh) {
    return config_from_deployment(isd_m, speed_kmh, 3.5, 100, 43, -174,
                                  20, 23, 43, 3.5, 3.5, 0, 30);
}

NetworkConfig fr2_config(double isd_m, double speed_kmh) {
    return config_from_deployment(isd_m, speed_kmh, 28, 400, 36, -174,
                                  20, 23, 43, 1.9, 3.5, 75, 30);
}

BeamSetting beam_setting(int n) {
    require(n >= 1 && n <= kMaxBeamExponent, "beam exponent n must be in [1, 20]");
    // ldexp keeps beamwidth * 2^n == 2 pi and G_m * G_s == 1 bit-exact.
    return BeamSetting{n, std::ldexp(2.0 * kPi, -n), std::ldexp(1.0, n), std::ldexp(1.0, -n)};
}

BeamSetting beam_setting(int n, double gain_main, double gain_side) {
    require(n >= 1 && n <= kMaxBeamExponent, "beam exponent n must be in [1, 20]");
    require(gain_side > 0 && gain_main >= gain_side, "gains must satisfy G_m >= G_s > 0");
    return BeamSetting{n, std::ldexp(2.0 * kPi, -n), gain_main, gain_side};
}

double main_lobe_hit_probability(const BeamSetting& b) {
    return std::ldexp(1.0, -b.n);
}

}  // namespace beamopt
