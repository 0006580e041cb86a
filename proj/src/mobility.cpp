#include "beamopt/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace beamopt {

namespace {
constexpr double kPi = std::numbers::pi;
}

Intensity handover_intensity(const NetworkConfig& cfg) {
    const double per_m = 4.0 * std::sqrt(cfg.bs_intensity) / kPi;
    return Intensity{per_m, per_m * cfg.speed};
}

Intensity beam_reselection_intensity(const NetworkConfig& cfg, const BeamSetting& beams) {
    const double per_m = std::ldexp(std::sqrt(cfg.bs_intensity) / kPi, beams.n);
    return Intensity{per_m, per_m * cfg.speed};
}

double misalignment_probability(const NetworkConfig& cfg, const BeamSetting& beams) {
    const double mu_sb = beam_reselection_intensity(cfg, beams).per_m;
    return -std::expm1(-cfg.speed * cfg.ssb_period * mu_sb);
}

double effective_reselection_rate(const NetworkConfig& cfg, const BeamSetting& beams) {
    const double mu_tb = beam_reselection_intensity(cfg, beams).per_s;
    if (mu_tb == 0.0) return 0.0;  // stationary MT: no reselections ever
    return 1.0 / std::max(cfg.ssb_period, 1.0 / mu_tb);
}

double overhead_fraction(const NetworkConfig& cfg, const BeamSetting& beams) {
    const double mu_c = handover_intensity(cfg).per_s;
    return effective_reselection_rate(cfg, beams) * cfg.overhead_beam + mu_c * cfg.overhead_cell;
}

MobilityProfile mobility_profile(const NetworkConfig& cfg, const BeamSetting& beams) {
    const Intensity cell = handover_intensity(cfg);
    const Intensity beam = beam_reselection_intensity(cfg, beams);
    MobilityProfile m{};
    m.mu_s_cell = cell.per_m;
    m.mu_s_beam = beam.per_m;
    m.mu_t_beam = beam.per_s;
    m.mu_b_eff = effective_reselection_rate(cfg, beams);
    m.p_bm = misalignment_probability(cfg, beams);
    m.overhead = m.mu_b_eff * cfg.overhead_beam + cell.per_s * cfg.overhead_cell;
    return m;
}

bool misalignment_saturated(const MobilityProfile& m) { return m.p_bm > 0.99; }

}  // namespace beamopt
