#pragma once
#include "beamopt/model.hpp"

namespace beamopt {

struct Intensity {
    double per_m;
    double per_s;
};

// Stationary mobility averages for one (config, beam-count) point.
struct MobilityProfile {
    double mu_s_cell;  // cell boundary crossings per m
    double mu_s_beam;  // beam reselections per m
    double mu_t_beam;  // beam reselections per s
    double mu_b_eff;   // SSB-capped reselection rate, per s
    double p_bm;       // beam misalignment probability
    double overhead;   // T_o, fraction of time (not clamped here)
};

// Cell boundary crossing intensity: 4 sqrt(lambda) / pi per m.
Intensity handover_intensity(const NetworkConfig& cfg);

// Beam boundary crossing intensity: 2^n sqrt(lambda) / pi per m.
Intensity beam_reselection_intensity(const NetworkConfig& cfg, const BeamSetting& beams);

// p_bm = 1 - exp(-v tau mu_s,b).
double misalignment_probability(const NetworkConfig& cfg, const BeamSetting& beams);

// mu_b = 1 / max(tau, 1/mu_t,b); 0 for a stationary MT.
double effective_reselection_rate(const NetworkConfig& cfg, const BeamSetting& beams);

// T_o = mu_b T_b + mu_c T_c. May exceed 1; the ASE clamp lives downstream.
double overhead_fraction(const NetworkConfig& cfg, const BeamSetting& beams);

MobilityProfile mobility_profile(const NetworkConfig& cfg, const BeamSetting& beams);

// True when the misalignment formula has saturated (p_bm > 0.99), i.e. the
// SSB period vastly exceeds the mean beam-crossing interval.
bool misalignment_saturated(const MobilityProfile& m);

}  // namespace beamopt
