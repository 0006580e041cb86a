#pragma once
#include <string>
#include <vector>

namespace beamopt {

// Deployment parameters of a beam-managed downlink, SI linear units.
struct NetworkConfig {
    double bs_intensity;   // lambda, BS per m^2
    double speed;          // MT speed v, m/s
    double ssb_period;     // tau, s
    double tx_power;       // P, W
    double bandwidth;      // W, Hz
    double noise_density;  // N0, W/Hz
    double carrier_freq;   // f_c, Hz
    double alpha_los;      // LOS path loss exponent
    double alpha_nlos;     // NLOS path loss exponent
    double los_radius;     // R_c, m; 0 means every link is NLOS
    double overhead_beam;  // T_b, s per beam reselection
    double overhead_cell;  // T_c, s per cell handover
    double sinr_cap;       // Q_max, linear
};

struct DerivedConstants {
    double path_const;   // K = (c / (4 pi f_c))^2
    double noise_power;  // sigma^2 = W * N0, in W
};

// One beam-count choice: 2^n beams per BS.
struct BeamSetting {
    int n;
    double beamwidth;  // phi_n = 2 pi / 2^n, rad
    double gain_main;  // G_m,n, linear
    double gain_side;  // G_s,n, linear
};

// Throws validation_error on hard violations; returns human-readable
// warnings for soft ones (e.g. alpha_los outside its typical range).
std::vector<std::string> validate(const NetworkConfig& cfg);

DerivedConstants derive(const NetworkConfig& cfg);

// Builds a config from human deployment units. lambda = 4 / (pi * isd^2).
// When los_radius_m == 0, alpha_los is forced to alpha_nlos so the LOS
// branch of every formula vanishes.
NetworkConfig config_from_deployment(double isd_m, double speed_kmh, double freq_ghz,
                                     double bw_mhz, double tx_dbm, double noise_dbm_hz,
                                     double ssb_ms, double t_beam_ms, double t_cell_ms,
                                     double alpha_los, double alpha_nlos,
                                     double los_radius_m, double sinr_cap_db);

double isd_from_intensity(double bs_intensity);

// Band presets (carrier, bandwidth, power, overheads, blockage) for the
// sub-6 GHz and mmWave reference deployments.
NetworkConfig fr1_config(double isd_m, double speed_kmh);
NetworkConfig fr2_config(double isd_m, double speed_kmh);

// Conservation-of-energy gain law: G_m = 2^n, G_s = 2^-n. n in [1, 20].
BeamSetting beam_setting(int n);
BeamSetting beam_setting(int n, double gain_main, double gain_side);

// Probability the MT falls inside an interferer's main lobe: phi_n / 2pi.
double main_lobe_hit_probability(const BeamSetting& b);

}  // namespace beamopt
