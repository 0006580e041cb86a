#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>

#include "beamopt/ase.hpp"
#include "beamopt/mc.hpp"
#include "beamopt/model.hpp"
#include "beamopt/sinr_rate.hpp"

namespace beamopt {

// One resolved run description: a band preset plus every deployment knob in
// human units, quadrature and MC settings, and output options. Parsing fills
// unset deployment fields from the band preset; serialization always writes
// the fully resolved state, so parse -> serialize -> parse is the identity.
struct RunConfig {
    std::string band = "fr1";  // fr1 | fr2 | custom
    double isd_m = 500.0;
    double speed_kmh = 30.0;
    double freq_ghz = 3.5;
    double bw_mhz = 100.0;
    double tx_dbm = 43.0;
    double noise_dbm_hz = -174.0;
    double ssb_ms = 20.0;
    double t_beam_ms = 23.0;
    double t_cell_ms = 43.0;
    double alpha_los = 3.5;
    double alpha_nlos = 3.5;
    double los_radius_m = 0.0;
    double sinr_cap_db = 30.0;

    QuadratureSpec quad{};

    uint64_t samples = 100000;
    uint64_t seed = 1;
    int threads = 0;
    double trajectory_m = 1e6;
    double window_m = 0.0;  // MC interference window; 0 = auto

    std::string out_path;           // empty = stdout only
    std::string log_base = "nats";  // nats | bits
};

// Overwrites the deployment fields (except isd/speed) with the preset for
// cfg.band; no-op for "custom". Throws validation_error on an unknown band.
void apply_band_preset(RunConfig& cfg);

NetworkConfig to_network(const RunConfig& cfg);
McSettings to_mc_settings(const RunConfig& cfg);

// Rate scale for the configured log base: 1 for nats, 1/ln 2 for bits.
double rate_scale(const RunConfig& cfg);

// Flat key = value format with [section] headers; # and ; start comments.
RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_file(const std::string& path);
std::string serialize_run_config(const RunConfig& cfg);

// Sweep grid file: a [grid] section with comma-separated axes.
SweepGrid parse_sweep_grid(std::istream& in);
SweepGrid parse_sweep_grid_file(const std::string& path);

}  // namespace beamopt
