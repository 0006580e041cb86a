#pragma once
#include <cmath>

// Unit conversions. Everything past the config boundary is SI linear;
// dB/dBm/GHz/km/h exist only here and in the CLI.
namespace beamopt::units {

inline constexpr double speed_of_light = 299792458.0;  // m/s

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }
inline constexpr double mps_to_kmh(double mps) { return mps * 3.6; }
inline constexpr double ghz_to_hz(double ghz) { return ghz * 1e9; }
inline constexpr double mhz_to_hz(double mhz) { return mhz * 1e6; }
inline constexpr double ms_to_s(double ms) { return ms * 1e-3; }

}  // namespace beamopt::units
