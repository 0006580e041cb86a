#pragma once
#include <string>
#include <vector>

#include "beamopt/mobility.hpp"
#include "beamopt/model.hpp"
#include "beamopt/sinr_rate.hpp"

namespace beamopt {

// Full per-n evaluation: rate, overhead, and their overhead-discounted
// area spectral efficiency. Rates are nats/s; ASE is nats/s/m^2.
struct AseResult {
    int n = 0;
    double rate = 0.0;           // R_n
    double overhead = 0.0;       // T_o, not clamped
    double effective_ase = 0.0;  // lambda * rate * max(0, 1 - T_o)
    MobilityProfile mobility{};
};

struct OptimizeResult {
    int best_n = 0;
    bool degenerate = false;  // every candidate scored zero
    std::vector<AseResult> curve;
};

// Cartesian sweep axes. Bands are preset names ("fr1" or "fr2").
struct SweepGrid {
    std::vector<std::string> bands;
    std::vector<double> isd_m;
    std::vector<double> speed_kmh;
    int n_min = 1;
    int n_max = 10;
};

struct SweepRow {
    std::string band;
    double isd_m = 0.0;
    double speed_kmh = 0.0;
    int n = 0;
    AseResult result{};
    std::string error;  // empty on success; numerical failure text otherwise
};

// The overhead clamp (1 - T_o)^+ is applied here and nowhere else.
AseResult effective_ase(const NetworkConfig& cfg, const BeamSetting& beams,
                        const QuadratureSpec& spec = {});

// Exhaustive search over n in [n_min, n_max]; ties break toward smaller n.
// If every candidate yields zero ASE, best_n = n_min and degenerate is set.
OptimizeResult optimal_n(const NetworkConfig& cfg, const QuadratureSpec& spec,
                         int n_min, int n_max);

// One row per (band, isd, speed, n) in deterministic order: bands as listed,
// then ISD, speed, and n ascending. Rows evaluate in parallel (threads = 0
// picks the hardware count) but the output never depends on the schedule.
// Per-row numerical failures are recorded in the row; the sweep continues.
std::vector<SweepRow> sweep(const SweepGrid& grid, const QuadratureSpec& spec = {},
                            int threads = 0);

}  // namespace beamopt
