#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "beamopt/model.hpp"
#include "beamopt/sinr_rate.hpp"

namespace beamopt {

struct McSettings {
    uint64_t samples = 100000;
    uint64_t seed = 1;
    int threads = 0;             // 0 = hardware count
    double window_radius = 0.0;  // m; 0 = auto via interference_window_radius
    NoiseConvention noise = NoiseConvention::sigma2;
    // Diagnostic switches for closed-form sub-oracles; not exposed on the CLI.
    bool no_interference = false;
    bool no_noise = false;
    double fixed_serving_distance = 0.0;  // m; 0 = sample it
};

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;  // sample std dev / sqrt(sample_count)
    uint64_t sample_count = 0;
    uint64_t seed = 0;
    uint64_t resamples = 0;  // realizations redrawn for an empty window
};

// Success estimates for a shared threshold grid evaluated on common
// realizations (the SINR of each realization is compared to every threshold).
struct CurveEstimate {
    std::vector<double> thresholds;
    std::vector<McEstimate> per_beta;
    uint64_t resamples = 0;
};

// One explicit marked PPP draw: BS coordinates plus each BS's beam-partition
// rotation, uniform in [0, beamwidth).
struct PppRealization {
    double window_radius = 0.0;
    std::vector<std::array<double, 2>> points;
    std::vector<double> rotations;
    uint64_t seed = 0;
};

struct CrossingCounts {
    uint64_t handovers = 0;
    uint64_t reselections = 0;
    double length = 0.0;            // m
    double handover_per_m = 0.0;
    double reselection_per_m = 0.0;
};

// Radius beyond which truncated interference is below 0.1% of the mean, and
// never less than 5x the analytic truncation radius or 10x the LOS radius.
double interference_window_radius(const NetworkConfig& cfg,
                                  const QuadratureSpec& spec = {});

PppRealization sample_ppp_disk(const NetworkConfig& cfg, const BeamSetting& beams,
                               double radius, uint64_t seed);

McEstimate simulate_success_prob(const NetworkConfig& cfg, const BeamSetting& beams,
                                 double beta, const McSettings& mc = {});

CurveEstimate simulate_success_curve(const NetworkConfig& cfg, const BeamSetting& beams,
                                     const std::vector<double>& thresholds,
                                     const McSettings& mc = {});

// Mean of bandwidth * ln(1 + min(SINR, sinr_cap)) over realizations, nats/s.
McEstimate simulate_rate(const NetworkConfig& cfg, const BeamSetting& beams,
                         const McSettings& mc = {});

// March an MT along a straight trajectory of the given length through a
// lazily generated PPP and count serving-BS changes and same-BS beam-index
// changes. frame_rotation tilts the trajectory direction; the underlying
// point field for a given seed is shared across rotations.
CrossingCounts count_crossings(const NetworkConfig& cfg, const BeamSetting& beams,
                               double length, uint64_t seed,
                               double frame_rotation = 0.0);

}  // namespace beamopt
