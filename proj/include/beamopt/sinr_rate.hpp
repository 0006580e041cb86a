#pragma once
#include <functional>
#include <vector>

#include "beamopt/model.hpp"

namespace beamopt {

// Noise term in the success-probability exponent: full noise power W*N0, or
// the bare spectral density N0 (an alternative normalization seen in some
// derivations). MC simulation honors the same switch so cross-checks compare
// like with like.
enum class NoiseConvention { sigma2, n0 };

struct QuadratureSpec {
    double inner_rel_tol = 1e-7;   // interference integrals over w
    double outer_rel_tol = 1e-6;   // serving-distance integrals over r
    double rate_rel_tol = 1e-5;    // threshold integral over z
    double r_max = 0.0;            // outer truncation radius, m; 0 = auto
    int max_intervals = 4000;      // per-integral subdivision budget
    int rate_seed_decades = 4;     // log-spaced pre-splits near z = 0
    NoiseConvention noise = NoiseConvention::sigma2;
};

struct SuccessCurve {
    int n = 0;
    std::vector<double> thresholds;  // linear SINR thresholds, ascending
    std::vector<double> values;      // success probability at each threshold
};

// Throws validation_error on out-of-range tolerances or r_max <= los_radius.
void validate(const QuadratureSpec& spec, const NetworkConfig& cfg);

// Truncation radius for the serving-distance integral: spec.r_max if set,
// otherwise the radius beyond which the nearest-BS tail mass is below 1e-12.
double outer_radius(const QuadratureSpec& spec, const NetworkConfig& cfg);

// Integrand of the interference exponent for serving exponent alpha_serv and
// interferer exponent alpha_intf at interferer distance w, given serving
// distance r, threshold beta, and serving-lobe gain gain0.
double interference_factor(double alpha_serv, double alpha_intf, double w,
                           double r, double beta, double gain0,
                           const BeamSetting& beams, double bs_intensity);

// Success probability conditioned on the serving-lobe gain gain0: the
// serving-distance integral of the fading/noise/interference exponent against
// the nearest-BS distance density.
double conditional_success(const NetworkConfig& cfg, const BeamSetting& beams,
                           double beta, double gain0,
                           const QuadratureSpec& spec = {});

// Misalignment mixture of the two conditional success probabilities.
double success_probability(const NetworkConfig& cfg, const BeamSetting& beams,
                           double beta, const QuadratureSpec& spec = {});

SuccessCurve success_curve(const NetworkConfig& cfg, const BeamSetting& beams,
                           const std::vector<double>& thresholds,
                           const QuadratureSpec& spec = {});

// Capped ergodic rate in nats/s from an arbitrary success-probability
// function: bandwidth * integral over z in (0, sinr_cap) of ps(z)/(1+z).
double rate_from_success(const std::function<double(double)>& ps,
                         double bandwidth, double sinr_cap,
                         const QuadratureSpec& spec = {});

// Capped ergodic rate of the network model, nats/s.
double ergodic_rate(const NetworkConfig& cfg, const BeamSetting& beams,
                    const QuadratureSpec& spec = {});

}  // namespace beamopt
