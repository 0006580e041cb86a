#include "beamopt/sinr_rate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "beamopt/errors.hpp"
#include "beamopt/mobility.hpp"
#include "beamopt/quadrature.hpp"

namespace beamopt {

namespace {

constexpr double kPi = std::numbers::pi;

double noise_term(const NetworkConfig& cfg, NoiseConvention noise) {
    return noise == NoiseConvention::sigma2 ? cfg.bandwidth * cfg.noise_density
                                            : cfg.noise_density;
}

// Bracket of the interference exponent without the 2*pi*lambda*w prefactor.
// a = beta * r^alpha_serv / gain0. Written as a sum of x/(1+x) terms so small
// beta never cancels.
double intf_bracket(double a, double alpha_intf, double w, const BeamSetting& beams,
                    double p_main) {
    const double inv_watt = std::pow(w, -alpha_intf);
    const double xm = a * beams.gain_main * inv_watt;
    const double xs = a * beams.gain_side * inv_watt;
    return p_main * xm / (1.0 + xm) + (1.0 - p_main) * xs / (1.0 + xs);
}

double mixture(const NetworkConfig& cfg, const BeamSetting& beams, double beta,
               double p_bm, const QuadratureSpec& spec) {
    double ps = 0.0;
    if (p_bm < 1.0) {
        ps += (1.0 - p_bm) * conditional_success(cfg, beams, beta, beams.gain_main, spec);
    }
    if (p_bm > 0.0) {
        ps += p_bm * conditional_success(cfg, beams, beta, beams.gain_side, spec);
    }
    return ps;
}

}  // namespace

void validate(const QuadratureSpec& spec, const NetworkConfig& cfg) {
    auto check_tol = [](double t, const char* name) {
        if (!(t > 0.0 && t <= 1e-2)) {
            throw validation_error(std::string(name) + " must lie in (0, 1e-2]");
        }
    };
    check_tol(spec.inner_rel_tol, "inner_rel_tol");
    check_tol(spec.outer_rel_tol, "outer_rel_tol");
    check_tol(spec.rate_rel_tol, "rate_rel_tol");
    if (spec.max_intervals < 8) {
        throw validation_error("max_intervals must be at least 8");
    }
    if (spec.r_max != 0.0 && !(spec.r_max > cfg.los_radius)) {
        throw validation_error("r_max must exceed los_radius");
    }
}

double outer_radius(const QuadratureSpec& spec, const NetworkConfig& cfg) {
    if (spec.r_max > 0.0) return spec.r_max;
    // nearest-BS tail mass exp(-lambda pi r^2) below 1e-12
    return std::sqrt(-std::log(1e-12) / (cfg.bs_intensity * kPi));
}

double interference_factor(double alpha_serv, double alpha_intf, double w,
                           double r, double beta, double gain0,
                           const BeamSetting& beams, double bs_intensity) {
    const double a = beta * std::pow(r, alpha_serv) / gain0;
    const double p_main = main_lobe_hit_probability(beams);
    return 2.0 * kPi * bs_intensity * intf_bracket(a, alpha_intf, w, beams, p_main) * w;
}

double conditional_success(const NetworkConfig& cfg, const BeamSetting& beams,
                           double beta, double gain0, const QuadratureSpec& spec) {
    validate(spec, cfg);
    if (!(beta >= 0.0)) throw validation_error("beta must be nonnegative");
    if (!(gain0 > 0.0)) throw validation_error("gain0 must be positive");

    const DerivedConstants dc = derive(cfg);
    const double lam = cfg.bs_intensity;
    const double two_pi_lam = 2.0 * kPi * lam;
    const double p_main = main_lobe_hit_probability(beams);
    const double noise_coef =
        beta * noise_term(cfg, spec.noise) / (cfg.tx_power * dc.path_const * gain0);
    const double rc = cfg.los_radius;
    const double r_hi = outer_radius(spec, cfg);

    const quad::Options inner{spec.inner_rel_tol, 0.0, spec.max_intervals};
    const quad::Options outer{spec.outer_rel_tol, 0.0, spec.max_intervals};

    auto density = [=](double r) { return two_pi_lam * r * std::exp(-lam * kPi * r * r); };

    double total = 0.0;

    if (rc > 0.0) {
        // serving link is LOS; interferers split at the blockage radius
        auto integrand = [&](double r) {
            const double a = beta * std::pow(r, cfg.alpha_los) / gain0;
            auto f_ll = [&](double w) { return intf_bracket(a, cfg.alpha_los, w, beams, p_main) * w; };
            auto f_ln = [&](double w) { return intf_bracket(a, cfg.alpha_nlos, w, beams, p_main) * w; };
            const double intf = quad::integrate(f_ll, r, rc, inner).value +
                                quad::integrate_to_inf(f_ln, rc, inner).value;
            const double expo = noise_coef * std::pow(r, cfg.alpha_los) + two_pi_lam * intf;
            return density(r) * std::exp(-expo);
        };
        total += quad::integrate(integrand, 0.0, std::min(rc, r_hi), outer).value;
    }

    if (r_hi > rc) {
        // serving link is NLOS, as are all interferers beyond it
        auto integrand = [&](double r) {
            const double a = beta * std::pow(r, cfg.alpha_nlos) / gain0;
            auto f_nn = [&](double w) { return intf_bracket(a, cfg.alpha_nlos, w, beams, p_main) * w; };
            const double intf = quad::integrate_to_inf(f_nn, r, inner).value;
            const double expo = noise_coef * std::pow(r, cfg.alpha_nlos) + two_pi_lam * intf;
            return density(r) * std::exp(-expo);
        };
        total += quad::integrate(integrand, rc, r_hi, outer).value;
    }

    return total;
}

double success_probability(const NetworkConfig& cfg, const BeamSetting& beams,
                           double beta, const QuadratureSpec& spec) {
    return mixture(cfg, beams, beta, misalignment_probability(cfg, beams), spec);
}

SuccessCurve success_curve(const NetworkConfig& cfg, const BeamSetting& beams,
                           const std::vector<double>& thresholds,
                           const QuadratureSpec& spec) {
    if (thresholds.empty()) throw validation_error("threshold grid is empty");
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw validation_error("threshold grid must be ascending");
    }
    SuccessCurve curve;
    curve.n = beams.n;
    curve.thresholds = thresholds;
    curve.values.reserve(thresholds.size());
    const double p_bm = misalignment_probability(cfg, beams);
    for (double beta : thresholds) {
        curve.values.push_back(mixture(cfg, beams, beta, p_bm, spec));
    }
    return curve;
}

double rate_from_success(const std::function<double(double)>& ps, double bandwidth,
                         double sinr_cap, const QuadratureSpec& spec) {
    if (!(bandwidth > 0.0)) throw validation_error("bandwidth must be positive");
    if (!(sinr_cap > 0.0)) throw validation_error("sinr_cap must be positive");
    const quad::Options opt{spec.rate_rel_tol, 0.0, spec.max_intervals};
    // the kernel peaks at z = 0; pre-split log-spaced decades below the cap
    std::vector<double> seeds;
    for (int k = spec.rate_seed_decades; k >= 1; --k) {
        seeds.push_back(sinr_cap * std::pow(10.0, -k));
    }
    auto kernel = [&ps](double z) { return ps(z) / (1.0 + z); };
    return bandwidth * quad::integrate(kernel, 0.0, sinr_cap, opt, seeds).value;
}

double ergodic_rate(const NetworkConfig& cfg, const BeamSetting& beams,
                    const QuadratureSpec& spec) {
    // the mixture weight does not depend on the threshold, so hoist it
    const double p_bm = misalignment_probability(cfg, beams);
    auto ps = [&](double z) { return mixture(cfg, beams, z, p_bm, spec); };
    return rate_from_success(ps, cfg.bandwidth, cfg.sinr_cap, spec);
}

}  // namespace beamopt
