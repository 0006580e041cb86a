#include <cmath>

#include "beamopt/mobility.hpp"
#include "beamopt/model.hpp"
#include "doctest.h"

using namespace beamopt;

namespace {
NetworkConfig with_intensity(double lambda, double speed_kmh) {
    return fr1_config(isd_from_intensity(lambda), speed_kmh);
}
}  // namespace

TEST_CASE("crossing intensities against closed forms") {
    NetworkConfig cfg = with_intensity(1e-4, 30.0);
    CHECK(handover_intensity(cfg).per_m == doctest::Approx(0.012732395447351627).epsilon(1e-12));
    CHECK(beam_reselection_intensity(cfg, beam_setting(1)).per_m ==
          doctest::Approx(0.0063661977236758134).epsilon(1e-12));
    CHECK(beam_reselection_intensity(cfg, beam_setting(3)).per_m ==
          doctest::Approx(0.025464790894703254).epsilon(1e-12));
    CHECK(handover_intensity(fr1_config(250.0, 30.0)).per_m ==
          doctest::Approx(0.00574678790800533).epsilon(1e-12));

    // time intensities are the linear ones scaled by speed
    CHECK(handover_intensity(cfg).per_s ==
          doctest::Approx(0.012732395447351627 * 30.0 / 3.6).epsilon(1e-12));
}

TEST_CASE("intensities scale as sqrt(lambda) and 2^n") {
    NetworkConfig lo = with_intensity(2.5e-5, 30.0);
    NetworkConfig hi = with_intensity(1e-4, 30.0);  // 4x the intensity
    CHECK(handover_intensity(hi).per_m ==
          doctest::Approx(2.0 * handover_intensity(lo).per_m).epsilon(1e-12));
    for (int n = 1; n <= 9; ++n) {
        CHECK(beam_reselection_intensity(hi, beam_setting(n + 1)).per_m ==
              doctest::Approx(2.0 * beam_reselection_intensity(hi, beam_setting(n)).per_m)
                  .epsilon(1e-12));
    }
}

TEST_CASE("misalignment probability anchor and series") {
    // isd 125 m, n=6, v=30 km/h, tau=20 ms
    NetworkConfig cfg = fr2_config(125.0, 30.0);
    const double p = misalignment_probability(cfg, beam_setting(6));
    CHECK(p == doctest::Approx(0.03018460061602106).epsilon(1e-12));

    // independent route: truncated series of 1-exp(-x)
    const double x = cfg.speed * cfg.ssb_period *
                     beam_reselection_intensity(cfg, beam_setting(6)).per_m;
    const double series =
        x - x * x / 2.0 + x * x * x / 6.0 - x * x * x * x / 24.0 + std::pow(x, 5) / 120.0;
    CHECK(p == doctest::Approx(series).epsilon(1e-9));
}

TEST_CASE("misalignment is monotone in n and speed, and bounded") {
    NetworkConfig cfg = fr2_config(125.0, 30.0);
    double prev = 0.0;
    for (int n = 1; n <= 12; ++n) {
        const double p = misalignment_probability(cfg, beam_setting(n));
        CHECK(p > prev);
        CHECK(p < 1.0);
        prev = p;
    }
    double prev_v = 0.0;
    for (double v : {3.0, 30.0, 120.0, 500.0}) {
        const double p = misalignment_probability(fr2_config(125.0, v), beam_setting(6));
        CHECK(p > prev_v);
        CHECK(p < 1.0);
        prev_v = p;
    }
}

TEST_CASE("reselection rate saturates at the SSB period") {
    NetworkConfig cfg = fr2_config(75.0, 120.0);
    // push n until 1/mu_t,b < tau; the effective rate must cap at 1/tau
    bool capped = false;
    for (int n = 1; n <= 20; ++n) {
        const double mu_t = beam_reselection_intensity(cfg, beam_setting(n)).per_s;
        const double eff = effective_reselection_rate(cfg, beam_setting(n));
        if (1.0 / mu_t < cfg.ssb_period) {
            CHECK(eff == doctest::Approx(1.0 / cfg.ssb_period).epsilon(1e-12));
            capped = true;
        } else {
            CHECK(eff == doctest::Approx(mu_t).epsilon(1e-12));
        }
    }
    CHECK(capped);  // the sweep actually reached the knee
}

TEST_CASE("stationary MT has no mobility overhead") {
    NetworkConfig cfg = fr1_config(500.0, 0.0);
    const MobilityProfile m = mobility_profile(cfg, beam_setting(5));
    CHECK(m.p_bm == 0.0);
    CHECK(m.mu_t_beam == 0.0);
    CHECK(m.mu_b_eff == 0.0);
    CHECK(m.overhead == 0.0);
    CHECK(m.mu_s_cell > 0.0);  // linear intensities are speed-free
}

TEST_CASE("overhead assembles from its parts") {
    NetworkConfig cfg = fr1_config(250.0, 120.0);
    const BeamSetting b = beam_setting(7);
    const MobilityProfile m = mobility_profile(cfg, b);
    CHECK(m.overhead ==
          doctest::Approx(m.mu_b_eff * cfg.overhead_beam +
                          handover_intensity(cfg).per_s * cfg.overhead_cell)
              .epsilon(1e-15));
    CHECK(overhead_fraction(cfg, b) == doctest::Approx(m.overhead).epsilon(1e-15));
}

TEST_CASE("saturation detector") {
    CHECK_FALSE(misalignment_saturated(mobility_profile(fr1_config(500.0, 30.0), beam_setting(4))));
    // 250 km/h, 75 m cells, 1024 beams: several beam crossings per SSB period
    NetworkConfig fast = fr2_config(75.0, 250.0);
    CHECK(misalignment_saturated(mobility_profile(fast, beam_setting(10))));
}
