#include "beamopt/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <thread>
#include <unordered_map>
#include <utility>

#include "beamopt/errors.hpp"
#include "beamopt/mobility.hpp"
#include "beamopt/rng.hpp"

namespace beamopt {

namespace {

constexpr double kPi = std::numbers::pi;

// Fixed chunk size: partial sums are reduced in chunk order, so results are
// bit-identical for any thread count.
constexpr uint64_t kChunk = 4096;

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

struct SinrContext {
    double lam_pi = 0.0;
    double alpha_los = 0.0;
    double alpha_nlos = 0.0;
    double los_radius = 0.0;
    double window_sq = 0.0;
    double noise_reduced = 0.0;  // noise power / (P K); 0 in the no-noise mode
    double p_bm = 0.0;
    double p_main = 0.0;
    double gain_main = 0.0;
    double gain_side = 0.0;
    bool no_interference = false;
    double fixed_r0 = 0.0;
};

double reduced_path(const SinrContext& c, double d) {
    return std::pow(d, -(d < c.los_radius ? c.alpha_los : c.alpha_nlos));
}

SinrContext make_context(const NetworkConfig& cfg, const BeamSetting& beams,
                         const McSettings& mc) {
    validate(cfg);
    const double window =
        mc.window_radius > 0.0 ? mc.window_radius : interference_window_radius(cfg);
    const double floor_radius =
        std::max(5.0 * outer_radius(QuadratureSpec{}, cfg), 10.0 * cfg.los_radius);
    if (window < floor_radius) {
        throw validation_error("window_radius below the interference truncation floor");
    }

    const DerivedConstants dc = derive(cfg);
    SinrContext c;
    c.lam_pi = cfg.bs_intensity * kPi;
    c.alpha_los = cfg.alpha_los;
    c.alpha_nlos = cfg.alpha_nlos;
    c.los_radius = cfg.los_radius;
    c.window_sq = window * window;
    const double noise = mc.noise == NoiseConvention::sigma2
                             ? cfg.bandwidth * cfg.noise_density
                             : cfg.noise_density;
    c.noise_reduced = mc.no_noise ? 0.0 : noise / (cfg.tx_power * dc.path_const);
    c.p_bm = misalignment_probability(cfg, beams);
    c.p_main = main_lobe_hit_probability(beams);
    c.gain_main = beams.gain_main;
    c.gain_side = beams.gain_side;
    c.no_interference = mc.no_interference;
    c.fixed_r0 = mc.fixed_serving_distance;
    return c;
}

// One network snapshot. Successive squared distances of PPP points from the
// origin grow by Exp(1)/(lambda pi) increments, so the serving link and every
// interferer are drawn in increasing-distance order without materializing
// coordinates (angles never enter the SINR).
double sinr_sample(const SinrContext& c, rng::Xoshiro256pp& g, uint64_t& resamples) {
    double r2;
    if (c.fixed_r0 > 0.0) {
        r2 = c.fixed_r0 * c.fixed_r0;
    } else {
        for (;;) {
            r2 = g.exponential() / c.lam_pi;
            if (r2 <= c.window_sq) break;
            ++resamples;  // empty window: redraw the realization
        }
    }
    const double serving_gain = g.uniform() < c.p_bm ? c.gain_side : c.gain_main;
    const double signal = serving_gain * g.exponential() * reduced_path(c, std::sqrt(r2));

    double interference = 0.0;
    if (!c.no_interference) {
        for (double w2 = r2;;) {
            w2 += g.exponential() / c.lam_pi;
            if (w2 > c.window_sq) break;
            const double gain = g.uniform() < c.p_main ? c.gain_main : c.gain_side;
            interference += gain * g.exponential() * reduced_path(c, std::sqrt(w2));
        }
    }
    return signal / (c.noise_reduced + interference);
}

struct ChunkPartial {
    std::vector<uint64_t> success;
    double sum = 0.0;
    double sumsq = 0.0;
    uint64_t resamples = 0;
};

struct McAccum {
    std::vector<uint64_t> success;
    double sum = 0.0;
    double sumsq = 0.0;
    uint64_t resamples = 0;
};

McAccum run_mc(const SinrContext& ctx, const McSettings& mc,
               const std::vector<double>& thresholds, double rate_cap) {
    if (mc.samples < 1000) throw validation_error("samples must be at least 1000");

    const uint64_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<ChunkPartial> parts(n_chunks);
    std::atomic<uint64_t> cursor{0};

    auto worker = [&] {
        for (uint64_t ci = cursor.fetch_add(1); ci < n_chunks; ci = cursor.fetch_add(1)) {
            ChunkPartial part;
            part.success.assign(thresholds.size(), 0);
            const uint64_t lo = ci * kChunk;
            const uint64_t hi = std::min(mc.samples, lo + kChunk);
            for (uint64_t i = lo; i < hi; ++i) {
                rng::Xoshiro256pp g = rng::stream(mc.seed, i);
                const double sinr = sinr_sample(ctx, g, part.resamples);
                for (size_t j = 0; j < thresholds.size(); ++j) {
                    part.success[j] += sinr > thresholds[j] ? 1 : 0;
                }
                if (rate_cap > 0.0) {
                    const double x = std::log1p(std::min(sinr, rate_cap));
                    part.sum += x;
                    part.sumsq += x * x;
                }
            }
            parts[ci] = std::move(part);
        }
    };

    const int workers =
        std::clamp(resolve_threads(mc.threads), 1, static_cast<int>(n_chunks));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    McAccum total;
    total.success.assign(thresholds.size(), 0);
    for (const ChunkPartial& part : parts) {
        for (size_t j = 0; j < thresholds.size(); ++j) total.success[j] += part.success[j];
        total.sum += part.sum;
        total.sumsq += part.sumsq;
        total.resamples += part.resamples;
    }
    return total;
}

McEstimate proportion_estimate(uint64_t count, const McSettings& mc, uint64_t resamples) {
    const double n = static_cast<double>(mc.samples);
    const double p = static_cast<double>(count) / n;
    McEstimate e;
    e.estimate = p;
    e.standard_error = std::sqrt(std::max(0.0, p * (1.0 - p) / (n - 1.0)));
    e.sample_count = mc.samples;
    e.seed = mc.seed;
    e.resamples = resamples;
    return e;
}

}  // namespace

double interference_window_radius(const NetworkConfig& cfg, const QuadratureSpec& spec) {
    validate(cfg);
    const double rc = cfg.los_radius;
    const double a_l = cfg.alpha_los;
    const double a_n = cfg.alpha_nlos;
    // mean unit-power interference from a reference distance inward of the
    // nearest interferer; constants common to tail and total cancel
    const double r_ref = 1.0 / (2.0 * std::sqrt(cfg.bs_intensity));
    double mean = 0.0;
    if (rc > r_ref) {
        mean += a_l == 2.0 ? std::log(rc / r_ref)
                           : (std::pow(rc, 2.0 - a_l) - std::pow(r_ref, 2.0 - a_l)) / (2.0 - a_l);
    }
    const double nlos_from = std::max(r_ref, rc);
    mean += std::pow(nlos_from, 2.0 - a_n) / (a_n - 2.0);
    // tail beyond R is R^(2-a_n)/(a_n-2); cap it at 0.1% of the mean
    const double r_tail = std::pow(1e-3 * mean * (a_n - 2.0), 1.0 / (2.0 - a_n));
    return std::max({5.0 * outer_radius(spec, cfg), 10.0 * rc, r_tail});
}

PppRealization sample_ppp_disk(const NetworkConfig& cfg, const BeamSetting& beams,
                               double radius, uint64_t seed) {
    validate(cfg);
    if (!(radius > 0.0)) throw validation_error("window radius must be positive");
    rng::Xoshiro256pp g = rng::stream(seed, 0);
    PppRealization out;
    out.window_radius = radius;
    out.seed = seed;
    const uint64_t count = rng::poisson(g, cfg.bs_intensity * kPi * radius * radius);
    out.points.reserve(count);
    out.rotations.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        const double r = radius * std::sqrt(g.uniform());
        const double theta = 2.0 * kPi * g.uniform();
        out.points.push_back({r * std::cos(theta), r * std::sin(theta)});
        out.rotations.push_back(g.uniform() * beams.beamwidth);
    }
    return out;
}

McEstimate simulate_success_prob(const NetworkConfig& cfg, const BeamSetting& beams,
                                 double beta, const McSettings& mc) {
    if (!(beta >= 0.0)) throw validation_error("beta must be nonnegative");
    const SinrContext ctx = make_context(cfg, beams, mc);
    const McAccum acc = run_mc(ctx, mc, {beta}, 0.0);
    return proportion_estimate(acc.success[0], mc, acc.resamples);
}

CurveEstimate simulate_success_curve(const NetworkConfig& cfg, const BeamSetting& beams,
                                     const std::vector<double>& thresholds,
                                     const McSettings& mc) {
    if (thresholds.empty()) throw validation_error("threshold grid is empty");
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw validation_error("threshold grid must be ascending");
    }
    const SinrContext ctx = make_context(cfg, beams, mc);
    const McAccum acc = run_mc(ctx, mc, thresholds, 0.0);
    CurveEstimate out;
    out.thresholds = thresholds;
    out.resamples = acc.resamples;
    out.per_beta.reserve(thresholds.size());
    for (uint64_t count : acc.success) {
        out.per_beta.push_back(proportion_estimate(count, mc, acc.resamples));
    }
    return out;
}

McEstimate simulate_rate(const NetworkConfig& cfg, const BeamSetting& beams,
                         const McSettings& mc) {
    const SinrContext ctx = make_context(cfg, beams, mc);
    const McAccum acc = run_mc(ctx, mc, {}, cfg.sinr_cap);
    const double n = static_cast<double>(mc.samples);
    const double mean = acc.sum / n;
    const double var = std::max(0.0, (acc.sumsq - n * mean * mean) / (n - 1.0));
    McEstimate e;
    e.estimate = cfg.bandwidth * mean;
    e.standard_error = cfg.bandwidth * std::sqrt(var / n);
    e.sample_count = mc.samples;
    e.seed = mc.seed;
    e.resamples = acc.resamples;
    return e;
}

namespace {

// Infinite marked PPP generated lazily per grid cell; a cell's contents are a
// pure function of (seed, cell index), so any trajectory through the same
// seed sees the same field.
class PointField {
public:
    // The intensity is folded into the stream namespace so fields at
    // different lambda are independent rather than rescaled copies; fields at
    // the same lambda stay identical across n (the beam partition refines but
    // the geometry does not move).
    PointField(double intensity, double beamwidth, uint64_t seed)
        : pitch_(1.0 / std::sqrt(intensity)), mean_(1.0), beamwidth_(beamwidth) {
        uint64_t bits = 0;
        std::memcpy(&bits, &intensity, sizeof bits);
        seed_ = seed ^ (bits * 0x9e3779b97f4a7c15ULL);
    }

    struct Point {
        double x, y, rot;
    };

    const std::vector<Point>& cell(int64_t ix, int64_t iy) const {
        const uint64_t key = pack(ix, iy);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        if (cache_.size() > 8192) cache_.clear();  // regenerated on demand
        rng::Xoshiro256pp g = rng::stream(seed_, key);
        std::vector<Point> pts;
        const uint64_t count = rng::poisson(g, mean_);
        pts.reserve(count);
        for (uint64_t i = 0; i < count; ++i) {
            const double x = (static_cast<double>(ix) + g.uniform()) * pitch_;
            const double y = (static_cast<double>(iy) + g.uniform()) * pitch_;
            pts.push_back({x, y, g.uniform() * beamwidth_});
        }
        return cache_.emplace(key, std::move(pts)).first->second;
    }

    Point nearest(double px, double py) const {
        const int64_t cx = static_cast<int64_t>(std::floor(px / pitch_));
        const int64_t cy = static_cast<int64_t>(std::floor(py / pitch_));
        Point best{0.0, 0.0, 0.0};
        double best_d2 = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int64_t k = 0;; ++k) {
            if (found) {
                const double lb = static_cast<double>(k - 1) * pitch_;
                if (lb > 0.0 && lb * lb > best_d2) break;
            }
            if (k > 64) {
                throw numerical_error("nearest-BS ring search exhausted", 0.0, 0.0);
            }
            scan_ring(cx, cy, k, px, py, best, best_d2, found);
        }
        return best;
    }

private:
    static uint64_t pack(int64_t ix, int64_t iy) {
        const uint64_t ux = static_cast<uint32_t>(ix + 0x40000000LL);
        const uint64_t uy = static_cast<uint32_t>(iy + 0x40000000LL);
        return (ux << 32) | uy;
    }

    void scan_cell(int64_t ix, int64_t iy, double px, double py, Point& best,
                   double& best_d2, bool& found) const {
        for (const Point& p : cell(ix, iy)) {
            const double dx = p.x - px;
            const double dy = p.y - py;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best_d2 = d2;
                best = p;
                found = true;
            }
        }
    }

    void scan_ring(int64_t cx, int64_t cy, int64_t k, double px, double py, Point& best,
                   double& best_d2, bool& found) const {
        if (k == 0) {
            scan_cell(cx, cy, px, py, best, best_d2, found);
            return;
        }
        for (int64_t dx = -k; dx <= k; ++dx) {
            scan_cell(cx + dx, cy - k, px, py, best, best_d2, found);
            scan_cell(cx + dx, cy + k, px, py, best, best_d2, found);
        }
        for (int64_t dy = -k + 1; dy <= k - 1; ++dy) {
            scan_cell(cx - k, cy + dy, px, py, best, best_d2, found);
            scan_cell(cx + k, cy + dy, px, py, best, best_d2, found);
        }
    }

    double pitch_;
    double mean_;
    double beamwidth_;
    uint64_t seed_;
    mutable std::unordered_map<uint64_t, std::vector<Point>> cache_;
};

struct MarchState {
    double bx = 0.0, by = 0.0;  // serving BS coordinates, exact
    int beam = 0;

    bool same_bs(const MarchState& o) const { return bx == o.bx && by == o.by; }
    bool operator==(const MarchState& o) const { return same_bs(o) && beam == o.beam; }
};

class CrossingMarch {
public:
    CrossingMarch(const PointField& field, const BeamSetting& beams, double dir_x,
                  double dir_y)
        : field_(field),
          beams_(beams),
          dir_x_(dir_x),
          dir_y_(dir_y),
          beam_count_(1u << beams.n) {}

    MarchState state(double t) const {
        const double px = t * dir_x_;
        const double py = t * dir_y_;
        const PointField::Point bs = field_.nearest(px, py);
        MarchState s;
        s.bx = bs.x;
        s.by = bs.y;
        const double angle = std::atan2(py - bs.y, px - bs.x);
        double off = std::fmod(angle - bs.rot, 2.0 * kPi);
        if (off < 0.0) off += 2.0 * kPi;
        s.beam = static_cast<int>(static_cast<unsigned>(off / beams_.beamwidth) &
                                  (beam_count_ - 1));
        return s;
    }

    // Recursively splits a step showing a state change until each leaf holds
    // a single boundary crossing. Voronoi cells are convex and the bearing
    // from a fixed BS is monotone along a line, so events never cancel
    // within a step; endpoint comparison is exhaustive.
    void resolve(double t0, const MarchState& s0, double t1, const MarchState& s1,
                 uint64_t& handovers, uint64_t& reselections) const {
        if (t1 - t0 <= kFloor) {
            if (!s0.same_bs(s1)) {
                ++handovers;
                return;
            }
            const int diff =
                (s1.beam - s0.beam + static_cast<int>(beam_count_)) % static_cast<int>(beam_count_);
            const int dist = std::min(diff, static_cast<int>(beam_count_) - diff);
            if (dist == 1) {
                ++reselections;
                return;
            }
            throw numerical_error("compound boundary crossing at refinement floor",
                                  static_cast<double>(handovers + reselections), 0.0);
        }
        const double mid = 0.5 * (t0 + t1);
        const MarchState sm = state(mid);
        if (sm == s0) {
            resolve(mid, sm, t1, s1, handovers, reselections);
        } else if (sm == s1) {
            resolve(t0, s0, mid, sm, handovers, reselections);
        } else {
            resolve(t0, s0, mid, sm, handovers, reselections);
            resolve(mid, sm, t1, s1, handovers, reselections);
        }
    }

private:
    static constexpr double kFloor = 1e-7;  // m

    const PointField& field_;
    const BeamSetting& beams_;
    double dir_x_, dir_y_;
    unsigned beam_count_;
};

}  // namespace

CrossingCounts count_crossings(const NetworkConfig& cfg, const BeamSetting& beams,
                               double length, uint64_t seed, double frame_rotation) {
    validate(cfg);
    if (!(length > 0.0)) throw validation_error("trajectory length must be positive");

    const PointField field(cfg.bs_intensity, beams.beamwidth, seed);
    CrossingMarch march(field, beams, std::cos(frame_rotation), std::sin(frame_rotation));

    const double mu_cell = handover_intensity(cfg).per_m;
    const double mu_beam = beam_reselection_intensity(cfg, beams).per_m;
    const double step = 0.05 / std::max(mu_cell, mu_beam);

    CrossingCounts out;
    out.length = length;
    double t = 0.0;
    MarchState prev = march.state(0.0);
    while (t < length) {
        const double t_next = std::min(t + step, length);
        const MarchState next = march.state(t_next);
        if (!(next == prev)) {
            march.resolve(t, prev, t_next, next, out.handovers, out.reselections);
        }
        t = t_next;
        prev = next;
    }
    out.handover_per_m = static_cast<double>(out.handovers) / length;
    out.reselection_per_m = static_cast<double>(out.reselections) / length;
    return out;
}

}  // namespace beamopt
