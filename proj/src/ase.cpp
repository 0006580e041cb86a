#include "beamopt/ase.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "beamopt/errors.hpp"

namespace beamopt {

namespace {

NetworkConfig band_config(const std::string& band, double isd_m, double speed_kmh) {
    if (band == "fr1") return fr1_config(isd_m, speed_kmh);
    if (band == "fr2") return fr2_config(isd_m, speed_kmh);
    throw validation_error("unknown band preset: " + band);
}

}  // namespace

AseResult effective_ase(const NetworkConfig& cfg, const BeamSetting& beams,
                        const QuadratureSpec& spec) {
    AseResult out;
    out.n = beams.n;
    out.mobility = mobility_profile(cfg, beams);
    out.overhead = out.mobility.overhead;
    out.rate = ergodic_rate(cfg, beams, spec);
    out.effective_ase = cfg.bs_intensity * out.rate * std::max(0.0, 1.0 - out.overhead);
    return out;
}

OptimizeResult optimal_n(const NetworkConfig& cfg, const QuadratureSpec& spec,
                         int n_min, int n_max) {
    if (n_min < 1 || n_max > 20 || n_min > n_max) {
        throw validation_error("n range must satisfy 1 <= n_min <= n_max <= 20");
    }
    OptimizeResult out;
    out.curve.reserve(static_cast<size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        out.curve.push_back(effective_ase(cfg, beam_setting(n), spec));
    }
    out.best_n = n_min;
    double best = out.curve.front().effective_ase;
    for (const AseResult& r : out.curve) {
        if (r.effective_ase > best) {
            best = r.effective_ase;
            out.best_n = r.n;
        }
    }
    out.degenerate = (best == 0.0);
    return out;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, const QuadratureSpec& spec,
                            int threads) {
    if (grid.bands.empty() || grid.isd_m.empty() || grid.speed_kmh.empty()) {
        throw validation_error("sweep grid has an empty axis");
    }
    if (grid.n_min < 1 || grid.n_max > 20 || grid.n_min > grid.n_max) {
        throw validation_error("n range must satisfy 1 <= n_min <= n_max <= 20");
    }

    // bands keep their listed order; numeric axes are emitted ascending
    std::vector<double> isds = grid.isd_m;
    std::vector<double> speeds = grid.speed_kmh;
    std::sort(isds.begin(), isds.end());
    std::sort(speeds.begin(), speeds.end());

    std::vector<SweepRow> rows;
    for (const std::string& band : grid.bands) {
        for (double isd : isds) {
            for (double v : speeds) {
                band_config(band, isd, v);  // fail fast on bad axes
                for (int n = grid.n_min; n <= grid.n_max; ++n) {
                    SweepRow row;
                    row.band = band;
                    row.isd_m = isd;
                    row.speed_kmh = v;
                    row.n = n;
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, static_cast<int>(rows.size()));

    std::atomic<size_t> cursor{0};
    std::vector<std::exception_ptr> failures(rows.size());
    auto run = [&] {
        for (size_t i = cursor.fetch_add(1); i < rows.size(); i = cursor.fetch_add(1)) {
            SweepRow& row = rows[i];
            try {
                NetworkConfig cfg = band_config(row.band, row.isd_m, row.speed_kmh);
                row.result = effective_ase(cfg, beam_setting(row.n), spec);
            } catch (const numerical_error& e) {
                row.error = e.what();
                row.result = AseResult{};
                row.result.n = row.n;
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& p : failures) {
        if (p) std::rethrow_exception(p);
    }
    return rows;
}

}  // namespace beamopt
