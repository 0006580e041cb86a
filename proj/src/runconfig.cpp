#include "beamopt/runconfig.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <vector>

#include "beamopt/errors.hpp"

namespace beamopt {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) items.push_back(cur);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw validation_error("cannot parse number for " + key + ": '" + value + "'");
    }
    return v;
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0.0 || v != std::floor(v)) {
        throw validation_error(key + " must be a nonnegative integer");
    }
    return static_cast<uint64_t>(v);
}

int parse_int(const std::string& key, const std::string& value) {
    return static_cast<int>(parse_u64(key, value));
}

// Shortest decimal that round-trips to the same double.
std::string num_to_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Entry {
    std::string section, key, value;
};

std::vector<Entry> read_entries(std::istream& in) {
    std::vector<Entry> entries;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw validation_error("unterminated section header at line " +
                                       std::to_string(lineno));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw validation_error("expected key = value at line " + std::to_string(lineno));
        }
        entries.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return entries;
}

NoiseConvention parse_noise(const std::string& value) {
    if (value == "sigma2") return NoiseConvention::sigma2;
    if (value == "n0") return NoiseConvention::n0;
    throw validation_error("noise_convention must be sigma2 or n0, got '" + value + "'");
}

void apply_entry(RunConfig& cfg, const Entry& e) {
    const std::string id = e.section + "." + e.key;
    if (id == "deployment.band") {
        cfg.band = e.value;
    } else if (id == "deployment.isd_m") {
        cfg.isd_m = parse_double(id, e.value);
    } else if (id == "deployment.speed_kmh") {
        cfg.speed_kmh = parse_double(id, e.value);
    } else if (id == "deployment.freq_ghz") {
        cfg.freq_ghz = parse_double(id, e.value);
    } else if (id == "deployment.bw_mhz") {
        cfg.bw_mhz = parse_double(id, e.value);
    } else if (id == "deployment.tx_dbm") {
        cfg.tx_dbm = parse_double(id, e.value);
    } else if (id == "deployment.noise_dbm_hz") {
        cfg.noise_dbm_hz = parse_double(id, e.value);
    } else if (id == "deployment.ssb_ms") {
        cfg.ssb_ms = parse_double(id, e.value);
    } else if (id == "deployment.t_beam_ms") {
        cfg.t_beam_ms = parse_double(id, e.value);
    } else if (id == "deployment.t_cell_ms") {
        cfg.t_cell_ms = parse_double(id, e.value);
    } else if (id == "deployment.alpha_los") {
        cfg.alpha_los = parse_double(id, e.value);
    } else if (id == "deployment.alpha_nlos") {
        cfg.alpha_nlos = parse_double(id, e.value);
    } else if (id == "deployment.los_radius_m") {
        cfg.los_radius_m = parse_double(id, e.value);
    } else if (id == "deployment.sinr_cap_db") {
        cfg.sinr_cap_db = parse_double(id, e.value);
    } else if (id == "quadrature.inner_rel_tol") {
        cfg.quad.inner_rel_tol = parse_double(id, e.value);
    } else if (id == "quadrature.outer_rel_tol") {
        cfg.quad.outer_rel_tol = parse_double(id, e.value);
    } else if (id == "quadrature.rate_rel_tol") {
        cfg.quad.rate_rel_tol = parse_double(id, e.value);
    } else if (id == "quadrature.r_max_m") {
        cfg.quad.r_max = parse_double(id, e.value);
    } else if (id == "quadrature.max_intervals") {
        cfg.quad.max_intervals = parse_int(id, e.value);
    } else if (id == "quadrature.rate_seed_decades") {
        cfg.quad.rate_seed_decades = parse_int(id, e.value);
    } else if (id == "quadrature.noise_convention") {
        cfg.quad.noise = parse_noise(e.value);
    } else if (id == "mc.samples") {
        cfg.samples = parse_u64(id, e.value);
    } else if (id == "mc.seed") {
        cfg.seed = parse_u64(id, e.value);
    } else if (id == "mc.threads") {
        cfg.threads = parse_int(id, e.value);
    } else if (id == "mc.trajectory_m") {
        cfg.trajectory_m = parse_double(id, e.value);
    } else if (id == "mc.window_m") {
        cfg.window_m = parse_double(id, e.value);
    } else if (id == "output.path") {
        cfg.out_path = e.value;
    } else if (id == "output.log_base") {
        if (e.value != "nats" && e.value != "bits") {
            throw validation_error("log_base must be nats or bits, got '" + e.value + "'");
        }
        cfg.log_base = e.value;
    } else {
        throw validation_error("unknown config key: " + id);
    }
}

}  // namespace

void apply_band_preset(RunConfig& cfg) {
    if (cfg.band == "custom") return;
    if (cfg.band == "fr1") {
        cfg.freq_ghz = 3.5;
        cfg.bw_mhz = 100.0;
        cfg.tx_dbm = 43.0;
        cfg.alpha_los = 3.5;
        cfg.alpha_nlos = 3.5;
        cfg.los_radius_m = 0.0;
    } else if (cfg.band == "fr2") {
        cfg.freq_ghz = 28.0;
        cfg.bw_mhz = 400.0;
        cfg.tx_dbm = 36.0;
        cfg.alpha_los = 1.9;
        cfg.alpha_nlos = 3.5;
        cfg.los_radius_m = 75.0;
    } else {
        throw validation_error("band must be fr1, fr2, or custom, got '" + cfg.band + "'");
    }
    cfg.noise_dbm_hz = -174.0;
    cfg.ssb_ms = 20.0;
    cfg.t_beam_ms = 23.0;
    cfg.t_cell_ms = 43.0;
    cfg.sinr_cap_db = 30.0;
}

NetworkConfig to_network(const RunConfig& cfg) {
    return config_from_deployment(cfg.isd_m, cfg.speed_kmh, cfg.freq_ghz, cfg.bw_mhz,
                                  cfg.tx_dbm, cfg.noise_dbm_hz, cfg.ssb_ms, cfg.t_beam_ms,
                                  cfg.t_cell_ms, cfg.alpha_los, cfg.alpha_nlos,
                                  cfg.los_radius_m, cfg.sinr_cap_db);
}

McSettings to_mc_settings(const RunConfig& cfg) {
    McSettings mc;
    mc.samples = cfg.samples;
    mc.seed = cfg.seed;
    mc.threads = cfg.threads;
    mc.window_radius = cfg.window_m;
    mc.noise = cfg.quad.noise;
    return mc;
}

double rate_scale(const RunConfig& cfg) {
    return cfg.log_base == "bits" ? 1.0 / std::numbers::ln2 : 1.0;
}

RunConfig parse_run_config(std::istream& in) {
    const std::vector<Entry> entries = read_entries(in);
    RunConfig cfg;
    for (const Entry& e : entries) {
        if (e.section == "deployment" && e.key == "band") cfg.band = e.value;
    }
    apply_band_preset(cfg);
    for (const Entry& e : entries) apply_entry(cfg, e);
    return cfg;
}

RunConfig parse_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    return parse_run_config(in);
}

std::string serialize_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[deployment]\n";
    out << "band = " << cfg.band << "\n";
    out << "isd_m = " << num_to_str(cfg.isd_m) << "\n";
    out << "speed_kmh = " << num_to_str(cfg.speed_kmh) << "\n";
    out << "freq_ghz = " << num_to_str(cfg.freq_ghz) << "\n";
    out << "bw_mhz = " << num_to_str(cfg.bw_mhz) << "\n";
    out << "tx_dbm = " << num_to_str(cfg.tx_dbm) << "\n";
    out << "noise_dbm_hz = " << num_to_str(cfg.noise_dbm_hz) << "\n";
    out << "ssb_ms = " << num_to_str(cfg.ssb_ms) << "\n";
    out << "t_beam_ms = " << num_to_str(cfg.t_beam_ms) << "\n";
    out << "t_cell_ms = " << num_to_str(cfg.t_cell_ms) << "\n";
    out << "alpha_los = " << num_to_str(cfg.alpha_los) << "\n";
    out << "alpha_nlos = " << num_to_str(cfg.alpha_nlos) << "\n";
    out << "los_radius_m = " << num_to_str(cfg.los_radius_m) << "\n";
    out << "sinr_cap_db = " << num_to_str(cfg.sinr_cap_db) << "\n";
    out << "\n[quadrature]\n";
    out << "inner_rel_tol = " << num_to_str(cfg.quad.inner_rel_tol) << "\n";
    out << "outer_rel_tol = " << num_to_str(cfg.quad.outer_rel_tol) << "\n";
    out << "rate_rel_tol = " << num_to_str(cfg.quad.rate_rel_tol) << "\n";
    out << "r_max_m = " << num_to_str(cfg.quad.r_max) << "\n";
    out << "max_intervals = " << cfg.quad.max_intervals << "\n";
    out << "rate_seed_decades = " << cfg.quad.rate_seed_decades << "\n";
    out << "noise_convention = "
        << (cfg.quad.noise == NoiseConvention::sigma2 ? "sigma2" : "n0") << "\n";
    out << "\n[mc]\n";
    out << "samples = " << cfg.samples << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "trajectory_m = " << num_to_str(cfg.trajectory_m) << "\n";
    out << "window_m = " << num_to_str(cfg.window_m) << "\n";
    out << "\n[output]\n";
    out << "path = " << cfg.out_path << "\n";
    out << "log_base = " << cfg.log_base << "\n";
    return out.str();
}

SweepGrid parse_sweep_grid(std::istream& in) {
    SweepGrid grid;
    grid.bands.clear();
    grid.isd_m.clear();
    grid.speed_kmh.clear();
    for (const Entry& e : read_entries(in)) {
        const std::string id = e.section + "." + e.key;
        if (id == "grid.bands") {
            grid.bands = split_list(e.value);
        } else if (id == "grid.isd_m") {
            for (const std::string& s : split_list(e.value)) {
                grid.isd_m.push_back(parse_double(id, s));
            }
        } else if (id == "grid.speed_kmh") {
            for (const std::string& s : split_list(e.value)) {
                grid.speed_kmh.push_back(parse_double(id, s));
            }
        } else if (id == "grid.n_min") {
            grid.n_min = parse_int(id, e.value);
        } else if (id == "grid.n_max") {
            grid.n_max = parse_int(id, e.value);
        } else {
            throw validation_error("unknown grid key: " + id);
        }
    }
    return grid;
}

SweepGrid parse_sweep_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open grid file: " + path);
    return parse_sweep_grid(in);
}

}  // namespace beamopt
