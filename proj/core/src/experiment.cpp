// Copyright 2026 The qcnnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qcnn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "qcnn/circuits.hpp"
#include "qcnn/heisenberg.hpp"
#include "qcnn/threshold.hpp"

#ifndef QCNN_VERSION_STRING
#define QCNN_VERSION_STRING "0.0.0"
#endif
#ifndef QCNN_PRESET_DIR
#define QCNN_PRESET_DIR "presets"
#endif

namespace qcnn {

using json = nlohmann::ordered_json;

std::string_view library_version() {
    return QCNN_VERSION_STRING;
}

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKinds[] = {
    {ExperimentKind::ClusterNoise, "cluster-noise"}, {ExperimentKind::Sweep, "sweep"},
    {ExperimentKind::Threshold, "threshold"},        {ExperimentKind::Backprop, "backprop"},
    {ExperimentKind::Truthtable, "truthtable"},      {ExperimentKind::Gs, "gs"},
};

bool is_channel_axis(std::string_view axis) {
    return axis == "pz" || axis == "px" || axis == "py" || axis == "depol";
}

bool is_coupling_axis(std::string_view axis) {
    return axis == "J1" || axis == "J2" || axis == "h1" || axis == "h2";
}

bool uses_statevector(ExperimentKind kind) {
    return kind == ExperimentKind::Sweep || kind == ExperimentKind::Gs || kind == ExperimentKind::Backprop;
}

}  // namespace

std::string_view experiment_kind_name(ExperimentKind kind) {
    for (const auto &[k, name] : kKinds) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    for (const auto &[k, name] : kKinds) {
        if (name == text) {
            return k;
        }
    }
    throw ConfigError("unknown experiment '" + std::string(text) +
                      "' (expected cluster-noise, sweep, threshold, backprop, truthtable or gs)");
}

HamiltonianParams ExperimentConfig::params_at(double value) const {
    HamiltonianParams p = hamiltonian;
    p.n = n;
    if (is_coupling_axis(sweep_axis)) {
        p = with_coupling(p, parse_coupling_axis(sweep_axis), value);
    }
    return p;
}

ChannelSpec ExperimentConfig::channel_at(double value) const {
    ChannelSpec ch = channel;
    if (sweep_axis == "pz") {
        ch.pz = value;
    } else if (sweep_axis == "px") {
        ch.px = value;
    } else if (sweep_axis == "py") {
        ch.py = value;
    } else if (sweep_axis == "depol") {
        ch.px = ch.py = ch.pz = value;
    }
    return ch;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    if (n < 5 || n % 2 == 0) {
        fail("n must be odd and >= 5, got " + std::to_string(n));
    }
    if (uses_statevector(experiment) && n > kMaxStateQubits) {
        fail(std::string(experiment_kind_name(experiment)) + " needs n <= " + std::to_string(kMaxStateQubits));
    }
    if (shots < 1) {
        fail("shots must be >= 1");
    }
    if (depths.empty()) {
        fail("depth list is empty");
    }
    if (arch == ArchStyle::AltCZ && phase != ClusterKind::ZXXXZ) {
        fail("alt-cz requires phase zxxxz");
    }
    // gs reports ground-state data only and never runs the decoder.
    for (int d : experiment == ExperimentKind::Gs ? std::vector<int>{} : depths) {
        if (d < 0 || d > max_depth(n)) {
            fail("depth " + std::to_string(d) + " outside [0, floor(log3 N)] = [0, " + std::to_string(max_depth(n)) +
                 "]");
        }
        if (output_count(n, d) % 2 == 0) {
            fail("depth " + std::to_string(d) + " leaves an even number of outputs for n = " + std::to_string(n));
        }
        if (experiment == ExperimentKind::Backprop && d > 2) {
            fail("exact backprop is limited to depth <= 2");
        }
    }
    if (!sweep_axis.empty()) {
        bool ok = experiment == ExperimentKind::ClusterNoise || experiment == ExperimentKind::Threshold
                      ? is_channel_axis(sweep_axis)
                      : is_coupling_axis(sweep_axis);
        if (!ok) {
            fail("sweep axis '" + sweep_axis + "' does not apply to " +
                 std::string(experiment_kind_name(experiment)));
        }
        if (grid.empty()) {
            fail("sweep axis given without a grid");
        }
    } else if (!grid.empty()) {
        fail("grid given without a sweep axis");
    }
    if (grid.size() > 1) {
        bool up = grid[1] > grid[0];
        for (size_t k = 1; k < grid.size(); k++) {
            if (!(up ? grid[k] > grid[k - 1] : grid[k] < grid[k - 1])) {
                fail("sweep grid must be strictly monotone");
            }
        }
    }
    for (double v : grid) {
        if (!std::isfinite(v)) {
            fail("sweep grid values must be finite");
        }
    }
    try {
        channel.validate();
        for (double v : grid) {
            channel_at(v).validate();
        }
        if (uses_statevector(experiment)) {
            for (double v : grid.empty() ? std::vector<double>{0.0} : grid) {
                params_at(v).validate();
            }
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        fail(e.what());
    }
    if (experiment == ExperimentKind::Gs && grid.empty()) {
        fail("gs needs a coupling sweep");
    }
    if (!(threshold_tol > 0)) {
        fail("threshold tol must be positive");
    }
    if (format != "csv" && format != "json") {
        fail("format must be csv or json");
    }
}

std::vector<int> parse_depth_range(std::string_view text) {
    auto to_int = [&](std::string_view s) {
        std::string tmp(s);
        char *end = nullptr;
        long v = std::strtol(tmp.c_str(), &end, 10);
        if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
            throw ConfigError("bad depth range '" + std::string(text) + "' (expected A..B)");
        }
        return static_cast<int>(v);
    };
    auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        return {to_int(text)};
    }
    int a = to_int(text.substr(0, dots));
    int b = to_int(text.substr(dots + 2));
    if (a > b) {
        throw ConfigError("depth range '" + std::string(text) + "' is empty");
    }
    std::vector<int> out;
    for (int d = a; d <= b; d++) {
        out.push_back(d);
    }
    return out;
}

namespace {

void check_keys(const json &j, std::initializer_list<std::string_view> allowed, const std::string &where) {
    for (const auto &item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

std::vector<double> linspace(double start, double stop, int points) {
    if (points < 1) {
        throw ConfigError("grid needs at least one point");
    }
    std::vector<double> out;
    for (int k = 0; k < points; k++) {
        out.push_back(points == 1 ? start : start + (stop - start) * k / (points - 1));
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    check_keys(j,
               {"experiment", "phase", "arch", "n", "depths", "channel", "sweep", "hamiltonian", "shots", "seed",
                "exact", "threshold", "out", "format", "description"},
               "config");
    ExperimentConfig cfg;
    try {
        if (!j.contains("experiment")) {
            throw ConfigError("config needs an 'experiment' key");
        }
        cfg.experiment = parse_experiment_kind(j.at("experiment").get<std::string>());
        if (j.contains("phase")) {
            cfg.phase = parse_cluster_kind(j.at("phase").get<std::string>());
        }
        if (j.contains("arch")) {
            cfg.arch = parse_arch_style(j.at("arch").get<std::string>());
        }
        if (j.contains("n")) {
            cfg.n = j.at("n").get<int>();
        }
        if (j.contains("depths")) {
            const auto &d = j.at("depths");
            cfg.depths = d.is_string() ? parse_depth_range(d.get<std::string>()) : d.get<std::vector<int>>();
        }
        if (j.contains("channel")) {
            cfg.channel = ChannelSpec::parse(j.at("channel").get<std::string>());
        }
        if (j.contains("sweep")) {
            const auto &s = j.at("sweep");
            check_keys(s, {"axis", "grid"}, "sweep");
            cfg.sweep_axis = s.at("axis").get<std::string>();
            const auto &g = s.at("grid");
            if (g.is_array()) {
                cfg.grid = g.get<std::vector<double>>();
            } else {
                check_keys(g, {"start", "stop", "points"}, "sweep.grid");
                cfg.grid = linspace(g.at("start").get<double>(), g.at("stop").get<double>(), g.at("points").get<int>());
            }
        }
        if (j.contains("hamiltonian")) {
            const auto &h = j.at("hamiltonian");
            check_keys(h, {"J1", "J2", "h1", "h2"}, "hamiltonian");
            cfg.hamiltonian.J1 = h.value("J1", 0.0);
            cfg.hamiltonian.J2 = h.value("J2", 0.0);
            cfg.hamiltonian.h1 = h.value("h1", 0.0);
            cfg.hamiltonian.h2 = h.value("h2", 0.0);
        }
        if (j.contains("shots")) {
            auto shots = j.at("shots").get<int64_t>();
            if (shots < 1) {
                throw ConfigError("shots must be >= 1");
            }
            cfg.shots = static_cast<size_t>(shots);
        }
        if (j.contains("seed")) {
            cfg.seed = j.at("seed").get<uint64_t>();
        }
        if (j.contains("exact")) {
            cfg.exact = j.at("exact").get<bool>();
        }
        if (j.contains("threshold")) {
            const auto &t = j.at("threshold");
            check_keys(t, {"mode", "tol"}, "threshold");
            auto mode = t.value("mode", std::string("analytic"));
            if (mode == "analytic") {
                cfg.threshold_mode = ThresholdMode::Analytic;
            } else if (mode == "mc") {
                cfg.threshold_mode = ThresholdMode::MonteCarlo;
            } else {
                throw ConfigError("threshold mode must be analytic or mc");
            }
            cfg.threshold_tol = t.value("tol", cfg.threshold_tol);
        }
        if (j.contains("out")) {
            cfg.out = j.at("out").get<std::string>();
        }
        if (j.contains("format")) {
            cfg.format = j.at("format").get<std::string>();
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    cfg.validate();
    return cfg;
}

namespace {

json config_json(const ExperimentConfig &cfg) {
    json j;
    j["experiment"] = experiment_kind_name(cfg.experiment);
    j["phase"] = cluster_kind_name(cfg.phase);
    j["arch"] = arch_style_name(cfg.arch);
    j["n"] = cfg.n;
    j["depths"] = cfg.depths;
    j["channel"] = cfg.channel.str();
    if (!cfg.sweep_axis.empty()) {
        j["sweep"] = {{"axis", cfg.sweep_axis}, {"grid", cfg.grid}};
    }
    j["hamiltonian"] = {
        {"J1", cfg.hamiltonian.J1}, {"J2", cfg.hamiltonian.J2}, {"h1", cfg.hamiltonian.h1}, {"h2", cfg.hamiltonian.h2}};
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
    j["exact"] = cfg.exact;
    j["threshold"] = {{"mode", cfg.threshold_mode == ThresholdMode::Analytic ? "analytic" : "mc"},
                      {"tol", cfg.threshold_tol}};
    j["out"] = cfg.out;
    j["format"] = cfg.format;
    return j;
}

}  // namespace

std::string serialize_config(const ExperimentConfig &cfg) {
    return config_json(cfg).dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

uint64_t point_seed(uint64_t seed, size_t index) {
    return splitmix64(seed ^ splitmix64(0x51ed2701ULL + index));
}

/// Per-shot output and density columns for every requested depth, from one decode trace.
class DepthProbe {
   public:
    DepthProbe(const ExperimentConfig &cfg) : depths_(cfg.depths), n_(cfg.n) {
        int dmax = *std::max_element(depths_.begin(), depths_.end());
        arch_ = Architecture::make(cfg.phase, cfg.arch, dmax);
        for (int d : depths_) {
            arch_.prefix(d).validate(n_);
            // Outputs whose light cone reaches a chain end are left out unless no other output exists.
            auto bulk = bulk_survivors(arch_, n_, d);
            bulks_.push_back(bulk.empty() ? output_positions(n_, d) : bulk);
        }
    }

    size_t width() const {
        return depths_.size();
    }

    /// Writes y and density for each depth.
    void evaluate(const BitString &x, double *y, double *density) const {
        BitString cur = x;
        int c = (n_ + 1) / 2;
        int f = 0;
        for (size_t i = 0; i < depths_.size(); i++) {
            // Depths are visited in ascending order of layer count.
            size_t k = order_[i];
            while (f < depths_[k]) {
                f++;
                cur = decode_layer(cur, arch_.table(f), f, c);
            }
            double ones = 0;
            for (int p : bulks_[k]) {
                ones += cur.get(p);
            }
            density[k] = ones / static_cast<double>(bulks_[k].size());
            y[k] = 1 - 2 * density[k];
        }
    }

    void finalize() {
        order_.resize(depths_.size());
        for (size_t i = 0; i < order_.size(); i++) {
            order_[i] = i;
        }
        std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) { return depths_[a] < depths_[b]; });
    }

   private:
    std::vector<int> depths_;
    int n_;
    Architecture arch_;
    std::vector<std::vector<int>> bulks_;
    std::vector<size_t> order_;
};

/// Runs `sample(k)` for every shot and reduces the per-depth columns in shot order.
template <class Sample>
void sampled_rows(const ExperimentConfig &cfg, const DepthProbe &probe, double sweep_value, unsigned workers,
                  Sample &&sample, std::vector<ResultRow> &rows) {
    size_t w = probe.width();
    std::vector<double> ys(cfg.shots * w);
    std::vector<double> ds(cfg.shots * w);
    parallel_for_chunks(cfg.shots, workers, [&](size_t begin, size_t end) {
        for (size_t k = begin; k < end; k++) {
            probe.evaluate(sample(k), &ys[k * w], &ds[k * w]);
        }
    });
    for (size_t i = 0; i < w; i++) {
        double sum = 0;
        double sum_sq = 0;
        double dens = 0;
        for (size_t k = 0; k < cfg.shots; k++) {
            double v = ys[k * w + i];
            sum += v;
            sum_sq += v * v;
            dens += ds[k * w + i];
        }
        double m = static_cast<double>(cfg.shots);
        ResultRow row;
        row.sweep_value = sweep_value;
        row.depth = cfg.depths[i];
        row.y = sum / m;
        row.y_stderr = cfg.shots > 1 ? std::sqrt(std::max(0.0, (sum_sq - m * row.y * row.y) / (m - 1)) / m) : 0.0;
        row.density = dens / m;
        row.shots = cfg.shots;
        row.seed = cfg.seed;
        rows.push_back(row);
    }
}

std::vector<double> grid_or_zero(const ExperimentConfig &cfg) {
    return cfg.grid.empty() ? std::vector<double>{0.0} : cfg.grid;
}

void run_cluster_noise(const ExperimentConfig &cfg, unsigned workers, ResultRecord &rec) {
    DepthProbe probe(cfg);
    probe.finalize();
    auto flips = FlipTable::get(cfg.phase, cfg.n);
    auto grid = grid_or_zero(cfg);
    for (size_t g = 0; g < grid.size(); g++) {
        auto ch = cfg.channel_at(grid[g]);
        uint64_t seed = point_seed(cfg.seed, g);
        sampled_rows(
            cfg, probe, grid[g], workers,
            [&](size_t k) {
                ShotRng rng(seed, k);
                return sample_syndrome(*flips, ch, rng);
            },
            rec.rows);
    }
}

std::vector<double> noisy_distribution(const ExperimentConfig &cfg, const StateVector &state) {
    auto probs = x_basis_probabilities(apply_gates(disentangler(cfg.phase, cfg.n), state));
    return apply_channel_to_distribution(probs, cfg.n, cfg.phase, cfg.channel);
}

void run_sweep(const ExperimentConfig &cfg, unsigned workers, ResultRecord &rec) {
    DepthProbe probe(cfg);
    probe.finalize();
    auto grid = grid_or_zero(cfg);
    for (size_t g = 0; g < grid.size(); g++) {
        auto gs = ground_state(cfg.params_at(grid[g]));
        auto dist = noisy_distribution(cfg, gs.state);
        if (cfg.exact) {
            size_t w = probe.width();
            std::vector<double> y(w, 0.0);
            std::vector<double> dens(w, 0.0);
            std::vector<double> ys(w);
            std::vector<double> ds(w);
            for (uint64_t x = 0; x < dist.size(); x++) {
                if (dist[x] == 0) {
                    continue;
                }
                probe.evaluate(index_to_bits(x, cfg.n), ys.data(), ds.data());
                for (size_t i = 0; i < w; i++) {
                    y[i] += dist[x] * ys[i];
                    dens[i] += dist[x] * ds[i];
                }
            }
            for (size_t i = 0; i < w; i++) {
                rec.rows.push_back({grid[g], cfg.depths[i], y[i], 0.0, dens[i], 0, cfg.seed});
            }
            continue;
        }
        DiscreteSampler sampler(dist);
        uint64_t seed = point_seed(cfg.seed, g);
        sampled_rows(
            cfg, probe, grid[g], workers,
            [&](size_t k) {
                ShotRng rng(seed, k);
                return index_to_bits(sampler.sample(rng), cfg.n);
            },
            rec.rows);
    }
}

void run_gs(const ExperimentConfig &cfg, ResultRecord &rec) {
    auto axis = parse_coupling_axis(cfg.sweep_axis);
    HamiltonianParams base = cfg.hamiltonian;
    base.n = cfg.n;
    bool uniform = cfg.grid.size() >= 5;
    for (size_t k = 2; uniform && k < cfg.grid.size(); k++) {
        double h0 = cfg.grid[1] - cfg.grid[0];
        uniform = std::abs((cfg.grid[k] - cfg.grid[k - 1]) - h0) <= 1e-9 * std::max(1.0, std::abs(h0));
    }
    if (uniform) {
        auto scan = curvature_scan(base, axis, cfg.grid);
        for (const auto &pt : scan.points) {
            rec.rows.push_back({pt.lambda, 0, pt.energy, 0.0, pt.curvature, 0, cfg.seed});
        }
        for (size_t k = 0; k < scan.peaks.size(); k++) {
            rec.summary["curvature_peak_" + std::to_string(k + 1)] = scan.peaks[k];
        }
        return;
    }
    for (double v : cfg.grid) {
        auto gs = ground_state(cfg.params_at(v));
        rec.rows.push_back({v, 0, gs.energy, gs.residual, 0.0, 0, cfg.seed});
    }
}

void run_threshold(const ExperimentConfig &cfg, unsigned workers, ResultRecord &rec) {
    if (cfg.threshold_mode == ThresholdMode::Analytic) {
        rec.summary["p_th"] = analytic_threshold();
        auto arch = Architecture::make(ClusterKind::ZXZ, ArchStyle::AltXZ,
                                       *std::max_element(cfg.depths.begin(), cfg.depths.end()));
        for (double v : cfg.grid) {
            auto t = density_trajectory(v, arch, arch.depth());
            for (int d : cfg.depths) {
                double p = d == 0 ? v : t.values[static_cast<size_t>(d - 1)];
                rec.rows.push_back({v, d, 1 - 2 * p, 0.0, p, 0, cfg.seed});
            }
        }
        return;
    }
    McThresholdOptions options;
    options.n = cfg.n;
    options.shots = cfg.shots;
    options.tol = cfg.threshold_tol;
    options.seed = cfg.seed;
    options.workers = workers;
    auto res = mc_threshold(cfg.phase, options);
    rec.summary["p_th"] = res.threshold;
    rec.summary["bracket_lo"] = res.lo;
    rec.summary["bracket_hi"] = res.hi;
    for (const auto &p : res.probes) {
        rec.rows.push_back({p.pz, 4, p.mean, p.stderr_mean, static_cast<double>(p.verdict), p.shots, cfg.seed});
    }
}

void run_backprop(const ExperimentConfig &cfg, ResultRecord &rec) {
    auto full = Architecture::make(cfg.phase, cfg.arch, *std::max_element(cfg.depths.begin(), cfg.depths.end()));
    std::vector<std::vector<WeightedPauli>> conjugated;
    for (int d : cfg.depths) {
        auto op = backprop(full.prefix(d), cfg.n);
        rec.artifacts["expansion_d" + std::to_string(d)] = expansion_to_text(op);
        rec.summary["terms_d" + std::to_string(d)] = static_cast<double>(op.size());
        conjugated.push_back(conjugate_by_disentangler(to_real(op), cfg.phase, cfg.n));
    }
    for (double v : grid_or_zero(cfg)) {
        auto gs = ground_state(cfg.params_at(v));
        for (size_t i = 0; i < cfg.depths.size(); i++) {
            rec.rows.push_back({v, cfg.depths[i], expectation(conjugated[i], gs.state), 0.0,
                                static_cast<double>(conjugated[i].size()), 0, cfg.seed});
        }
    }
}

void run_truthtable(const ExperimentConfig &cfg, ResultRecord &rec) {
    std::vector<LayerKind> layers{LayerKind::Xcorr, LayerKind::Zcorr};
    if (cfg.phase == ClusterKind::ZXXXZ) {
        layers.push_back(LayerKind::Ccorr);
    }
    for (auto layer : layers) {
        const auto &table = derive_table(cfg.phase, layer);
        std::string name(layer_kind_name(layer));
        rec.artifacts["table_" + name] = table_to_text(table);
        auto profile = bernstein_profile(table);
        for (size_t w = 0; w < profile.size(); w++) {
            rec.summary["profile_" + name + "_" + std::to_string(w)] = static_cast<double>(profile[w]);
        }
    }
}

}  // namespace

ResultRecord run_experiment(const ExperimentConfig &cfg, unsigned workers) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    ResultRecord rec;
    rec.config = cfg;
    switch (cfg.experiment) {
        case ExperimentKind::ClusterNoise:
            run_cluster_noise(cfg, workers, rec);
            break;
        case ExperimentKind::Sweep:
            run_sweep(cfg, workers, rec);
            break;
        case ExperimentKind::Gs:
            run_gs(cfg, rec);
            break;
        case ExperimentKind::Threshold:
            run_threshold(cfg, workers, rec);
            break;
        case ExperimentKind::Backprop:
            run_backprop(cfg, rec);
            break;
        case ExperimentKind::Truthtable:
            run_truthtable(cfg, rec);
            break;
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::string rows_to_csv(const std::vector<ResultRow> &rows) {
    std::string out = "sweep_value,depth,y,y_stderr,density,shots,seed\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%.17g,%.17g,%zu,%llu\n", r.sweep_value, r.depth, r.y,
                      r.y_stderr, r.density, r.shots, static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

std::string record_to_json(const ResultRecord &rec, int indent) {
    json j;
    j["format_version"] = ResultRecord::kFormatVersion;
    j["library_version"] = library_version();
    j["config"] = config_json(rec.config);
    json rows = json::array();
    for (const auto &r : rec.rows) {
        rows.push_back({{"sweep_value", r.sweep_value},
                        {"depth", r.depth},
                        {"y", r.y},
                        {"y_stderr", r.y_stderr},
                        {"density", r.density},
                        {"shots", r.shots},
                        {"seed", r.seed}});
    }
    j["rows"] = rows;
    j["summary"] = json::object();
    for (const auto &[k, v] : rec.summary) {
        j["summary"][k] = v;
    }
    j["artifacts"] = json::object();
    for (const auto &[k, v] : rec.artifacts) {
        j["artifacts"][k] = v;
    }
    return j.dump(indent) + "\n";
}

namespace {

void write_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

void emit_results(const ResultRecord &rec, const std::string &format, const std::filesystem::path &path) {
    if (format == "csv") {
        write_file(path, rows_to_csv(rec.rows));
        write_file(path.string() + ".json", record_to_json(rec));
    } else if (format == "json") {
        write_file(path, record_to_json(rec));
    } else {
        throw ConfigError("format must be csv or json");
    }
    json timing;
    timing["wall_seconds"] = rec.wall_seconds;
    write_file(path.string() + ".timing.json", timing.dump(2) + "\n");
}

std::filesystem::path preset_directory() {
    if (const char *env = std::getenv("QCNN_PRESET_DIR")) {
        return env;
    }
    return QCNN_PRESET_DIR;
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig5a", "fig7", "figS3"};
}

ExperimentConfig load_preset(std::string_view name) {
    auto names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    return load_config(preset_directory() / (std::string(name) + ".json"));
}

}  // namespace qcnn
