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


// qcnn: command line front end for the experiment runner.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qcnn/experiment.hpp"
#include "qcnn/groundstate.hpp"
#include "qcnn/threshold.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitInconclusive = 4;

struct Overrides {
    std::string config;
    std::string preset;
    std::optional<uint64_t> seed;
    std::optional<int64_t> shots;
    std::optional<int> n;
    std::string depths;
    std::string phase;
    std::string arch;
    std::string channel;
    std::string out;
    std::string format;
    std::string axis;
    std::string grid;
    std::optional<double> j1, j2, h1, h2;
    bool exact = false;
    bool analytic = false;
    bool mc = false;
    std::optional<double> tol;
    unsigned workers = 1;
    bool print_config = false;
};

void add_common(CLI::App *sub, Overrides &o) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--preset", o.preset, "Named preset: fig3, fig5a, fig7, figS3");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--shots", o.shots, "Shots per point");
    sub->add_option("--n", o.n, "Chain length (odd)");
    sub->add_option("--depths", o.depths, "Depth range A..B or a single depth");
    sub->add_option("--phase", o.phase, "zxz or zxxxz");
    sub->add_option("--arch", o.arch, "x-only, alt-xz or alt-cz");
    sub->add_option("--channel", o.channel, "x:..,y:..,z:.. or depol:..");
    sub->add_option("--out", o.out, "Output path (stdout CSV when omitted)");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--axis", o.axis, "Sweep axis: pz, px, py, depol, J1, J2, h1, h2");
    sub->add_option("--grid", o.grid, "Sweep grid start:stop:points or comma separated values");
    sub->add_option("--J1", o.j1);
    sub->add_option("--J2", o.j2);
    sub->add_option("--h1", o.h1);
    sub->add_option("--h2", o.h2);
    sub->add_flag("--exact", o.exact, "Exact expectations instead of sampling");
    sub->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
    sub->add_flag("--print-config", o.print_config, "Print the resolved config and exit");
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    auto to_double = [&](const std::string &s) {
        try {
            size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) {
                throw std::invalid_argument(s);
            }
            return v;
        } catch (const std::exception &) {
            throw qcnn::ConfigError("bad grid value '" + s + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) {
            parts.push_back(part);
        }
        if (parts.size() != 3) {
            throw qcnn::ConfigError("grid must be start:stop:points");
        }
        double a = to_double(parts[0]);
        double b = to_double(parts[1]);
        int points = static_cast<int>(to_double(parts[2]));
        if (points < 1) {
            throw qcnn::ConfigError("grid needs at least one point");
        }
        for (int k = 0; k < points; k++) {
            out.push_back(points == 1 ? a : a + (b - a) * k / (points - 1));
        }
        return out;
    }
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        out.push_back(to_double(part));
    }
    return out;
}

qcnn::ExperimentConfig resolve(qcnn::ExperimentKind kind, const Overrides &o) {
    qcnn::ExperimentConfig cfg;
    if (!o.config.empty() && !o.preset.empty()) {
        throw qcnn::ConfigError("--config and --preset are exclusive");
    }
    if (!o.config.empty()) {
        cfg = qcnn::load_config(o.config);
    } else if (!o.preset.empty()) {
        cfg = qcnn::load_preset(o.preset);
    } else {
        cfg.experiment = kind;
    }
    if (cfg.experiment != kind) {
        throw qcnn::ConfigError("config describes a " + std::string(qcnn::experiment_kind_name(cfg.experiment)) +
                                " experiment, not " + std::string(qcnn::experiment_kind_name(kind)));
    }
    if (o.seed) {
        cfg.seed = *o.seed;
    }
    if (o.shots) {
        if (*o.shots < 1) {
            throw qcnn::ConfigError("shots must be >= 1");
        }
        cfg.shots = static_cast<size_t>(*o.shots);
    }
    if (o.n) {
        cfg.n = *o.n;
    }
    if (!o.depths.empty()) {
        cfg.depths = qcnn::parse_depth_range(o.depths);
    }
    try {
        if (!o.phase.empty()) {
            cfg.phase = qcnn::parse_cluster_kind(o.phase);
        }
        if (!o.arch.empty()) {
            cfg.arch = qcnn::parse_arch_style(o.arch);
        }
        if (!o.channel.empty()) {
            cfg.channel = qcnn::ChannelSpec::parse(o.channel);
        }
    } catch (const qcnn::ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw qcnn::ConfigError(e.what());
    }
    if (!o.axis.empty()) {
        cfg.sweep_axis = o.axis;
    }
    if (!o.grid.empty()) {
        cfg.grid = parse_grid(o.grid);
    }
    if (o.j1) {
        cfg.hamiltonian.J1 = *o.j1;
    }
    if (o.j2) {
        cfg.hamiltonian.J2 = *o.j2;
    }
    if (o.h1) {
        cfg.hamiltonian.h1 = *o.h1;
    }
    if (o.h2) {
        cfg.hamiltonian.h2 = *o.h2;
    }
    if (o.exact) {
        cfg.exact = true;
    }
    if (o.analytic && o.mc) {
        throw qcnn::ConfigError("--analytic and --mc are exclusive");
    }
    if (o.analytic) {
        cfg.threshold_mode = qcnn::ThresholdMode::Analytic;
    }
    if (o.mc) {
        cfg.threshold_mode = qcnn::ThresholdMode::MonteCarlo;
    }
    if (o.tol) {
        cfg.threshold_tol = *o.tol;
    }
    if (!o.out.empty()) {
        cfg.out = o.out;
    }
    if (!o.format.empty()) {
        cfg.format = o.format;
    }
    cfg.validate();
    return cfg;
}

void print_summary(const qcnn::ResultRecord &rec) {
    for (const auto &[key, value] : rec.summary) {
        std::printf("%s = %.8f\n", key.c_str(), value);
    }
}

int run(qcnn::ExperimentKind kind, const Overrides &o) {
    auto cfg = resolve(kind, o);
    if (o.print_config) {
        std::cout << qcnn::serialize_config(cfg);
        return 0;
    }
    auto rec = qcnn::run_experiment(cfg, o.workers);
    if (kind == qcnn::ExperimentKind::Threshold) {
        print_summary(rec);
        std::cout << qcnn::record_to_json(rec, -1);
    }
    if (!cfg.out.empty()) {
        qcnn::emit_results(rec, cfg.format, cfg.out);
        std::fprintf(stderr, "wrote %s (%zu rows, %.3f s)\n", cfg.out.c_str(), rec.rows.size(), rec.wall_seconds);
    } else if (kind != qcnn::ExperimentKind::Threshold) {
        if (cfg.format == "json") {
            std::cout << qcnn::record_to_json(rec);
        } else {
            std::cout << qcnn::rows_to_csv(rec.rows);
            if (kind == qcnn::ExperimentKind::Truthtable || kind == qcnn::ExperimentKind::Backprop) {
                for (const auto &[name, text] : rec.artifacts) {
                    std::cout << "# " << name << "\n" << text;
                }
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qcnn experiment runner"};
    app.set_version_flag("--version", std::string(qcnn::library_version()));
    app.require_subcommand(1);

    Overrides o;
    struct Sub {
        const char *name;
        const char *help;
        qcnn::ExperimentKind kind;
    };
    const Sub subs[] = {
        {"threshold", "Analytic or Monte Carlo threshold", qcnn::ExperimentKind::Threshold},
        {"cluster-noise", "Noisy cluster states through the QCNN", qcnn::ExperimentKind::ClusterNoise},
        {"sweep", "Ground states through the QCNN", qcnn::ExperimentKind::Sweep},
        {"gs", "Ground state energies and curvature", qcnn::ExperimentKind::Gs},
        {"backprop", "Heisenberg picture expansion of the QCNN observable", qcnn::ExperimentKind::Backprop},
        {"truthtable", "Decoder truth tables and Bernstein profiles", qcnn::ExperimentKind::Truthtable},
    };
    std::vector<std::pair<CLI::App *, qcnn::ExperimentKind>> apps;
    for (const auto &s : subs) {
        auto *sub = app.add_subcommand(s.name, s.help);
        add_common(sub, o);
        if (s.kind == qcnn::ExperimentKind::Threshold) {
            sub->add_flag("--analytic", o.analytic, "Fixed point of the density map");
            sub->add_flag("--mc", o.mc, "Monte Carlo bisection at large N");
            sub->add_option("--tol", o.tol, "Bisection tolerance for --mc");
        }
        apps.emplace_back(sub, s.kind);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        for (auto &[sub, kind] : apps) {
            if (sub->parsed()) {
                return run(kind, o);
            }
        }
    } catch (const qcnn::NonConvergenceError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNonConvergence;
    } catch (const qcnn::InconclusiveError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInconclusive;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitConfig;
}
