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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qcnn/experiment.hpp"

namespace qcnn {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name) {
    auto dir = fs::temp_directory_path() / "qcnn_experiment_tests";
    fs::create_directories(dir);
    return dir / name;
}

ExperimentConfig small_cluster_config() {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::ClusterNoise;
    cfg.n = 135;
    cfg.depths = {0, 1, 2, 3};
    cfg.channel = ChannelSpec::parse("z:0.03");
    cfg.sweep_axis = "pz";
    cfg.grid = {0.01, 0.03, 0.05};
    cfg.shots = 500;
    cfg.seed = 11;
    return cfg;
}

TEST(Config, RoundTripsRandomizedConfigs) {
    std::mt19937_64 rng(8);
    const ExperimentKind kinds[] = {ExperimentKind::ClusterNoise, ExperimentKind::Sweep, ExperimentKind::Threshold,
                                    ExperimentKind::Backprop, ExperimentKind::Truthtable, ExperimentKind::Gs};
    for (int t = 0; t < 200; t++) {
        ExperimentConfig cfg;
        cfg.experiment = kinds[rng() % 6];
        cfg.phase = rng() % 2 ? ClusterKind::ZXZ : ClusterKind::ZXXXZ;
        cfg.arch = cfg.phase == ClusterKind::ZXXXZ && rng() % 2 ? ArchStyle::AltCZ
                                                                : (rng() % 2 ? ArchStyle::AltXZ : ArchStyle::XOnly);
        bool small = cfg.experiment == ExperimentKind::Sweep || cfg.experiment == ExperimentKind::Gs ||
                     cfg.experiment == ExperimentKind::Backprop;
        cfg.n = small ? 15 : 1215;
        cfg.depths = {1};
        if (!small && rng() % 2) {
            cfg.depths = {1, 2, 3};
        }
        std::uniform_real_distribution<double> u(0, 0.3);
        cfg.channel = {u(rng), u(rng), u(rng)};
        bool channel_axis = cfg.experiment == ExperimentKind::ClusterNoise || cfg.experiment == ExperimentKind::Threshold;
        if (cfg.experiment == ExperimentKind::Gs || rng() % 2) {
            cfg.sweep_axis = channel_axis ? "pz" : "h2";
            double start = u(rng) / 10;
            int points = 1 + static_cast<int>(rng() % 6);
            cfg.grid.clear();
            for (int k = 0; k < points; k++) {
                cfg.grid.push_back(start + 0.013 * k);
            }
            if (channel_axis) {
                cfg.channel.pz = 0;
            }
        }
        cfg.hamiltonian = {u(rng), u(rng), u(rng), u(rng), 0};
        cfg.shots = 1 + rng() % 100000;
        cfg.seed = rng();
        cfg.exact = rng() % 2;
        cfg.threshold_mode = rng() % 2 ? ThresholdMode::Analytic : ThresholdMode::MonteCarlo;
        cfg.threshold_tol = 0.001 + u(rng) / 100;
        cfg.out = "out_" + std::to_string(t) + ".csv";
        cfg.format = rng() % 2 ? "csv" : "json";
        ASSERT_NO_THROW(cfg.validate()) << serialize_config(cfg);
        EXPECT_EQ(parse_config(serialize_config(cfg)), cfg) << serialize_config(cfg);
    }
}

TEST(Config, RejectsInvalidInput) {
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"bogus\": 1}"), ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"nope\"}"), ConfigError);
    EXPECT_THROW(parse_config("not json"), ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"shots\": 0}"), ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"n\": 1215, \"depths\": \"1..7\"}"), ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"n\": 19, \"depths\": [2]}"), ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"gs\", \"n\": 25, \"sweep\": {\"axis\": \"h2\", \"grid\": [0.1, 0.2]}}"),
                 ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"sweep\": {\"axis\": \"pz\", \"grid\": [0.1, 0.1]}}"),
                 ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"sweep\": {\"axis\": \"h2\", \"grid\": [0.1]}}"),
                 ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"sweep\", \"phase\": \"zxz\", \"arch\": \"alt-cz\"}"), ConfigError);
    EXPECT_THROW(parse_config("{\"experiment\": \"cluster-noise\", \"format\": \"xml\"}"), ConfigError);
}

TEST(Config, DepthRangesAndGrids) {
    EXPECT_EQ(parse_depth_range("1..4"), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(parse_depth_range("3"), (std::vector<int>{3}));
    EXPECT_THROW(parse_depth_range("4..1"), ConfigError);
    EXPECT_THROW(parse_depth_range("a..b"), ConfigError);
    auto cfg = parse_config(
        "{\"experiment\": \"cluster-noise\", \"n\": 1215, \"depths\": \"1..6\", "
        "\"sweep\": {\"axis\": \"pz\", \"grid\": {\"start\": 0.0, \"stop\": 0.12, \"points\": 25}}}");
    EXPECT_EQ(cfg.depths.size(), 6u);
    ASSERT_EQ(cfg.grid.size(), 25u);
    EXPECT_DOUBLE_EQ(cfg.grid[24], 0.12);
}

TEST(Config, SweepAxesMapOntoChannelAndCouplings) {
    ExperimentConfig cfg;
    cfg.channel = {0.1, 0.0, 0.0};
    cfg.sweep_axis = "depol";
    auto ch = cfg.channel_at(0.02);
    EXPECT_EQ(ch, (ChannelSpec{0.02, 0.02, 0.02}));
    cfg.sweep_axis = "h2";
    EXPECT_DOUBLE_EQ(cfg.params_at(0.7).h2, 0.7);
    EXPECT_EQ(cfg.params_at(0.7).n, cfg.n);
}

TEST(Presets, AllLoadAndValidate) {
    for (const auto &name : preset_names()) {
        auto cfg = load_preset(name);
        EXPECT_NO_THROW(cfg.validate()) << name;
    }
    auto fig3 = load_preset("fig3");
    EXPECT_EQ(fig3.n, 1215);
    EXPECT_EQ(fig3.grid.size() * fig3.depths.size(), 150u);
    EXPECT_THROW(load_preset("fig99"), ConfigError);
}

TEST(Run, ClusterNoiseRowsAndDeterminism) {
    auto cfg = small_cluster_config();
    auto a = run_experiment(cfg);
    EXPECT_EQ(a.rows.size(), cfg.grid.size() * cfg.depths.size());
    auto b = run_experiment(cfg, 3);
    EXPECT_EQ(rows_to_csv(a.rows), rows_to_csv(b.rows));
    for (const auto &r : a.rows) {
        if (r.depth == 0) {
            // Depth 0 reads the raw syndromes.
            EXPECT_NEAR(r.y, 1 - 2 * r.sweep_value, 5 * r.y_stderr + 1e-12);
            EXPECT_NEAR(r.density, r.sweep_value, 0.01);
        }
    }
    cfg.seed = 12;
    EXPECT_NE(rows_to_csv(run_experiment(cfg).rows), rows_to_csv(a.rows));
}

TEST(Run, SeedDoesNotChangeAnalyticOutputs) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::Threshold;
    auto a = run_experiment(cfg);
    cfg.seed = 999;
    auto b = run_experiment(cfg);
    EXPECT_EQ(a.summary, b.summary);
    cfg.experiment = ExperimentKind::Truthtable;
    auto t1 = run_experiment(cfg);
    cfg.seed = 5;
    EXPECT_EQ(t1.artifacts, run_experiment(cfg).artifacts);
    EXPECT_TRUE(t1.rows.empty());
    EXPECT_EQ(t1.summary.at("profile_Xcorr_3"), 6.0);
}

TEST(Run, SweepExactAndSampledAgree) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::Sweep;
    cfg.n = 9;
    cfg.depths = {1};
    cfg.channel = ChannelSpec::parse("depol:0.015");
    cfg.hamiltonian = {1, 0, 0.5, 0, 0};
    cfg.sweep_axis = "h2";
    cfg.grid = {0.2, 2.0};
    cfg.shots = 20000;
    cfg.exact = true;
    auto exact = run_experiment(cfg);
    cfg.exact = false;
    auto sampled = run_experiment(cfg);
    ASSERT_EQ(exact.rows.size(), sampled.rows.size());
    for (size_t k = 0; k < exact.rows.size(); k++) {
        EXPECT_NEAR(sampled.rows[k].y, exact.rows[k].y, 5 * sampled.rows[k].y_stderr + 1e-9);
    }
    EXPECT_GT(exact.rows[0].y, exact.rows[1].y);
}

TEST(Run, GsRowsCarryEnergyAndCurvature) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::Gs;
    cfg.n = 7;
    cfg.hamiltonian = {0, 0, 1, 0, 0};
    cfg.sweep_axis = "h1";
    cfg.grid = {0.5, 0.75, 1.0, 1.25, 1.5};
    auto rec = run_experiment(cfg);
    ASSERT_EQ(rec.rows.size(), 5u);
    for (const auto &r : rec.rows) {
        EXPECT_NEAR(r.y, -7 * r.sweep_value, 1e-9);
        EXPECT_NEAR(r.density, 0.0, 1e-6);
    }
}

TEST(Run, BackpropArtifactsAndExpectation) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::Backprop;
    cfg.n = 9;
    cfg.depths = {1};
    cfg.hamiltonian = {1, 0, 0, 0, 0};
    auto rec = run_experiment(cfg);
    ASSERT_EQ(rec.rows.size(), 1u);
    // The pure cluster state passes every layer untouched.
    EXPECT_NEAR(rec.rows[0].y, 1.0, 1e-9);
    EXPECT_TRUE(rec.artifacts.count("expansion_d1"));
}

TEST(Emit, CsvManifestAndTiming) {
    auto cfg = small_cluster_config();
    auto rec = run_experiment(cfg);
    auto path = scratch("cluster.csv");
    emit_results(rec, "csv", path);
    auto csv = slurp(path);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "sweep_value,depth,y,y_stderr,density,shots,seed");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(rec.rows.size() + 1));
    EXPECT_TRUE(fs::exists(path.string() + ".json"));
    EXPECT_TRUE(fs::exists(path.string() + ".timing.json"));
    auto manifest = slurp(path.string() + ".json");
    EXPECT_NE(manifest.find("\"library_version\""), std::string::npos);
    EXPECT_NE(manifest.find("\"format_version\": 1"), std::string::npos);
}

TEST(Emit, ManifestConfigRoundTrips) {
    auto cfg = small_cluster_config();
    auto rec = run_experiment(cfg);
    auto path = scratch("cluster_manifest.json");
    emit_results(rec, "json", path);
    // The manifest's config block parses back to the same config.
    auto text = slurp(path);
    auto start = text.find("\"config\": ");
    ASSERT_NE(start, std::string::npos);
    start = text.find('{', start);
    int depth = 0;
    size_t end = start;
    for (; end < text.size(); end++) {
        depth += text[end] == '{';
        depth -= text[end] == '}';
        if (depth == 0) {
            break;
        }
    }
    EXPECT_EQ(parse_config(text.substr(start, end - start + 1)), cfg);
}

TEST(Emit, EmptyRowsGiveHeaderOnly) {
    EXPECT_EQ(rows_to_csv({}), "sweep_value,depth,y,y_stderr,density,shots,seed\n");
    ResultRecord rec;
    EXPECT_THROW(emit_results(rec, "csv", "/proc/definitely/not/writable.csv"), std::runtime_error);
}

TEST(Emit, ByteIdenticalReruns) {
    auto cfg = small_cluster_config();
    auto p1 = scratch("rerun1.csv");
    auto p2 = scratch("rerun2.csv");
    emit_results(run_experiment(cfg), "csv", p1);
    emit_results(run_experiment(cfg), "csv", p2);
    EXPECT_EQ(slurp(p1), slurp(p2));
    EXPECT_EQ(slurp(p1.string() + ".json"), slurp(p2.string() + ".json"));
}

#ifdef QCNN_CLI_PATH
int run_cli(const std::string &args) {
    std::string cmd = std::string(QCNN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("threshold --analytic"), 0);
    EXPECT_EQ(run_cli("cluster-noise --n 14"), 2);
    EXPECT_EQ(run_cli("cluster-noise --depths 1..9 --n 1215"), 2);
    EXPECT_EQ(run_cli("cluster-noise --channel x:2"), 2);
    EXPECT_EQ(run_cli("sweep --arch alt-cz --phase zxz"), 2);
    EXPECT_EQ(run_cli("bogus"), 2);
    EXPECT_EQ(run_cli("sweep --preset fig3"), 2);
    EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Cli, InconclusiveThresholdExitsWithFour) {
    auto cfg = scratch("inconclusive.json");
    {
        std::ofstream out(cfg);
        out << "{\"experiment\": \"threshold\", \"n\": 1215, \"threshold\": {\"mode\": \"mc\", \"tol\": 0.2}, "
               "\"shots\": 1}";
    }
    EXPECT_EQ(run_cli("threshold --config " + cfg.string()), 4);
}

TEST(Cli, WritesFilesDeterministically) {
    auto out1 = scratch("cli1.csv");
    auto out2 = scratch("cli2.csv");
    std::string base = "cluster-noise --n 135 --depths 1..3 --channel z:0.04 --shots 300 --seed 5 --out ";
    ASSERT_EQ(run_cli(base + out1.string()), 0);
    ASSERT_EQ(run_cli(base + out2.string()), 0);
    auto text = slurp(out1);
    EXPECT_EQ(text, slurp(out2));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}
#endif

}  // namespace
}  // namespace qcnn
