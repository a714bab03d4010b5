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


#ifndef QCNN_EXPERIMENT_HPP
#define QCNN_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/decoder.hpp"
#include "qcnn/groundstate.hpp"
#include "qcnn/hamiltonian.hpp"
#include "qcnn/noise.hpp"

namespace qcnn {

std::string_view library_version();

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { ClusterNoise, Sweep, Threshold, Backprop, Truthtable, Gs };
std::string_view experiment_kind_name(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

enum class ThresholdMode { Analytic, MonteCarlo };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::ClusterNoise;
    ClusterKind phase = ClusterKind::ZXZ;
    ArchStyle arch = ArchStyle::AltXZ;
    int n = 15;
    std::vector<int> depths{1};
    ChannelSpec channel;
    /// pz, px, py or depol for cluster-noise; J1, J2, h1 or h2 for Hamiltonian experiments. Empty means no sweep.
    std::string sweep_axis;
    std::vector<double> grid;
    /// Couplings of the Hamiltonian experiments. Its n field is unused; the chain length is `n`.
    HamiltonianParams hamiltonian{1, 0, 0, 0, 0};
    size_t shots = 10000;
    uint64_t seed = 1;
    /// Sweep and backprop: exact expectations from the full distribution instead of sampling.
    bool exact = false;
    ThresholdMode threshold_mode = ThresholdMode::Analytic;
    double threshold_tol = 0.0025;
    std::string out;
    std::string format = "csv";

    HamiltonianParams params_at(double value) const;
    ChannelSpec channel_at(double value) const;
    /// Throws ConfigError.
    void validate() const;
    bool operator==(const ExperimentConfig &other) const = default;
};

/// JSON text. Unknown keys are rejected. "depths" accepts a list or "A..B"; "sweep.grid" accepts a list or
/// {"start", "stop", "points"}.
ExperimentConfig parse_config(std::string_view json_text);
std::string serialize_config(const ExperimentConfig &cfg);
ExperimentConfig load_config(const std::filesystem::path &path);
/// "A..B" or a single integer.
std::vector<int> parse_depth_range(std::string_view text);

struct ResultRow {
    double sweep_value = 0;
    int depth = 0;
    double y = 0;
    double y_stderr = 0;
    double density = 0;
    size_t shots = 0;
    uint64_t seed = 0;
};

struct ResultRecord {
    static constexpr int kFormatVersion = 1;
    ExperimentConfig config;
    std::vector<ResultRow> rows;
    /// Scalar results such as thresholds or bracket ends, in a stable order.
    std::map<std::string, double> summary;
    /// Text artifacts such as truth tables or expansions.
    std::map<std::string, std::string> artifacts;
    double wall_seconds = 0;
};

/// Deterministic for a given config; `workers` only changes speed.
ResultRecord run_experiment(const ExperimentConfig &cfg, unsigned workers = 1);

std::string rows_to_csv(const std::vector<ResultRow> &rows);
/// Pretty printed with `indent` spaces; a negative indent gives a single line.
std::string record_to_json(const ResultRecord &rec, int indent = 2);
/// Writes `path` in the given format, plus a "<path>.timing.json" sidecar holding the wall clock.
/// CSV output also writes the manifest to "<path>.json".
void emit_results(const ResultRecord &rec, const std::string &format, const std::filesystem::path &path);

/// Directory holding fig3.json, fig5a.json, fig7.json and figS3.json.
std::filesystem::path preset_directory();
ExperimentConfig load_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace qcnn

#endif
