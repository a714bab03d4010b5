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

#ifndef QCNN_GROUNDSTATE_HPP
#define QCNN_GROUNDSTATE_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/hamiltonian.hpp"
#include "qcnn/statevector.hpp"

namespace qcnn {

class NonConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// H v without materializing H.
StateVector apply_hamiltonian(const HamiltonianParams &params, const StateVector &v);

struct GroundStateOptions {
    double tol = 1e-10;
    int max_krylov = 200;
    int max_restarts = 8;
    uint64_t seed = 0x5eed;
    bool estimate_gap = true;
    /// Adds -eps X_1 with eps = 1e-6 max|coupling|.
    bool pin_edge = false;
};

struct GroundStateResult {
    double energy = 0;
    StateVector state;
    double residual = 0;
    double gap_estimate = 0;
    bool degenerate = false;
    int iterations = 0;
};

GroundStateResult ground_state(const HamiltonianParams &params, double tol = 1e-10);
GroundStateResult ground_state(const HamiltonianParams &params, const GroundStateOptions &options);

/// Lowest Ritz value after each of `iterations` Lanczos steps from a seeded start vector.
std::vector<double> lanczos_ritz_history(const HamiltonianParams &params, int iterations, uint64_t seed);

enum class CouplingAxis { J1, J2, h1, h2 };
CouplingAxis parse_coupling_axis(std::string_view text);
std::string_view coupling_axis_name(CouplingAxis axis);
HamiltonianParams with_coupling(HamiltonianParams params, CouplingAxis axis, double value);

struct CurvaturePoint {
    double lambda;
    double energy;
    double curvature;
};

struct CurvatureScan {
    std::vector<CurvaturePoint> points;
    /// Interior local maxima of |d2E|, strongest first.
    std::vector<double> peaks;
};

CurvatureScan curvature_scan(const HamiltonianParams &base, CouplingAxis axis, std::span<const double> grid,
                             double tol = 1e-10);

/// Writes raw amplitudes to `path` and a text header to `path` + ".txt".
void write_amplitude_dump(const GroundStateResult &result, const HamiltonianParams &params,
                          const std::filesystem::path &path);
StateVector read_amplitude_dump(const std::filesystem::path &path, int n);

}  // namespace qcnn

#endif
