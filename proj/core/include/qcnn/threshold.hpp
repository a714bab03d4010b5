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


#ifndef QCNN_THRESHOLD_HPP
#define QCNN_THRESHOLD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcnn/decoder.hpp"

namespace qcnn {

/// Density map of an X-correcting layer under independent flips.
double f_x(double p);
/// Density map of the majority layer.
double f_z(double p);
inline double pair_map(double p) {
    return f_z(f_x(p));
}

/// Nontrivial fixed point of f_z o f_x by bisection on (lo, hi).
double analytic_threshold(double lo = 1e-6, double hi = 0.5 - 1e-6, double tol = 1e-6);

struct DensityTrajectory {
    double p0 = 0;
    std::vector<LayerKind> layers;
    /// values[f - 1] is the density after layer f.
    std::vector<double> values;
};

/// Uses f_x for Xcorr and Ccorr layers and f_z for Zcorr layers.
DensityTrajectory density_trajectory(double p0, const Architecture &arch, int depth);

/// N_w = number of weight-w inputs mapped to 1.
std::vector<uint64_t> bernstein_profile(const DecoderTable &table);
/// sum_w N_w p^w (1-p)^(width-w).
double bernstein_eval(const std::vector<uint64_t> &profile, double p);

/// Bisection hit a probe that stayed inside the 3 sigma band at the shot cap.
class InconclusiveError : public std::runtime_error {
   public:
    InconclusiveError(const std::string &what, double lo, double hi) : std::runtime_error(what), lo(lo), hi(hi) {}
    double lo;
    double hi;
};

struct McThresholdOptions {
    int n = 1215;
    size_t shots = 100000;
    /// Shots grow by 4x at most this many times per probe.
    int max_escalations = 2;
    double sigma = 3.0;
    double lo = 0.005;
    double hi = 0.15;
    double tol = 0.0025;
    uint64_t seed = 1;
    unsigned workers = 1;
};

struct ProbeResult {
    double pz = 0;
    /// Mean and standard error of (bulk density after layer 4) - (bulk density after layer 2).
    double mean = 0;
    double stderr_mean = 0;
    size_t shots = 0;
    /// +1 significantly below threshold, -1 significantly above, 0 inconclusive.
    int verdict = 0;
};

struct McThresholdResult {
    double threshold = 0;
    double lo = 0;
    double hi = 0;
    std::vector<ProbeResult> probes;
};

/// Survivors of layer f whose accumulated window stays inside [1, n].
std::vector<int> bulk_survivors(const Architecture &arch, int n, int f);

ProbeResult pair_trend_probe(ClusterKind kind, double pz, const McThresholdOptions &options);

/// Alternating Xcorr/Zcorr architecture on the cluster state of the given kind under pure Z noise.
McThresholdResult mc_threshold(ClusterKind kind, const McThresholdOptions &options);

}  // namespace qcnn

#endif
