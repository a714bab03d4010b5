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


#include "qcnn/threshold.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>

namespace qcnn {

double f_x(double p) {
    double q = 1 - p;
    return p * p * p + p * q * q * (3 - 2 * p + 4 * p * p);
}

double f_z(double p) {
    return p * p * (3 - 2 * p);
}

double analytic_threshold(double lo, double hi, double tol) {
    if (!(lo > 0 && hi < 0.5 && lo < hi)) {
        throw std::invalid_argument("threshold bracket must lie inside (0, 0.5)");
    }
    auto g = [](double p) { return pair_map(p) - p; };
    double glo = g(lo);
    if (glo * g(hi) > 0) {
        throw std::invalid_argument("bracket does not contain the nontrivial fixed point");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

DensityTrajectory density_trajectory(double p0, const Architecture &arch, int depth) {
    if (!(p0 >= 0 && p0 <= 1)) {
        throw std::invalid_argument("initial density must lie in [0, 1]");
    }
    if (depth < 0 || depth > arch.depth()) {
        throw std::invalid_argument("trajectory depth exceeds the architecture");
    }
    DensityTrajectory t;
    t.p0 = p0;
    double p = p0;
    for (int f = 1; f <= depth; f++) {
        auto layer = arch.layers[static_cast<size_t>(f - 1)];
        p = layer == LayerKind::Zcorr ? f_z(p) : f_x(p);
        t.layers.push_back(layer);
        t.values.push_back(p);
    }
    return t;
}

std::vector<uint64_t> bernstein_profile(const DecoderTable &table) {
    std::vector<uint64_t> profile(static_cast<size_t>(table.width()) + 1, 0);
    for (size_t x = 0; x < table.bits.size(); x++) {
        if (table.bits[x]) {
            profile[static_cast<size_t>(std::popcount(x))]++;
        }
    }
    return profile;
}

double bernstein_eval(const std::vector<uint64_t> &profile, double p) {
    int w = static_cast<int>(profile.size()) - 1;
    double s = 0;
    for (int k = 0; k <= w; k++) {
        s += static_cast<double>(profile[static_cast<size_t>(k)]) * std::pow(p, k) * std::pow(1 - p, w - k);
    }
    return s;
}

std::vector<int> bulk_survivors(const Architecture &arch, int n, int f) {
    if (f < 0 || f > arch.depth()) {
        throw std::invalid_argument("layer index out of range");
    }
    int radius = 0;
    for (int g = 1; g <= f; g++) {
        radius += arch.table(g).max_offset() * pow3i(g - 1);
    }
    int c = (n + 1) / 2;
    int step = pow3i(f);
    std::vector<int> out;
    for (int p = c - ((c - 1) / step) * step; p <= n; p += step) {
        if (p - radius >= 1 && p + radius <= n) {
            out.push_back(p);
        }
    }
    return out;
}

namespace {

uint64_t probe_seed(uint64_t seed, ClusterKind kind, double pz) {
    uint64_t bits;
    std::memcpy(&bits, &pz, sizeof(bits));
    return splitmix64(seed ^ splitmix64(bits + static_cast<uint64_t>(kind)));
}

}  // namespace

ProbeResult pair_trend_probe(ClusterKind kind, double pz, const McThresholdOptions &options) {
    auto arch = Architecture::make(kind, ArchStyle::AltXZ, 4);
    arch.validate(options.n);
    auto b2 = bulk_survivors(arch, options.n, 2);
    auto b4 = bulk_survivors(arch, options.n, 4);
    if (b2.empty() || b4.empty()) {
        throw std::invalid_argument("chain too short for a bulk layer-4 survivor");
    }
    auto flips = FlipTable::get(kind, options.n);
    ChannelSpec ch{0, 0, pz};
    ch.validate();
    uint64_t seed = probe_seed(options.seed, kind, pz);
    ProbeResult r;
    r.pz = pz;
    std::vector<double> values;
    size_t target = options.shots;
    for (int round = 0; round <= options.max_escalations; round++) {
        size_t done = values.size();
        values.resize(target);
        parallel_for_chunks(target - done, options.workers, [&](size_t begin, size_t end) {
            for (size_t k = done + begin; k < done + end; k++) {
                ShotRng rng(seed, k);
                auto trace = decode_trace(sample_syndrome(*flips, ch, rng), arch);
                double d2 = 0;
                double d4 = 0;
                for (int p : b2) {
                    d2 += trace[2].get(p);
                }
                for (int p : b4) {
                    d4 += trace[4].get(p);
                }
                values[k] = d4 / static_cast<double>(b4.size()) - d2 / static_cast<double>(b2.size());
            }
        });
        double sum = 0;
        double sum_sq = 0;
        for (double v : values) {
            sum += v;
            sum_sq += v * v;
        }
        double k = static_cast<double>(values.size());
        r.shots = values.size();
        r.mean = sum / k;
        r.stderr_mean = std::sqrt(std::max(0.0, (sum_sq - k * r.mean * r.mean) / std::max(1.0, k - 1)) / k);
        if (r.mean == 0 && r.stderr_mean == 0) {
            // Noiseless probes never leave the all-zero syndrome.
            r.verdict = pz == 0 ? 1 : 0;
        } else if (r.mean < -options.sigma * r.stderr_mean) {
            r.verdict = 1;
        } else if (r.mean > options.sigma * r.stderr_mean) {
            r.verdict = -1;
        } else {
            r.verdict = 0;
        }
        if (r.verdict != 0) {
            break;
        }
        target *= 4;
    }
    return r;
}

McThresholdResult mc_threshold(ClusterKind kind, const McThresholdOptions &options) {
    if (!(options.lo >= 0 && options.lo < options.hi && options.hi <= 0.5) || options.tol <= 0 ||
        options.shots < 1) {
        throw std::invalid_argument("bad Monte Carlo threshold options");
    }
    McThresholdResult res;
    double lo = options.lo;
    double hi = options.hi;
    for (double end : {lo, hi}) {
        auto probe = pair_trend_probe(kind, end, options);
        res.probes.push_back(probe);
        if (probe.verdict == 0 || probe.verdict != (end == lo ? 1 : -1)) {
            std::ostringstream msg;
            msg << "bracket endpoint pZ = " << end << " is not on the expected side of the threshold";
            throw InconclusiveError(msg.str(), lo, hi);
        }
    }
    while (hi - lo > options.tol) {
        double mid = 0.5 * (lo + hi);
        auto probe = pair_trend_probe(kind, mid, options);
        res.probes.push_back(probe);
        if (probe.verdict == 0) {
            std::ostringstream msg;
            msg << "probe pZ = " << mid << " stayed within " << options.sigma << " sigma after " << probe.shots
                << " shots (mean " << probe.mean << ", stderr " << probe.stderr_mean << ")";
            throw InconclusiveError(msg.str(), lo, hi);
        }
        (probe.verdict > 0 ? lo : hi) = mid;
    }
    res.lo = lo;
    res.hi = hi;
    res.threshold = 0.5 * (lo + hi);
    return res;
}

}  // namespace qcnn
