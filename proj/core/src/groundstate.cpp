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

#include "qcnn/groundstate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qcnn/rng.hpp"

namespace qcnn {

namespace {

static_assert(std::endian::native == std::endian::little, "amplitude dumps assume a little-endian host");

constexpr size_t kKrylovBudgetBytes = size_t{1} << 30;
constexpr size_t kParallelDim = size_t{1} << 15;

struct MaskTerm {
    double c;
    uint64_t x;
    uint64_t z;
};

/// Real symmetric operator made of X/Z Pauli terms, applied by gathering.
struct RealOperator {
    int n = 0;
    size_t dim = 0;
    std::vector<MaskTerm> terms;

    RealOperator(const HamiltonianParams &params, bool pin_edge) : n(params.n), dim(size_t{1} << params.n) {
        if (params.n > kMaxStateQubits) {
            throw std::invalid_argument("ground states are limited to N <= " + std::to_string(kMaxStateQubits));
        }
        auto hterms = hamiltonian_terms(params);
        if (pin_edge) {
            hterms.push_back({-1e-6 * params.max_abs_coupling(), PauliString::single(1, Pauli::X)});
        }
        for (const auto &t : hterms) {
            auto m = PauliMasks::from(t.op, n);
            // Terms contain no Y letters, so the phase is +1 or -1.
            terms.push_back({m.phase == 2 ? -t.coefficient : t.coefficient, m.x, m.z});
        }
    }

    template <typename T>
    void apply(const T *in, T *out) const {
        auto body = [&](size_t begin, size_t end) {
            for (size_t i = begin; i < end; i++) {
                T acc{};
                for (const auto &t : terms) {
                    uint64_t src = i ^ t.x;
                    double s = (std::popcount(src & t.z) & 1) ? -t.c : t.c;
                    acc += s * in[src];
                }
                out[i] = acc;
            }
        };
        if (dim >= kParallelDim) {
            parallel_for_chunks(dim, 0, body);
        } else {
            body(0, dim);
        }
    }
};

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0;
    for (size_t k = 0; k < a.size(); k++) {
        s += a[k] * b[k];
    }
    return s;
}

void axpy(double alpha, const std::vector<double> &x, std::vector<double> &y) {
    for (size_t k = 0; k < y.size(); k++) {
        y[k] += alpha * x[k];
    }
}

double norm2(const std::vector<double> &a) {
    return std::sqrt(dot(a, a));
}

struct LanczosRun {
    double value = 0;
    std::vector<double> vec;
    double residual = 0;
    int iterations = 0;
    bool converged = false;
};

std::vector<double> random_start(size_t dim, uint64_t seed) {
    ShotRng rng(seed, 0);
    std::vector<double> v(dim);
    for (auto &x : v) {
        x = rng.uniform() - 0.5;
    }
    return v;
}

int krylov_cap(size_t dim, int requested) {
    size_t by_memory = std::max<size_t>(8, kKrylovBudgetBytes / (dim * sizeof(double)));
    size_t cap = std::min({static_cast<size_t>(requested), dim, by_memory});
    return static_cast<int>(std::max<size_t>(cap, 1));
}

/// Lowest eigenpair of op on the complement of `deflate`, with full reorthogonalization.
LanczosRun lanczos_lowest(const RealOperator &op, std::vector<double> start, const std::vector<double> *deflate,
                          int max_krylov, int max_restarts, double tol, std::vector<double> *history = nullptr) {
    LanczosRun run;
    int m = krylov_cap(op.dim, max_krylov);
    std::vector<double> w(op.dim);
    for (int restart = 0; restart <= max_restarts; restart++) {
        std::vector<std::vector<double>> basis;
        std::vector<double> alpha;
        std::vector<double> beta;
        if (deflate) {
            axpy(-dot(*deflate, start), *deflate, start);
        }
        double nrm = norm2(start);
        if (nrm == 0) {
            start = random_start(op.dim, 0x51a7 + restart);
            if (deflate) {
                axpy(-dot(*deflate, start), *deflate, start);
            }
            nrm = norm2(start);
        }
        for (auto &x : start) {
            x /= nrm;
        }
        basis.push_back(std::move(start));
        Eigen::VectorXd ritz;
        double theta = 0;
        for (int k = 0; k < m; k++) {
            op.apply(basis[k].data(), w.data());
            run.iterations++;
            double a = dot(basis[k], w);
            alpha.push_back(a);
            axpy(-a, basis[k], w);
            if (k > 0) {
                axpy(-beta[k - 1], basis[k - 1], w);
            }
            for (int pass = 0; pass < 2; pass++) {
                for (const auto &v : basis) {
                    axpy(-dot(v, w), v, w);
                }
                if (deflate) {
                    axpy(-dot(*deflate, w), *deflate, w);
                }
            }
            double b = norm2(w);

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
            Eigen::VectorXd sub(std::max<Eigen::Index>(0, static_cast<Eigen::Index>(alpha.size()) - 1));
            for (Eigen::Index t = 0; t < sub.size(); t++) {
                sub[t] = beta[static_cast<size_t>(t)];
            }
            es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            theta = es.eigenvalues()[0];
            ritz = es.eigenvectors().col(0);
            if (history) {
                history->push_back(theta);
            }
            double estimate = b * std::abs(ritz[k]);
            if (estimate < 0.1 * tol || b < 1e-14 || k + 1 == m) {
                break;
            }
            beta.push_back(b);
            std::vector<double> next(w.size());
            for (size_t t = 0; t < w.size(); t++) {
                next[t] = w[t] / b;
            }
            basis.push_back(std::move(next));
        }
        if (history) {
            return run;
        }
        std::vector<double> y(op.dim, 0.0);
        for (Eigen::Index t = 0; t < ritz.size(); t++) {
            axpy(ritz[t], basis[static_cast<size_t>(t)], y);
        }
        basis.clear();
        double ynorm = norm2(y);
        for (auto &x : y) {
            x /= ynorm;
        }
        op.apply(y.data(), w.data());
        double rq = dot(y, w);
        axpy(-rq, y, w);
        run.value = rq;
        run.residual = norm2(w);
        run.vec = y;
        if (run.residual < tol) {
            run.converged = true;
            return run;
        }
        start = std::move(y);
    }
    return run;
}

}  // namespace

StateVector apply_hamiltonian(const HamiltonianParams &params, const StateVector &v) {
    if (v.num_qubits() != params.n) {
        throw std::invalid_argument("apply_hamiltonian: state has " + std::to_string(v.num_qubits()) +
                                    " qubits but N = " + std::to_string(params.n));
    }
    RealOperator op(params, false);
    std::vector<amp_t> out(v.dim());
    op.apply(v.amplitudes().data(), out.data());
    return StateVector(params.n, std::move(out));
}

GroundStateResult ground_state(const HamiltonianParams &params, double tol) {
    GroundStateOptions options;
    options.tol = tol;
    return ground_state(params, options);
}

GroundStateResult ground_state(const HamiltonianParams &params, const GroundStateOptions &options) {
    if (!(options.tol > 0 && options.tol <= 1e-6)) {
        throw std::invalid_argument("ground_state tolerance must lie in (0, 1e-6]");
    }
    RealOperator op(params, options.pin_edge);
    auto run = lanczos_lowest(op, random_start(op.dim, options.seed), nullptr, options.max_krylov,
                              options.max_restarts, options.tol);
    if (!run.converged) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "Lanczos did not converge for %s: residual %.3e after %d iterations",
                      describe(params).c_str(), run.residual, run.iterations);
        throw NonConvergenceError(buf);
    }
    GroundStateResult result;
    result.energy = run.value;
    result.residual = run.residual;
    result.iterations = run.iterations;
    std::vector<amp_t> amps(run.vec.begin(), run.vec.end());
    result.state = StateVector(params.n, std::move(amps));
    if (options.estimate_gap && op.dim > 1) {
        auto excited = lanczos_lowest(op, random_start(op.dim, options.seed + 1), &run.vec, options.max_krylov,
                                      options.max_restarts, std::max(options.tol, 1e-8));
        result.iterations += excited.iterations;
        result.gap_estimate = std::max(0.0, excited.value - run.value);
        result.degenerate = result.gap_estimate < 100 * options.tol;
    }
    return result;
}

std::vector<double> lanczos_ritz_history(const HamiltonianParams &params, int iterations, uint64_t seed) {
    RealOperator op(params, false);
    std::vector<double> history;
    lanczos_lowest(op, random_start(op.dim, seed), nullptr, iterations, 0, 0.0, &history);
    return history;
}

CouplingAxis parse_coupling_axis(std::string_view text) {
    if (text == "J1" || text == "j1") {
        return CouplingAxis::J1;
    }
    if (text == "J2" || text == "j2") {
        return CouplingAxis::J2;
    }
    if (text == "h1") {
        return CouplingAxis::h1;
    }
    if (text == "h2") {
        return CouplingAxis::h2;
    }
    throw std::invalid_argument("unknown coupling axis '" + std::string(text) + "' (expected J1, J2, h1 or h2)");
}

std::string_view coupling_axis_name(CouplingAxis axis) {
    switch (axis) {
        case CouplingAxis::J1:
            return "J1";
        case CouplingAxis::J2:
            return "J2";
        case CouplingAxis::h1:
            return "h1";
        case CouplingAxis::h2:
            return "h2";
    }
    return "?";
}

HamiltonianParams with_coupling(HamiltonianParams params, CouplingAxis axis, double value) {
    switch (axis) {
        case CouplingAxis::J1:
            params.J1 = value;
            break;
        case CouplingAxis::J2:
            params.J2 = value;
            break;
        case CouplingAxis::h1:
            params.h1 = value;
            break;
        case CouplingAxis::h2:
            params.h2 = value;
            break;
    }
    return params;
}

CurvatureScan curvature_scan(const HamiltonianParams &base, CouplingAxis axis, std::span<const double> grid,
                             double tol) {
    if (grid.size() < 5) {
        throw std::invalid_argument("curvature scan needs at least 5 grid points");
    }
    double h = grid[1] - grid[0];
    if (!(std::abs(h) > 0)) {
        throw std::invalid_argument("curvature scan grid must be strictly monotone");
    }
    for (size_t k = 1; k < grid.size(); k++) {
        if (std::abs((grid[k] - grid[k - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw std::invalid_argument("curvature scan grid must be uniform");
        }
    }
    CurvatureScan scan;
    GroundStateOptions options;
    options.tol = tol;
    options.estimate_gap = false;
    for (double lambda : grid) {
        auto gs = ground_state(with_coupling(base, axis, lambda), options);
        scan.points.push_back({lambda, gs.energy, 0.0});
    }
    size_t n = scan.points.size();
    auto second = [&](size_t k) {
        return (scan.points[k - 1].energy - 2 * scan.points[k].energy + scan.points[k + 1].energy) / (h * h);
    };
    for (size_t k = 1; k + 1 < n; k++) {
        scan.points[k].curvature = second(k);
    }
    scan.points[0].curvature = second(1);
    scan.points[n - 1].curvature = second(n - 2);

    std::vector<size_t> peaks;
    for (size_t k = 1; k + 1 < n; k++) {
        double c = std::abs(scan.points[k].curvature);
        if (c >= std::abs(scan.points[k - 1].curvature) && c > std::abs(scan.points[k + 1].curvature)) {
            peaks.push_back(k);
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](size_t a, size_t b) {
        return std::abs(scan.points[a].curvature) > std::abs(scan.points[b].curvature);
    });
    for (auto k : peaks) {
        scan.peaks.push_back(scan.points[k].lambda);
    }
    return scan;
}

void write_amplitude_dump(const GroundStateResult &result, const HamiltonianParams &params,
                          const std::filesystem::path &path) {
    std::ofstream bin(path, std::ios::binary);
    if (!bin) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    for (const auto &a : result.state.amplitudes()) {
        double re = a.real();
        double im = a.imag();
        bin.write(reinterpret_cast<const char *>(&re), sizeof(re));
        bin.write(reinterpret_cast<const char *>(&im), sizeof(im));
    }
    if (!bin) {
        throw std::runtime_error("failed writing " + path.string());
    }
    auto meta_path = path;
    meta_path += ".txt";
    std::ofstream meta(meta_path);
    if (!meta) {
        throw std::runtime_error("cannot open " + meta_path.string() + " for writing");
    }
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "format complex128 little-endian interleaved re/im, site 1 = most significant bit\n"
                  "n %d\nJ1 %.17g\nJ2 %.17g\nh1 %.17g\nh2 %.17g\nenergy %.17g\nresidual %.6e\ngap_estimate %.6e\n"
                  "degenerate %d\n",
                  params.n, params.J1, params.J2, params.h1, params.h2, result.energy, result.residual,
                  result.gap_estimate, result.degenerate ? 1 : 0);
    meta << buf;
    if (!meta) {
        throw std::runtime_error("failed writing " + meta_path.string());
    }
}

StateVector read_amplitude_dump(const std::filesystem::path &path, int n) {
    std::ifstream bin(path, std::ios::binary);
    if (!bin) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<amp_t> amps(size_t{1} << n);
    for (auto &a : amps) {
        double re = 0;
        double im = 0;
        bin.read(reinterpret_cast<char *>(&re), sizeof(re));
        bin.read(reinterpret_cast<char *>(&im), sizeof(im));
        a = {re, im};
    }
    if (!bin) {
        throw std::runtime_error("truncated amplitude dump " + path.string());
    }
    return StateVector(n, std::move(amps));
}

}  // namespace qcnn
