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


// Dense-matrix reference implementations used only by tests. Everything here is
// built from Kronecker products of 2x2 blocks, independent of the library kernels.

#ifndef QCNN_TESTS_DENSE_HPP
#define QCNN_TESTS_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "qcnn/circuits.hpp"
#include "qcnn/pauli.hpp"
#include "qcnn/statevector.hpp"

namespace qcnn::oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli2(Pauli p) {
    Mat m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

inline Mat hadamard2() {
    Mat m(2, 2);
    double r = 1 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Site 1 is the leftmost (most significant) factor.
inline Mat embed(const std::vector<std::pair<int, Mat>> &factors, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int site = 1; site <= n; site++) {
        Mat m = Mat::Identity(2, 2);
        for (const auto &[s, f] : factors) {
            if (s == site) {
                m = f;
            }
        }
        out = kron(out, m);
    }
    return out;
}

inline Mat dense(const PauliString &p, int n) {
    std::vector<std::pair<int, Mat>> factors;
    for (const auto &[site, letter] : p.letters()) {
        factors.emplace_back(site, pauli2(letter));
    }
    static const cd kPhase[4] = {1, cd(0, 1), -1, cd(0, -1)};
    return kPhase[p.phase()] * embed(factors, n);
}

/// Multi-controlled Pauli from its defining projector identity.
inline Mat dense_gate(const Gate &g, int n) {
    Mat id = Mat::Identity(1 << n, 1 << n);
    auto ops = g.operands();
    auto controlled = [&](std::vector<Pauli> controls, Pauli target) {
        Mat proj = id;
        for (size_t k = 0; k < controls.size(); k++) {
            proj = proj * (0.5 * (id - embed({{ops[k], pauli2(controls[k])}}, n)));
        }
        return Mat(id - proj * (id - embed({{ops.back(), pauli2(target)}}, n)));
    };
    switch (g.kind) {
        case GateKind::CZ:
            return controlled({Pauli::Z}, Pauli::Z);
        case GateKind::CyY:
            return controlled({Pauli::Y}, Pauli::Y);
        case GateKind::Z:
            return embed({{ops[0], pauli2(Pauli::Z)}}, n);
        case GateKind::H:
            return embed({{ops[0], hadamard2()}}, n);
        case GateKind::CxZ:
            return controlled({Pauli::X}, Pauli::Z);
        case GateKind::CxCxZ:
            return controlled({Pauli::X, Pauli::X}, Pauli::Z);
        case GateKind::CxCxNOT:
            return controlled({Pauli::X, Pauli::X}, Pauli::X);
        case GateKind::CxY:
            return controlled({Pauli::X}, Pauli::Y);
        case GateKind::CxCxY:
            return controlled({Pauli::X, Pauli::X}, Pauli::Y);
        case GateKind::SWAP: {
            Mat out = Mat::Zero(1 << n, 1 << n);
            for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
                out += 0.5 * embed({{ops[0], pauli2(p)}, {ops[1], pauli2(p)}}, n);
            }
            return out;
        }
    }
    return id;
}

/// W = g_last ... g_first.
inline Mat dense_circuit(const GateList &gates, int n) {
    Mat w = Mat::Identity(1 << n, 1 << n);
    for (const auto &g : gates) {
        w = dense_gate(g, n) * w;
    }
    return w;
}

inline Vec to_vec(const StateVector &s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (size_t k = 0; k < s.dim(); k++) {
        v(static_cast<Eigen::Index>(k)) = s[k];
    }
    return v;
}

/// -J1 sum ZXZ - J2 sum ZXXXZ - h1 sum X - h2 sum XX on an open chain.
inline Mat dense_hamiltonian(double j1, double j2, double h1, double h2, int n) {
    Mat h = Mat::Zero(1 << n, 1 << n);
    Mat x = pauli2(Pauli::X);
    Mat z = pauli2(Pauli::Z);
    for (int j = 2; j <= n - 1; j++) {
        h -= j1 * embed({{j - 1, z}, {j, x}, {j + 1, z}}, n);
    }
    for (int j = 3; j <= n - 2; j++) {
        h -= j2 * embed({{j - 2, z}, {j - 1, x}, {j, x}, {j + 1, x}, {j + 2, z}}, n);
    }
    for (int j = 1; j <= n; j++) {
        h -= h1 * embed({{j, x}}, n);
    }
    for (int j = 1; j < n; j++) {
        h -= h2 * embed({{j, x}, {j + 1, x}}, n);
    }
    return h;
}

inline StateVector random_state(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<amp_t> amps(size_t{1} << n);
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
    }
    StateVector s(n, amps);
    s.normalize();
    return s;
}

}  // namespace qcnn::oracle

#endif
