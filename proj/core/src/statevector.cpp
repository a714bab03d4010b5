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

#include "qcnn/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcnn {

namespace {

void check_width(int n) {
    if (n < 1 || n > kMaxStateQubits) {
        throw std::invalid_argument("state width must be in [1, " + std::to_string(kMaxStateQubits) + "], got " +
                                    std::to_string(n));
    }
}

const amp_t kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

StateVector::StateVector(int n) : n_(n) {
    check_width(n);
    amps_.assign(size_t{1} << n, amp_t{0, 0});
    amps_[0] = 1;
}

StateVector::StateVector(int n, std::vector<amp_t> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_width(n);
    if (amps_.size() != (size_t{1} << n)) {
        throw std::invalid_argument("amplitude count does not match 2^n");
    }
}

StateVector StateVector::plus_state(int n) {
    check_width(n);
    double a = std::pow(2.0, -0.5 * n);
    return StateVector(n, std::vector<amp_t>(size_t{1} << n, amp_t{a, 0}));
}

StateVector StateVector::x_basis_state(const BitString &x) {
    int n = x.size();
    check_width(n);
    uint64_t mask = bits_to_index(x);
    double a = std::pow(2.0, -0.5 * n);
    std::vector<amp_t> amps(size_t{1} << n);
    for (uint64_t i = 0; i < amps.size(); i++) {
        amps[i] = (std::popcount(i & mask) & 1) ? -a : a;
    }
    return StateVector(n, std::move(amps));
}

double StateVector::norm() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::normalize() {
    double nrm = norm();
    if (nrm == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (auto &a : amps_) {
        a /= nrm;
    }
}

amp_t inner(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner product of states with different widths");
    }
    amp_t s = 0;
    for (size_t k = 0; k < a.dim(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b));
}

PauliMasks PauliMasks::from(const PauliString &p, int n) {
    PauliMasks m;
    m.phase = p.phase();
    for (const auto &[site, letter] : p.letters()) {
        if (site < 1 || site > n) {
            throw std::invalid_argument("Pauli site " + std::to_string(site) + " outside [1, " + std::to_string(n) +
                                        "]");
        }
        uint64_t b = StateVector::site_bit(site, n);
        if (letter == Pauli::X || letter == Pauli::Y) {
            m.x |= b;
        }
        if (letter == Pauli::Z || letter == Pauli::Y) {
            m.z |= b;
        }
        if (letter == Pauli::Y) {
            m.phase = static_cast<uint8_t>((m.phase + 1) & 3);
        }
    }
    return m;
}

void apply_pauli_inplace(const PauliString &p, StateVector &state) {
    auto m = PauliMasks::from(p, state.num_qubits());
    amp_t ph = kIPow[m.phase];
    auto amps = state.amplitudes();
    if (m.x == 0) {
        for (uint64_t i = 0; i < amps.size(); i++) {
            amps[i] *= (std::popcount(i & m.z) & 1) ? -ph : ph;
        }
        return;
    }
    // Pair up i and i ^ x, visiting each pair once from the member with the top x bit clear.
    uint64_t top = std::bit_floor(m.x);
    for (uint64_t i = 0; i < amps.size(); i++) {
        if (i & top) {
            continue;
        }
        uint64_t j = i ^ m.x;
        amp_t ai = amps[i];
        amp_t aj = amps[j];
        // P|i> = ph * (-1)^{|i & z|} |j>
        amps[j] = ((std::popcount(i & m.z) & 1) ? -ph : ph) * ai;
        amps[i] = ((std::popcount(j & m.z) & 1) ? -ph : ph) * aj;
    }
}

StateVector apply_pauli(const PauliString &p, const StateVector &state) {
    StateVector out = state;
    apply_pauli_inplace(p, out);
    return out;
}

amp_t expectation_complex(const PauliString &p, const StateVector &state) {
    auto m = PauliMasks::from(p, state.num_qubits());
    amp_t ph = kIPow[m.phase];
    amp_t s = 0;
    for (uint64_t i = 0; i < state.dim(); i++) {
        amp_t term = std::conj(state[i ^ m.x]) * state[i];
        s += (std::popcount(i & m.z) & 1) ? -term : term;
    }
    return ph * s;
}

double expectation(const PauliString &p, const StateVector &state) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expectation requires a Hermitian Pauli string (phase +-1), got " + p.str());
    }
    return expectation_complex(p, state).real();
}

void hadamard_all_inplace(StateVector &state) {
    auto amps = state.amplitudes();
    const double r = 1.0 / std::sqrt(2.0);
    for (size_t h = 1; h < amps.size(); h <<= 1) {
        for (size_t i = 0; i < amps.size(); i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                amp_t a = amps[j];
                amp_t b = amps[j + h];
                amps[j] = (a + b) * r;
                amps[j + h] = (a - b) * r;
            }
        }
    }
}

std::vector<double> x_basis_probabilities(const StateVector &state) {
    StateVector t = state;
    hadamard_all_inplace(t);
    std::vector<double> out(t.dim());
    for (size_t i = 0; i < t.dim(); i++) {
        out[i] = std::norm(t[i]);
    }
    return out;
}

BitString index_to_bits(uint64_t index, int n) {
    BitString out(n);
    for (int j = 1; j <= n; j++) {
        if (index & StateVector::site_bit(j, n)) {
            out.set(j, true);
        }
    }
    return out;
}

uint64_t bits_to_index(const BitString &bits) {
    int n = bits.size();
    uint64_t out = 0;
    for (int j = 1; j <= n; j++) {
        if (bits.get(j)) {
            out |= StateVector::site_bit(j, n);
        }
    }
    return out;
}

}  // namespace qcnn
