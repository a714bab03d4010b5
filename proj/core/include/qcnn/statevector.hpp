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

#ifndef QCNN_STATEVECTOR_HPP
#define QCNN_STATEVECTOR_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcnn/bits.hpp"
#include "qcnn/pauli.hpp"

namespace qcnn {

inline constexpr int kMaxStateQubits = 20;

using amp_t = std::complex<double>;

/// Dense state over 2^n computational basis states.
///
/// Site 1 is the most significant bit: site j sits at bit (n - j) of the index.
class StateVector {
   public:
    StateVector() = default;
    /// |0...0>.
    explicit StateVector(int n);
    StateVector(int n, std::vector<amp_t> amplitudes);

    static StateVector plus_state(int n);
    /// Product state in the X basis: site j is |-> when x.get(j).
    static StateVector x_basis_state(const BitString &x);

    int num_qubits() const {
        return n_;
    }
    size_t dim() const {
        return amps_.size();
    }
    amp_t &operator[](size_t k) {
        return amps_[k];
    }
    const amp_t &operator[](size_t k) const {
        return amps_[k];
    }
    std::span<amp_t> amplitudes() {
        return amps_;
    }
    std::span<const amp_t> amplitudes() const {
        return amps_;
    }

    static uint64_t site_bit(int site, int n) {
        return uint64_t{1} << (n - site);
    }

    double norm() const;
    void normalize();
    bool operator==(const StateVector &other) const = default;

   private:
    int n_ = 0;
    std::vector<amp_t> amps_;
};

amp_t inner(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const StateVector &b);

/// Bit masks of a Pauli string on an n-qubit register.
struct PauliMasks {
    uint64_t x = 0;  // X or Y sites
    uint64_t z = 0;  // Z or Y sites
    uint8_t phase = 0;  // i-exponent including the i per Y
    static PauliMasks from(const PauliString &p, int n);
};

void apply_pauli_inplace(const PauliString &p, StateVector &state);
StateVector apply_pauli(const PauliString &p, const StateVector &state);

/// <state|p|state> for Hermitian p (phase +-1).
double expectation(const PauliString &p, const StateVector &state);
amp_t expectation_complex(const PauliString &p, const StateVector &state);

/// In-place normalized Walsh-Hadamard transform (H on every qubit).
void hadamard_all_inplace(StateVector &state);

/// P_x = |<x|_X state>|^2, indexed with the same bit convention as amplitudes.
std::vector<double> x_basis_probabilities(const StateVector &state);

/// Basis index (site 1 = MSB) to BitString and back.
BitString index_to_bits(uint64_t index, int n);
uint64_t bits_to_index(const BitString &bits);

}  // namespace qcnn

#endif
