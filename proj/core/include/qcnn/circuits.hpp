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

#ifndef QCNN_CIRCUITS_HPP
#define QCNN_CIRCUITS_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/bits.hpp"
#include "qcnn/pauli.hpp"
#include "qcnn/rng.hpp"
#include "qcnn/statevector.hpp"

namespace qcnn {

/// Raised when a circuit does not map X-basis states onto X-basis states.
class EqCondViolated : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Gate kinds. Controlled gates are multi-controlled Paulis
///   U = I - prod_c [(I - sigma_c)/2] (I - sigma_t)
/// where the subscript letter names the control basis (C_x = X basis) and the
/// final letter names the target Pauli. CZ is C_z Z and CxCxNOT is C_xC_x X.
enum class GateKind : uint8_t { CZ, CyY, Z, H, CxZ, CxCxZ, CxCxNOT, CxY, CxCxY, SWAP };

std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);
int gate_arity(GateKind kind);

/// A gate with operands listed controls first, target last.
struct Gate {
    GateKind kind = GateKind::Z;
    std::array<int, 3> q{};

    static Gate make(GateKind kind, std::initializer_list<int> operands);
    int arity() const {
        return gate_arity(kind);
    }
    std::span<const int> operands() const {
        return {q.data(), static_cast<size_t>(arity())};
    }
    bool is_clifford() const;
    bool operator==(const Gate &other) const = default;
};

using GateList = std::vector<Gate>;

/// One gate per line, e.g. "CZ 1 2" or "CxCxZ 3 5 4".
std::string gates_to_text(const GateList &gates);
GateList gates_from_text(std::string_view text);

/// Drops gates with any operand outside [1, n].
GateList truncate_to_chain(const GateList &gates, int n);

/// All gates here are Hermitian involutions, so the inverse is the reversed list.
GateList inverse(const GateList &gates);

/// The disentangler W mapping the cluster state of the given kind onto |+>^n.
GateList disentangler(ClusterKind kind, int n);

/// W^dagger |+>^n.
StateVector cluster_state(ClusterKind kind, int n);

void apply_gate_inplace(const Gate &gate, StateVector &state);
void apply_gates_inplace(const GateList &gates, StateVector &state);
StateVector apply_gates(const GateList &gates, const StateVector &state);

/// Clifford conjugation. W = g_n ... g_1 for the list [g_1, ..., g_n].
PauliString conjugate_forward(const PauliString &p, const GateList &gates);  // W p W^dagger
PauliString conjugate_backward(const PauliString &p, const GateList &gates);  // W^dagger p W
PauliString conjugate_by_gate(const PauliString &p, const Gate &gate);

/// Samples measurement outcomes of every qubit in the X basis. Bit 1 means X = -1.
std::vector<BitString> sample_x_basis(const StateVector &state, int shots, ShotRng &rng);

/// Inverse-CDF sampler over a fixed discrete distribution.
class DiscreteSampler {
   public:
    explicit DiscreteSampler(std::span<const double> probabilities);
    uint64_t sample(ShotRng &rng) const;

   private:
    std::vector<double> cdf_;
};

enum class LayerKind : uint8_t { Xcorr, Zcorr, Ccorr };
std::string_view layer_kind_name(LayerKind kind);
LayerKind parse_layer_kind(std::string_view text);

/// The tilde-form QEC unitary acting between X-basis measurements, for one
/// survivor at `center`, with offsets scaled by 3^(f-1). Sites may be <= 0.
GateList qec_unitary(ClusterKind phase, LayerKind layer, int f, int center);

/// Sorted distinct operand sites.
std::vector<int> light_cone(const GateList &gates);

/// Action of a circuit on X-basis labels: bit k of a pattern is window[k].
struct PermutationAction {
    int width = 0;
    std::vector<uint32_t> table;
    /// Image phase as an exponent of i.
    std::vector<uint8_t> phases;
};

PermutationAction extract_permutation(const GateList &gates, std::span<const int> window);

}  // namespace qcnn

#endif
