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

#ifndef QCNN_HAMILTONIAN_HPP
#define QCNN_HAMILTONIAN_HPP

#include <string>
#include <vector>

#include "qcnn/pauli.hpp"

namespace qcnn {

/// H = -J1 sum C_j - J2 sum D_j - h1 sum X_j - h2 sum X_j X_{j+1} on an open chain.
struct HamiltonianParams {
    double J1 = 0;
    double J2 = 0;
    double h1 = 0;
    double h2 = 0;
    int n = 0;

    void validate() const;
    double max_abs_coupling() const;
    bool operator==(const HamiltonianParams &other) const = default;
};

struct HamiltonianTerm {
    double coefficient;
    PauliString op;
};

/// Nonzero terms of H, each with its signed coefficient.
std::vector<HamiltonianTerm> hamiltonian_terms(const HamiltonianParams &params);

std::string describe(const HamiltonianParams &params);

}  // namespace qcnn

#endif
