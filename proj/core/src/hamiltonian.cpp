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

#include "qcnn/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qcnn {

void HamiltonianParams::validate() const {
    if (n < 5 || n % 2 == 0) {
        throw std::invalid_argument("chain length N must be odd and >= 5, got " + std::to_string(n));
    }
    for (double c : {J1, J2, h1, h2}) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("Hamiltonian couplings must be finite");
        }
    }
}

double HamiltonianParams::max_abs_coupling() const {
    return std::max({std::abs(J1), std::abs(J2), std::abs(h1), std::abs(h2)});
}

std::vector<HamiltonianTerm> hamiltonian_terms(const HamiltonianParams &params) {
    params.validate();
    int n = params.n;
    std::vector<HamiltonianTerm> terms;
    if (params.J1 != 0) {
        for (int j = 2; j <= n - 1; j++) {
            terms.push_back({-params.J1, stabilizer(ClusterKind::ZXZ, j, n)});
        }
    }
    if (params.J2 != 0) {
        for (int j = 3; j <= n - 2; j++) {
            terms.push_back({-params.J2, stabilizer(ClusterKind::ZXXXZ, j, n)});
        }
    }
    if (params.h1 != 0) {
        for (int j = 1; j <= n; j++) {
            terms.push_back({-params.h1, PauliString::single(j, Pauli::X)});
        }
    }
    if (params.h2 != 0) {
        for (int j = 1; j <= n - 1; j++) {
            terms.push_back({-params.h2, PauliString::from_letters({{j, Pauli::X}, {j + 1, Pauli::X}})});
        }
    }
    return terms;
}

std::string describe(const HamiltonianParams &params) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "N=%d J1=%.17g J2=%.17g h1=%.17g h2=%.17g", params.n, params.J1, params.J2,
                  params.h1, params.h2);
    return buf;
}

}  // namespace qcnn
