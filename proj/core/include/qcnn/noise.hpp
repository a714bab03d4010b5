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

#ifndef QCNN_NOISE_HPP
#define QCNN_NOISE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/pauli.hpp"
#include "qcnn/rng.hpp"
#include "qcnn/statevector.hpp"

namespace qcnn {

class UnsupportedCaseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Independent single-qubit Pauli channel.
struct ChannelSpec {
    double px = 0;
    double py = 0;
    double pz = 0;

    double p_error() const {
        return px + py + pz;
    }
    double p_identity() const {
        return 1 - p_error();
    }
    void validate() const;

    /// "x:0.1,y:0.1,z:0.1" (missing letters are 0) or "depol:0.015".
    static ChannelSpec parse(std::string_view text);
    std::string str() const;
    bool operator==(const ChannelSpec &other) const = default;
};

struct ErrorEvent {
    int site;
    Pauli letter;
    bool operator==(const ErrorEvent &other) const = default;
};

/// One Kraus branch: sorted events, at most one per site.
struct ErrorConfig {
    int n = 0;
    std::vector<ErrorEvent> events;

    PauliString as_pauli() const;
    void validate() const;
};

/// Each site independently draws I/X/Y/Z. Uses geometric gap skipping so cost scales with the event count.
ErrorConfig sample_error_config(const ChannelSpec &ch, int n, ShotRng &rng);

StateVector apply_error_config(const ErrorConfig &cfg, const StateVector &state);

/// Closed-form <S_jk> on the noisy ZXZ cluster state for pure-X or pure-Z noise.
double sop_attenuation(const ChannelSpec &ch, const SopSpec &spec);

}  // namespace qcnn

#endif
