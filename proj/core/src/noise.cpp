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

#include "qcnn/noise.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qcnn {

void ChannelSpec::validate() const {
    for (double p : {px, py, pz}) {
        if (!std::isfinite(p) || p < 0) {
            throw std::invalid_argument("channel probabilities must be finite and non-negative");
        }
    }
    if (p_error() > 1 + 1e-12) {
        throw std::invalid_argument("channel probabilities must sum to at most 1");
    }
}

ChannelSpec ChannelSpec::parse(std::string_view text) {
    ChannelSpec ch;
    auto parse_number = [&](std::string_view s) {
        std::string tmp(s);
        char *end = nullptr;
        double v = std::strtod(tmp.c_str(), &end);
        if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
            throw std::invalid_argument("bad probability '" + tmp + "' in channel spec '" + std::string(text) + "'");
        }
        return v;
    };
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("channel spec items look like 'x:0.1', got '" + std::string(item) + "'");
        }
        auto key = item.substr(0, colon);
        double v = parse_number(item.substr(colon + 1));
        if (key == "x" || key == "X") {
            ch.px = v;
        } else if (key == "y" || key == "Y") {
            ch.py = v;
        } else if (key == "z" || key == "Z") {
            ch.pz = v;
        } else if (key == "depol") {
            ch.px = ch.py = ch.pz = v;
        } else {
            throw std::invalid_argument("unknown channel key '" + std::string(key) + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    ch.validate();
    return ch;
}

std::string ChannelSpec::str() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "x:%.17g,y:%.17g,z:%.17g", px, py, pz);
    return buf;
}

PauliString ErrorConfig::as_pauli() const {
    PauliString out;
    for (const auto &e : events) {
        out.set(e.site, e.letter);
    }
    return out;
}

void ErrorConfig::validate() const {
    int last = 0;
    for (const auto &e : events) {
        if (e.site < 1 || e.site > n) {
            throw std::invalid_argument("error event site " + std::to_string(e.site) + " outside [1, " +
                                        std::to_string(n) + "]");
        }
        if (e.site <= last) {
            throw std::invalid_argument("error events must be sorted with at most one per site");
        }
        if (e.letter == Pauli::I) {
            throw std::invalid_argument("error events must be X, Y or Z");
        }
        last = e.site;
    }
}

ErrorConfig sample_error_config(const ChannelSpec &ch, int n, ShotRng &rng) {
    ErrorConfig cfg;
    cfg.n = n;
    double p = ch.p_error();
    if (p <= 0) {
        return cfg;
    }
    auto draw_letter = [&]() {
        double u = rng.uniform() * p;
        if (u < ch.px) {
            return Pauli::X;
        }
        if (u < ch.px + ch.py) {
            return Pauli::Y;
        }
        return Pauli::Z;
    };
    if (p >= 1) {
        for (int j = 1; j <= n; j++) {
            cfg.events.push_back({j, draw_letter()});
        }
        return cfg;
    }
    double log_q = std::log1p(-p);
    double site = 0;
    while (true) {
        double u = rng.uniform();
        // Number of error-free sites before the next event.
        site += std::floor(std::log1p(-u) / log_q) + 1;
        if (site > n) {
            break;
        }
        cfg.events.push_back({static_cast<int>(site), draw_letter()});
    }
    return cfg;
}

StateVector apply_error_config(const ErrorConfig &cfg, const StateVector &state) {
    cfg.validate();
    if (cfg.n != state.num_qubits()) {
        throw std::invalid_argument("error config width does not match the state");
    }
    if (cfg.events.empty()) {
        return state;
    }
    return apply_pauli(cfg.as_pauli(), state);
}

double sop_attenuation(const ChannelSpec &ch, const SopSpec &spec) {
    ch.validate();
    spec.validate();
    if (spec.kind != ClusterKind::ZXZ) {
        throw UnsupportedCaseError("closed-form attenuation is derived for ZXZ string order parameters only");
    }
    if (ch.py == 0 && ch.pz == 0) {
        return (1 - 2 * ch.px) * (1 - 2 * ch.px);
    }
    if (ch.px == 0 && ch.py == 0) {
        return std::pow(1 - 2 * ch.pz, (spec.length() - 1) / 2);
    }
    throw UnsupportedCaseError("closed-form attenuation covers pure-X or pure-Z channels; use a Monte-Carlo estimate for " +
                               ch.str());
}

}  // namespace qcnn
