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

#include "qcnn/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace qcnn {

namespace {

struct ControlledSpec {
    Pauli control;
    Pauli target;
};

/// Control basis and target letter of a controlled-Pauli gate kind.
ControlledSpec controlled_spec(GateKind kind) {
    switch (kind) {
        case GateKind::CZ:
            return {Pauli::Z, Pauli::Z};
        case GateKind::CyY:
            return {Pauli::Y, Pauli::Y};
        case GateKind::CxZ:
        case GateKind::CxCxZ:
            return {Pauli::X, Pauli::Z};
        case GateKind::CxCxNOT:
            return {Pauli::X, Pauli::X};
        case GateKind::CxY:
        case GateKind::CxCxY:
            return {Pauli::X, Pauli::Y};
        default:
            throw std::logic_error("not a controlled gate");
    }
}

int pow3(int e) {
    int r = 1;
    for (int k = 0; k < e; k++) {
        r *= 3;
    }
    return r;
}

void check_operands(const Gate &g, int n) {
    for (int q : g.operands()) {
        if (q < 1 || q > n) {
            throw std::invalid_argument("gate " + std::string(gate_name(g.kind)) + " operand " + std::to_string(q) +
                                        " outside [1, " + std::to_string(n) + "]");
        }
    }
}

}  // namespace

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::CZ:
            return "CZ";
        case GateKind::CyY:
            return "CyY";
        case GateKind::Z:
            return "Z";
        case GateKind::H:
            return "H";
        case GateKind::CxZ:
            return "CxZ";
        case GateKind::CxCxZ:
            return "CxCxZ";
        case GateKind::CxCxNOT:
            return "CxCxNOT";
        case GateKind::CxY:
            return "CxY";
        case GateKind::CxCxY:
            return "CxCxY";
        case GateKind::SWAP:
            return "SWAP";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    for (auto k : {GateKind::CZ, GateKind::CyY, GateKind::Z, GateKind::H, GateKind::CxZ, GateKind::CxCxZ,
                   GateKind::CxCxNOT, GateKind::CxY, GateKind::CxCxY, GateKind::SWAP}) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::Z:
        case GateKind::H:
            return 1;
        case GateKind::CxCxZ:
        case GateKind::CxCxNOT:
        case GateKind::CxCxY:
            return 3;
        default:
            return 2;
    }
}

Gate Gate::make(GateKind kind, std::initializer_list<int> operands) {
    Gate g;
    g.kind = kind;
    if (static_cast<int>(operands.size()) != gate_arity(kind)) {
        throw std::invalid_argument("gate " + std::string(gate_name(kind)) + " takes " +
                                    std::to_string(gate_arity(kind)) + " operands");
    }
    std::copy(operands.begin(), operands.end(), g.q.begin());
    auto ops = g.operands();
    for (size_t a = 0; a < ops.size(); a++) {
        for (size_t b = a + 1; b < ops.size(); b++) {
            if (ops[a] == ops[b]) {
                throw std::invalid_argument("gate operands must be distinct");
            }
        }
    }
    return g;
}

bool Gate::is_clifford() const {
    return arity() <= 2;
}

std::string gates_to_text(const GateList &gates) {
    std::string out;
    for (const auto &g : gates) {
        out += gate_name(g.kind);
        for (int q : g.operands()) {
            out += ' ';
            out += std::to_string(q);
        }
        out += '\n';
    }
    return out;
}

GateList gates_from_text(std::string_view text) {
    GateList out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) {
            continue;
        }
        GateKind kind = parse_gate_kind(name);
        std::vector<int> ops;
        int q;
        while (ls >> q) {
            ops.push_back(q);
        }
        if (!ls.eof()) {
            throw std::invalid_argument("bad operand in gate line '" + line + "'");
        }
        Gate g;
        g.kind = kind;
        if (static_cast<int>(ops.size()) != gate_arity(kind)) {
            throw std::invalid_argument("wrong operand count in gate line '" + line + "'");
        }
        std::copy(ops.begin(), ops.end(), g.q.begin());
        out.push_back(g);
    }
    return out;
}

GateList truncate_to_chain(const GateList &gates, int n) {
    GateList out;
    for (const auto &g : gates) {
        auto ops = g.operands();
        if (std::all_of(ops.begin(), ops.end(), [&](int q) { return q >= 1 && q <= n; })) {
            out.push_back(g);
        }
    }
    return out;
}

GateList inverse(const GateList &gates) {
    return GateList(gates.rbegin(), gates.rend());
}

GateList disentangler(ClusterKind kind, int n) {
    if (n < 3) {
        throw std::invalid_argument("disentangler needs N >= 3");
    }
    GateList out;
    for (int parity = 1; parity <= 2; parity++) {
        for (int j = parity; j < n; j += 2) {
            out.push_back(Gate::make(GateKind::CZ, {j, j + 1}));
        }
    }
    if (kind == ClusterKind::ZXZ) {
        return out;
    }
    for (int parity = 1; parity <= 2; parity++) {
        for (int j = parity; j < n; j += 2) {
            out.push_back(Gate::make(GateKind::CyY, {j, j + 1}));
        }
    }
    // Without this layer every D_j maps onto -X_j.
    for (int j = 1; j <= n; j++) {
        out.push_back(Gate::make(GateKind::Z, {j}));
    }
    return out;
}

StateVector cluster_state(ClusterKind kind, int n) {
    return apply_gates(inverse(disentangler(kind, n)), StateVector::plus_state(n));
}

void apply_gate_inplace(const Gate &g, StateVector &state) {
    int n = state.num_qubits();
    check_operands(g, n);
    auto amps = state.amplitudes();
    switch (g.kind) {
        case GateKind::Z: {
            uint64_t b = StateVector::site_bit(g.q[0], n);
            for (uint64_t i = 0; i < amps.size(); i++) {
                if (i & b) {
                    amps[i] = -amps[i];
                }
            }
            return;
        }
        case GateKind::H: {
            uint64_t b = StateVector::site_bit(g.q[0], n);
            const double r = 1 / std::numbers::sqrt2;
            for (uint64_t i = 0; i < amps.size(); i++) {
                if (i & b) {
                    continue;
                }
                amp_t a0 = amps[i];
                amp_t a1 = amps[i | b];
                amps[i] = (a0 + a1) * r;
                amps[i | b] = (a0 - a1) * r;
            }
            return;
        }
        case GateKind::SWAP: {
            uint64_t a = StateVector::site_bit(g.q[0], n);
            uint64_t b = StateVector::site_bit(g.q[1], n);
            for (uint64_t i = 0; i < amps.size(); i++) {
                if ((i & a) && !(i & b)) {
                    std::swap(amps[i], amps[(i ^ a) | b]);
                }
            }
            return;
        }
        case GateKind::CZ: {
            uint64_t m = StateVector::site_bit(g.q[0], n) | StateVector::site_bit(g.q[1], n);
            for (uint64_t i = 0; i < amps.size(); i++) {
                if ((i & m) == m) {
                    amps[i] = -amps[i];
                }
            }
            return;
        }
        default:
            break;
    }
    auto spec = controlled_spec(g.kind);
    auto ops = g.operands();
    int target = ops.back();
    // w = prod_c P_c (I - sigma_t) v, then v -= w.
    StateVector w = apply_pauli(PauliString::single(target, spec.target), state);
    for (size_t k = 0; k < w.dim(); k++) {
        w[k] = state[k] - w[k];
    }
    for (size_t c = 0; c + 1 < ops.size(); c++) {
        StateVector sw = apply_pauli(PauliString::single(ops[c], spec.control), w);
        for (size_t k = 0; k < w.dim(); k++) {
            w[k] = 0.5 * (w[k] - sw[k]);
        }
    }
    for (size_t k = 0; k < w.dim(); k++) {
        amps[k] -= w[k];
    }
}

void apply_gates_inplace(const GateList &gates, StateVector &state) {
    for (const auto &g : gates) {
        apply_gate_inplace(g, state);
    }
}

StateVector apply_gates(const GateList &gates, const StateVector &state) {
    StateVector out = state;
    apply_gates_inplace(gates, out);
    return out;
}

PauliString conjugate_by_gate(const PauliString &p, const Gate &g) {
    switch (g.kind) {
        case GateKind::Z: {
            Pauli a = p.at(g.q[0]);
            PauliString out = p;
            if (a == Pauli::X || a == Pauli::Y) {
                out.multiply_phase(2);
            }
            return out;
        }
        case GateKind::H: {
            Pauli a = p.at(g.q[0]);
            PauliString out = p;
            if (a == Pauli::X) {
                out.set(g.q[0], Pauli::Z);
            } else if (a == Pauli::Z) {
                out.set(g.q[0], Pauli::X);
            } else if (a == Pauli::Y) {
                out.multiply_phase(2);
            }
            return out;
        }
        case GateKind::SWAP: {
            Pauli a = p.at(g.q[0]);
            Pauli b = p.at(g.q[1]);
            PauliString out = p;
            out.set(g.q[0], b);
            out.set(g.q[1], a);
            return out;
        }
        default:
            break;
    }
    if (!g.is_clifford()) {
        throw std::invalid_argument("Clifford conjugation through non-Clifford gate " + std::string(gate_name(g.kind)));
    }
    auto spec = controlled_spec(g.kind);
    int c = g.q[0];
    int t = g.q[1];
    bool anti_a = anticommute(p.at(c), spec.control);
    bool anti_b = anticommute(p.at(t), spec.target);
    if (!anti_a && !anti_b) {
        return p;
    }
    auto A = PauliString::single(c, spec.control);
    auto B = PauliString::single(t, spec.target);
    if (anti_a && !anti_b) {
        return p * B;
    }
    if (!anti_a && anti_b) {
        return p * A;
    }
    PauliString out = p * A * B;
    out.multiply_phase(2);
    return out;
}

PauliString conjugate_forward(const PauliString &p, const GateList &gates) {
    PauliString out = p;
    for (const auto &g : gates) {
        out = conjugate_by_gate(out, g);
    }
    return out;
}

PauliString conjugate_backward(const PauliString &p, const GateList &gates) {
    PauliString out = p;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out = conjugate_by_gate(out, *it);
    }
    return out;
}

DiscreteSampler::DiscreteSampler(std::span<const double> probabilities) {
    cdf_.reserve(probabilities.size());
    double acc = 0;
    for (double p : probabilities) {
        acc += p;
        cdf_.push_back(acc);
    }
    if (!(acc > 0)) {
        throw std::invalid_argument("DiscreteSampler needs positive total probability");
    }
    for (auto &c : cdf_) {
        c /= acc;
    }
    cdf_.back() = 1.0;
}

uint64_t DiscreteSampler::sample(ShotRng &rng) const {
    double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<uint64_t>(std::min<size_t>(static_cast<size_t>(it - cdf_.begin()), cdf_.size() - 1));
}

std::vector<BitString> sample_x_basis(const StateVector &state, int shots, ShotRng &rng) {
    if (shots < 1) {
        throw std::invalid_argument("sample_x_basis needs shots >= 1");
    }
    auto probs = x_basis_probabilities(state);
    DiscreteSampler sampler(probs);
    std::vector<BitString> out;
    out.reserve(static_cast<size_t>(shots));
    for (int s = 0; s < shots; s++) {
        out.push_back(index_to_bits(sampler.sample(rng), state.num_qubits()));
    }
    return out;
}

std::string_view layer_kind_name(LayerKind kind) {
    switch (kind) {
        case LayerKind::Xcorr:
            return "Xcorr";
        case LayerKind::Zcorr:
            return "Zcorr";
        case LayerKind::Ccorr:
            return "Ccorr";
    }
    return "?";
}

LayerKind parse_layer_kind(std::string_view text) {
    if (text == "Xcorr" || text == "x") {
        return LayerKind::Xcorr;
    }
    if (text == "Zcorr" || text == "z") {
        return LayerKind::Zcorr;
    }
    if (text == "Ccorr" || text == "c") {
        return LayerKind::Ccorr;
    }
    throw std::invalid_argument("unknown layer kind '" + std::string(text) + "'");
}

GateList qec_unitary(ClusterKind phase, LayerKind layer, int f, int center) {
    if (f < 1) {
        throw std::invalid_argument("QEC layer index f must be >= 1");
    }
    int s = pow3(f - 1);
    int p = center;
    auto correct = [&](int near, int far, GateKind single, GateKind pair) {
        // x_p ^= x_{p-near}(1 ^ x_{p-far}) ^ x_{p+near}(1 ^ x_{p+far})
        return GateList{
            Gate::make(single, {p - near * s, p}),
            Gate::make(pair, {p - far * s, p - near * s, p}),
            Gate::make(single, {p + near * s, p}),
            Gate::make(pair, {p + near * s, p + far * s, p}),
        };
    };
    switch (layer) {
        case LayerKind::Zcorr:
            // Neighbours absorb the survivor, then the survivor becomes the majority.
            return GateList{
                Gate::make(GateKind::CxZ, {p, p - 7 * s}),
                Gate::make(GateKind::CxZ, {p, p + 7 * s}),
                Gate::make(GateKind::CxCxZ, {p - 7 * s, p + 7 * s, p}),
            };
        case LayerKind::Xcorr:
            if (phase == ClusterKind::ZXZ) {
                return correct(2, 4, GateKind::CxZ, GateKind::CxCxZ);
            }
            return correct(4, 8, GateKind::CxY, GateKind::CxCxY);
        case LayerKind::Ccorr:
            if (phase == ClusterKind::ZXXXZ) {
                return correct(2, 4, GateKind::CxY, GateKind::CxCxY);
            }
            throw std::invalid_argument("Ccorr layers exist only for the ZXXXZ disentangler");
    }
    throw std::invalid_argument("unknown layer kind");
}

std::vector<int> light_cone(const GateList &gates) {
    std::vector<int> out;
    for (const auto &g : gates) {
        for (int q : g.operands()) {
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PermutationAction extract_permutation(const GateList &gates, std::span<const int> window) {
    int w = static_cast<int>(window.size());
    if (w < 1 || w > 16) {
        throw std::invalid_argument("permutation window must have 1..16 sites");
    }
    std::unordered_map<int, int> local;
    for (int k = 0; k < w; k++) {
        if (!local.emplace(window[static_cast<size_t>(k)], k + 1).second) {
            throw std::invalid_argument("permutation window sites must be distinct");
        }
    }
    GateList mapped;
    for (const auto &g : gates) {
        Gate m = g;
        for (int a = 0; a < g.arity(); a++) {
            auto it = local.find(g.q[static_cast<size_t>(a)]);
            if (it == local.end()) {
                throw std::invalid_argument("gate operand " + std::to_string(g.q[static_cast<size_t>(a)]) +
                                            " outside the permutation window");
            }
            m.q[static_cast<size_t>(a)] = it->second;
        }
        mapped.push_back(m);
    }
    auto pattern_to_index = [&](uint32_t x) {
        uint64_t idx = 0;
        for (int k = 0; k < w; k++) {
            if ((x >> k) & 1) {
                idx |= StateVector::site_bit(k + 1, w);
            }
        }
        return idx;
    };
    auto index_to_pattern = [&](uint64_t idx) {
        uint32_t x = 0;
        for (int k = 0; k < w; k++) {
            if (idx & StateVector::site_bit(k + 1, w)) {
                x |= uint32_t{1} << k;
            }
        }
        return x;
    };

    PermutationAction out;
    out.width = w;
    size_t dim = size_t{1} << w;
    out.table.resize(dim);
    out.phases.resize(dim);
    std::vector<bool> seen(dim, false);
    for (uint32_t x = 0; x < dim; x++) {
        StateVector st(w);
        st[0] = 0;
        st[pattern_to_index(x)] = 1;
        hadamard_all_inplace(st);
        apply_gates_inplace(mapped, st);
        hadamard_all_inplace(st);
        size_t best = 0;
        for (size_t k = 1; k < dim; k++) {
            if (std::norm(st[k]) > std::norm(st[best])) {
                best = k;
            }
        }
        amp_t a = st[best];
        double rest = 0;
        for (size_t k = 0; k < dim; k++) {
            if (k != best) {
                rest += std::norm(st[k]);
            }
        }
        double angle = std::arg(a) / (std::numbers::pi / 2);
        int quarter = static_cast<int>(std::lround(angle));
        uint8_t phase = static_cast<uint8_t>(((quarter % 4) + 4) % 4);
        amp_t expected = std::polar(1.0, phase * std::numbers::pi / 2);
        if (rest > 1e-20 || std::abs(a - expected) > 1e-10) {
            throw EqCondViolated("circuit does not map X-basis state " + std::to_string(x) +
                                 " onto a single X-basis state");
        }
        uint32_t y = index_to_pattern(best);
        if (seen[y]) {
            throw EqCondViolated("X-basis action is not a bijection");
        }
        seen[y] = true;
        out.table[x] = y;
        out.phases[x] = phase;
    }
    return out;
}

}  // namespace qcnn
