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

#include "qcnn/pauli.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace qcnn {

namespace {

/// Product of two letters as (result, i-exponent).
std::pair<Pauli, uint8_t> mul_letters(Pauli a, Pauli b) {
    if (a == Pauli::I) {
        return {b, 0};
    }
    if (b == Pauli::I || a == b) {
        return {a == b ? Pauli::I : a, 0};
    }
    auto c = static_cast<Pauli>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
    bool cyclic = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) || (a == Pauli::Z && b == Pauli::X);
    return {c, cyclic ? uint8_t{1} : uint8_t{3}};
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
}

std::string_view cluster_kind_name(ClusterKind kind) {
    return kind == ClusterKind::ZXZ ? "zxz" : "zxxxz";
}

ClusterKind parse_cluster_kind(std::string_view text) {
    if (text == "zxz" || text == "ZXZ") {
        return ClusterKind::ZXZ;
    }
    if (text == "zxxxz" || text == "ZXXXZ") {
        return ClusterKind::ZXXXZ;
    }
    throw std::invalid_argument("unknown cluster kind '" + std::string(text) + "' (expected zxz or zxxxz)");
}

PauliString PauliString::single(int site, Pauli p) {
    PauliString out;
    out.set(site, p);
    return out;
}

PauliString PauliString::from_letters(std::initializer_list<std::pair<int, Pauli>> letters, uint8_t phase) {
    PauliString out;
    out.phase_ = static_cast<uint8_t>(phase & 3);
    for (const auto &[site, p] : letters) {
        out *= single(site, p);
    }
    return out;
}

PauliString PauliString::parse(std::string_view text) {
    PauliString out;
    size_t k = 0;
    auto skip_ws = [&]() {
        while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) {
            k++;
        }
    };
    skip_ws();
    uint8_t phase = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        if (text[k] == '-') {
            phase = 2;
        }
        k++;
        if (k < text.size() && text[k] == 'i') {
            phase = static_cast<uint8_t>((phase + 1) & 3);
            k++;
        }
    }
    while (true) {
        skip_ws();
        if (k >= text.size()) {
            break;
        }
        Pauli p = pauli_from_char(text[k]);
        k++;
        if (p == Pauli::I && (k >= text.size() || !std::isdigit(static_cast<unsigned char>(text[k])))) {
            continue;
        }
        size_t start = k;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
            k++;
        }
        if (start == k) {
            throw std::invalid_argument("Pauli letter without site index in '" + std::string(text) + "'");
        }
        int site = std::stoi(std::string(text.substr(start, k - start)));
        out *= single(site, p);
    }
    out.multiply_phase(phase);
    return out;
}

Pauli PauliString::at(int site) const {
    auto it = letters_.find(site);
    return it == letters_.end() ? Pauli::I : it->second;
}

int PauliString::min_site() const {
    return letters_.empty() ? 0 : letters_.begin()->first;
}

int PauliString::max_site() const {
    return letters_.empty() ? 0 : letters_.rbegin()->first;
}

void PauliString::set(int site, Pauli p) {
    if (site < 1) {
        throw std::invalid_argument("Pauli site index must be >= 1, got " + std::to_string(site));
    }
    if (p == Pauli::I) {
        letters_.erase(site);
    } else {
        letters_[site] = p;
    }
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    phase_ = static_cast<uint8_t>((phase_ + rhs.phase_) & 3);
    for (const auto &[site, b] : rhs.letters_) {
        auto it = letters_.find(site);
        if (it == letters_.end()) {
            letters_.emplace(site, b);
            continue;
        }
        auto [c, k] = mul_letters(it->second, b);
        phase_ = static_cast<uint8_t>((phase_ + k) & 3);
        if (c == Pauli::I) {
            letters_.erase(it);
        } else {
            it->second = c;
        }
    }
    return *this;
}

bool PauliString::commutes_with(const PauliString &other) const {
    const auto &small = letters_.size() <= other.letters_.size() ? letters_ : other.letters_;
    const auto &big = letters_.size() <= other.letters_.size() ? other.letters_ : letters_;
    bool odd = false;
    for (const auto &[site, p] : small) {
        auto it = big.find(site);
        if (it != big.end() && anticommute(p, it->second)) {
            odd = !odd;
        }
    }
    return !odd;
}

std::string PauliString::str() const {
    static const char *kPhase[] = {"+", "+i", "-", "-i"};
    std::string out = kPhase[phase_];
    if (letters_.empty()) {
        return out + "I";
    }
    bool first = true;
    for (const auto &[site, p] : letters_) {
        if (!first) {
            out += ' ';
        }
        if (first && (phase_ & 1)) {
            out += ' ';
        }
        first = false;
        out += pauli_char(p);
        out += std::to_string(site);
    }
    return out;
}

PauliString operator*(PauliString a, const PauliString &b) {
    a *= b;
    return a;
}

PauliString pauli_mul(const PauliString &a, const PauliString &b) {
    return a * b;
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

void SopSpec::validate() const {
    if (j < 1) {
        throw std::invalid_argument("SOP left endpoint must be >= 1");
    }
    int span = k - j;
    if (span <= 0 || span % 2 != 0) {
        throw std::invalid_argument("SOP span k - j must be even and positive, got " + std::to_string(span));
    }
    if (kind == ClusterKind::ZXXXZ && span < 6) {
        throw std::invalid_argument("ZXXXZ SOP span k - j must be >= 6, got " + std::to_string(span));
    }
}

PauliString sop_pauli(const SopSpec &spec) {
    spec.validate();
    int j = spec.j;
    int k = spec.k;
    PauliString out;
    out.set(j, Pauli::Z);
    out.set(k, Pauli::Z);
    if (spec.kind == ClusterKind::ZXZ) {
        for (int s = j + 1; s < k; s += 2) {
            out.set(s, Pauli::X);
        }
        return out;
    }
    out.set(j + 1, Pauli::X);
    out.set(j + 2, Pauli::Y);
    for (int s = j + 4; s <= k - 4; s += 2) {
        out.set(s, Pauli::X);
    }
    out.set(k - 2, Pauli::Y);
    out.set(k - 1, Pauli::X);
    return out;
}

PauliString stabilizer(ClusterKind kind, int j, int n) {
    if (kind == ClusterKind::ZXZ) {
        if (j < 2 || j > n - 1) {
            throw std::invalid_argument("C_j requires 2 <= j <= N-1, got j=" + std::to_string(j));
        }
        return PauliString::from_letters({{j - 1, Pauli::Z}, {j, Pauli::X}, {j + 1, Pauli::Z}});
    }
    if (j < 3 || j > n - 2) {
        throw std::invalid_argument("D_j requires 3 <= j <= N-2, got j=" + std::to_string(j));
    }
    return PauliString::from_letters(
        {{j - 2, Pauli::Z}, {j - 1, Pauli::X}, {j, Pauli::X}, {j + 1, Pauli::X}, {j + 2, Pauli::Z}});
}

PauliString symmetry_generator(bool even_sites, int n) {
    PauliString out;
    for (int j = even_sites ? 2 : 1; j <= n; j += 2) {
        out.set(j, Pauli::X);
    }
    return out;
}

}  // namespace qcnn
