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

#ifndef QCNN_PAULI_HPP
#define QCNN_PAULI_HPP

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace qcnn {

/// Single-qubit Pauli letter. Bit 0 is the X component and bit 1 the Z component.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

inline bool anticommute(Pauli a, Pauli b) {
    return a != Pauli::I && b != Pauli::I && a != b;
}

/// Whether the letter flips an X-basis measurement outcome (Z or Y).
inline bool flips_x_outcome(Pauli p) {
    return (static_cast<uint8_t>(p) & 2) != 0;
}

/// The two cluster phases: ZXZ stabilized by C_j, ZXXXZ stabilized by D_j.
enum class ClusterKind : uint8_t { ZXZ, ZXXXZ };

std::string_view cluster_kind_name(ClusterKind kind);
ClusterKind parse_cluster_kind(std::string_view text);

/// A multi-site Pauli operator i^phase * prod_j P_j with 1-based sites.
///
/// Letters are stored sparsely. Identity letters are never stored.
class PauliString {
   public:
    PauliString() = default;

    static PauliString single(int site, Pauli p);
    static PauliString from_letters(std::initializer_list<std::pair<int, Pauli>> letters, uint8_t phase = 0);
    /// Parses "+Z1 X2 Z3", "-i Y4", "+I".
    static PauliString parse(std::string_view text);

    uint8_t phase() const {
        return phase_;
    }
    const std::map<int, Pauli> &letters() const {
        return letters_;
    }
    Pauli at(int site) const;
    size_t weight() const {
        return letters_.size();
    }
    bool is_identity() const {
        return letters_.empty();
    }
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    int min_site() const;
    int max_site() const;

    /// Overwrites the letter at a site without any phase bookkeeping.
    void set(int site, Pauli p);
    void multiply_phase(uint8_t k) {
        phase_ = static_cast<uint8_t>((phase_ + k) & 3);
    }

    PauliString &operator*=(const PauliString &rhs);
    bool commutes_with(const PauliString &other) const;

    std::string str() const;
    bool operator==(const PauliString &other) const = default;

   private:
    uint8_t phase_ = 0;
    std::map<int, Pauli> letters_;
};

PauliString operator*(PauliString a, const PauliString &b);
PauliString pauli_mul(const PauliString &a, const PauliString &b);
std::ostream &operator<<(std::ostream &out, const PauliString &p);

/// String order parameter S_jk (ZXZ) or T_jk (ZXXXZ).
struct SopSpec {
    ClusterKind kind = ClusterKind::ZXZ;
    int j = 1;
    int k = 3;

    int length() const {
        return k - j + 1;
    }
    void validate() const;
};

PauliString sop_pauli(const SopSpec &spec);

/// C_j = Z_{j-1} X_j Z_{j+1} or D_j = Z_{j-2} X_{j-1} X_j X_{j+1} Z_{j+2} on an n-site chain.
PauliString stabilizer(ClusterKind kind, int j, int n);

/// P_e (even sites) or P_o (odd sites) as a product of X.
PauliString symmetry_generator(bool even_sites, int n);

}  // namespace qcnn

#endif
