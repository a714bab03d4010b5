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


#ifndef QCNN_HEISENBERG_HPP
#define QCNN_HEISENBERG_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcnn/decoder.hpp"
#include "qcnn/pauli.hpp"
#include "qcnn/statevector.hpp"

namespace qcnn {

using BigInt = boost::multiprecision::cpp_int;

/// Exact num / 2^exp with overflow detection.
class Dyadic {
   public:
    Dyadic() = default;
    Dyadic(int64_t num, int exp = 0);

    int64_t num() const {
        return num_;
    }
    int exp() const {
        return exp_;
    }
    bool is_zero() const {
        return num_ == 0;
    }
    double to_double() const {
        return std::ldexp(static_cast<double>(num_), -exp_);
    }
    std::string str() const;

    Dyadic operator-() const {
        return Dyadic(-num_, exp_);
    }
    Dyadic &operator+=(const Dyadic &o);
    Dyadic &operator*=(const Dyadic &o);
    friend Dyadic operator+(Dyadic a, const Dyadic &b) {
        return a += b;
    }
    friend Dyadic operator*(Dyadic a, const Dyadic &b) {
        return a *= b;
    }
    bool operator==(const Dyadic &o) const = default;

   private:
    void normalize();
    int64_t num_ = 0;
    int exp_ = 0;
};

inline double coeff_to_double(const Dyadic &c) {
    return c.to_double();
}
inline double coeff_to_double(double c) {
    return c;
}
inline bool coeff_is_zero(const Dyadic &c) {
    return c.is_zero();
}
inline bool coeff_is_zero(double c) {
    return c == 0;
}

using Support = std::vector<int>;

struct SupportHash {
    size_t operator()(const Support &s) const noexcept;
};

/// Sorted symmetric difference.
Support support_product(const Support &a, const Support &b);

/// sum_S c_S prod_{j in S} X_j. n = 0 means an unbounded chain.
template <class Coeff>
class XDiagonal {
   public:
    using Map = std::unordered_map<Support, Coeff, SupportHash>;

    explicit XDiagonal(int n = 0) : n_(n) {}

    static XDiagonal single(int site, int n = 0) {
        XDiagonal op(n);
        op.add({site}, Coeff(1));
        return op;
    }

    int n() const {
        return n_;
    }
    size_t size() const {
        return terms_.size();
    }
    const Map &terms() const {
        return terms_;
    }

    void add(const Support &support, const Coeff &c) {
        if (coeff_is_zero(c)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(support, c);
        if (!inserted) {
            it->second += c;
            if (coeff_is_zero(it->second)) {
                terms_.erase(it);
            }
        }
    }

    Coeff coefficient(const Support &support) const {
        auto it = terms_.find(support);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    XDiagonal operator*(const XDiagonal &o) const {
        XDiagonal out(n_);
        for (const auto &[sa, ca] : terms_) {
            for (const auto &[sb, cb] : o.terms_) {
                out.add(support_product(sa, sb), ca * cb);
            }
        }
        return out;
    }

    XDiagonal scaled(const Coeff &c) const {
        XDiagonal out(n_);
        for (const auto &[s, v] : terms_) {
            out.add(s, v * c);
        }
        return out;
    }

    void add_all(const XDiagonal &o) {
        for (const auto &[s, v] : o.terms_) {
            add(s, v);
        }
    }

    /// Value of the diagonal function on an X-basis label (bit 1 means X = -1).
    double evaluate(const BitString &x) const {
        double v = 0;
        for (const auto &[s, c] : terms_) {
            int parity = 0;
            for (int j : s) {
                parity ^= x.get(j);
            }
            v += parity ? -coeff_to_double(c) : coeff_to_double(c);
        }
        return v;
    }

    double l1_norm() const {
        double s = 0;
        for (const auto &[k, c] : terms_) {
            s += std::abs(coeff_to_double(c));
        }
        return s;
    }

    double sum_of_squares() const {
        double s = 0;
        for (const auto &[k, c] : terms_) {
            double v = coeff_to_double(c);
            s += v * v;
        }
        return s;
    }

    /// Terms ordered by support size, then lexicographically.
    std::vector<std::pair<Support, Coeff>> sorted_terms() const;

   private:
    int n_;
    Map terms_;
};

using XDiagonalOperator = XDiagonal<Dyadic>;
using XDiagonalReal = XDiagonal<double>;

XDiagonalReal to_real(const XDiagonalOperator &op);

/// One line per term: "coefficient<TAB>site,site,...".
std::string expansion_to_text(const XDiagonalOperator &op);
std::string expansion_to_text(const XDiagonalReal &op);

/// Character expansion of (-1)^{g(x)_p} over the window of the survivor p at layer f.
/// Near the chain ends the truncated layer is expanded; n = 0 means no chain ends.
XDiagonalOperator layer_expansion(const DecoderTable &table, int f, int p, int n = 0);

class TermLimitExceeded : public std::runtime_error {
   public:
    TermLimitExceeded(const std::string &what, int depth_reached)
        : std::runtime_error(what), depth_reached(depth_reached) {}
    int depth_reached;
};

struct BackpropOptions {
    size_t max_terms = 10'000'000;
    /// Exact composition beyond two layers must be requested explicitly.
    bool allow_deep = false;
};

/// The observable seen by layer d - levels when X at the centre is measured after layer d.
/// With n = 0 the chain is unbounded and the centre is site 0.
XDiagonalOperator backprop_partial(const Architecture &arch, int n, int levels, const BackpropOptions &options = {});
/// Pre-disentangler X-diagonal form of the measured observable.
XDiagonalOperator backprop(const Architecture &arch, int n, const BackpropOptions &options = {});

/// Floating-point composition that drops |c| < eps and keeps the max_terms largest terms after each layer.
struct TruncatedBackprop {
    XDiagonalReal op;
    bool exact = true;
    double dropped_weight = 0;
};
TruncatedBackprop backprop_truncated(const Architecture &arch, int n, double eps, size_t max_terms);

/// Number of products of Pauli strings after levels_back layers of the alternating ZXZ network of odd depth d.
BigInt count_terms(int d, int levels_back, bool merged);

struct WeightedPauli {
    double coeff;
    PauliString op;
};

/// W^dagger X_S W for the disentangler W of the given kind.
PauliString conjugate_support(ClusterKind kind, const Support &support, int n);
/// Each X_j becomes Z_{j-1} X_j Z_{j+1}.
std::vector<WeightedPauli> conjugate_by_cz_chain(const XDiagonalReal &op, int n);
std::vector<WeightedPauli> conjugate_by_disentangler(const XDiagonalReal &op, ClusterKind kind, int n);
PauliString conjugate_by_cz_chain(const PauliString &p, int n);

double expectation(const std::vector<WeightedPauli> &terms, const StateVector &state);

struct TrackedLayer {
    int f = 0;
    int l = 0;
    /// Sites relative to the centre.
    Support left;
    Support right;
    /// X support of H^(f): the two interleaved strings plus the left and right attachments.
    Support support;
};

struct TrackedFamily {
    int d = 0;
    /// layers[0] is f = d - 2, the last entry f = 0.
    std::vector<TrackedLayer> layers;
    int L = 0;
};

TrackedFamily tracked_family(int d);

/// (3^(d-f) - 1) / 8 for odd f, (3^(d-f) + 13) / 8 for even f.
int tracked_length_closed(int d, int f);
int sop_length_closed(int d);
/// Attachments from the kappa / lambda products, relative to the left (right) end of H^(f).
Support left_attachment_closed(int d, int f);
Support right_attachment_closed(int d, int f);

struct ComplexityBounds {
    BigInt product_bound;
    std::optional<BigInt> basis_bound_formula;
    BigInt basis_bound_l2;
    int l2 = 0;
};

ComplexityBounds complexity_bounds(int d);

/// First-fit grouping into qubit-wise compatible sets.
size_t greedy_basis_cover(std::span<const PauliString> terms);

/// Dense U^dagger X_S U projected onto X strings over a window. residual is the weight left outside X strings.
struct DenseExpansion {
    XDiagonalReal op;
    double residual = 0;
};
DenseExpansion dense_conjugation_expansion(const GateList &gates, std::span<const int> window, const Support &support);

/// The literal recursion formulas for a string of `length` sites ending layer f, centred on site 0.
XDiagonalReal gx_formula(int f, int length);
XDiagonalReal gz_formula(int f, int length);

enum class RecursionKind { gx, gz };

/// Max coefficient deviation between the dense conjugation, the formula and layer_expansion.
double verify_recursion(RecursionKind which, int f = 1, int length = 1);

}  // namespace qcnn

#endif
