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


#include "qcnn/heisenberg.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>

#include "qcnn/circuits.hpp"

namespace qcnn {

Dyadic::Dyadic(int64_t num, int exp) : num_(num), exp_(exp) {
    normalize();
}

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
        num_ /= 2;
        exp_--;
    }
    while (exp_ < 0) {
        auto wide = static_cast<__int128>(num_) * 2;
        if (wide > INT64_MAX || wide < INT64_MIN) {
            throw std::overflow_error("dyadic numerator overflow");
        }
        num_ = static_cast<int64_t>(wide);
        exp_++;
    }
}

namespace {

int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("dyadic numerator overflow");
    }
    return static_cast<int64_t>(v);
}

__int128 shifted(int64_t num, int by) {
    if (by > 62) {
        throw std::overflow_error("dyadic exponent gap too large");
    }
    return static_cast<__int128>(num) << by;
}

}  // namespace

Dyadic &Dyadic::operator+=(const Dyadic &o) {
    int e = std::max(exp_, o.exp_);
    num_ = narrow(shifted(num_, e - exp_) + shifted(o.num_, e - o.exp_));
    exp_ = e;
    normalize();
    return *this;
}

Dyadic &Dyadic::operator*=(const Dyadic &o) {
    num_ = narrow(static_cast<__int128>(num_) * o.num_);
    exp_ += o.exp_;
    normalize();
    return *this;
}

std::string Dyadic::str() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", to_double());
    return buf;
}

size_t SupportHash::operator()(const Support &s) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
    for (int j : s) {
        h = splitmix64(h ^ static_cast<uint64_t>(static_cast<uint32_t>(j)));
    }
    return static_cast<size_t>(h);
}

Support support_product(const Support &a, const Support &b) {
    Support out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class Coeff>
std::vector<std::pair<Support, Coeff>> XDiagonal<Coeff>::sorted_terms() const {
    std::vector<std::pair<Support, Coeff>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        if (a.first.size() != b.first.size()) {
            return a.first.size() < b.first.size();
        }
        return a.first < b.first;
    });
    return out;
}

template class XDiagonal<Dyadic>;
template class XDiagonal<double>;

XDiagonalReal to_real(const XDiagonalOperator &op) {
    XDiagonalReal out(op.n());
    for (const auto &[s, c] : op.terms()) {
        out.add(s, c.to_double());
    }
    return out;
}

namespace {

template <class Coeff>
std::string expansion_text(const XDiagonal<Coeff> &op) {
    std::string out;
    char buf[64];
    for (const auto &[s, c] : op.sorted_terms()) {
        std::snprintf(buf, sizeof(buf), "%.17g", coeff_to_double(c));
        out += buf;
        out += '\t';
        for (size_t k = 0; k < s.size(); k++) {
            if (k) {
                out += ',';
            }
            out += std::to_string(s[k]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace

std::string expansion_to_text(const XDiagonalOperator &op) {
    return expansion_text(op);
}

std::string expansion_to_text(const XDiagonalReal &op) {
    return expansion_text(op);
}

XDiagonalOperator layer_expansion(const DecoderTable &table, int f, int p, int n) {
    int w = table.width();
    if (w > 16) {
        throw std::invalid_argument("layer window wider than 16 bits");
    }
    int s = pow3i(f - 1);
    std::vector<int> sites;
    std::vector<int> slot;
    uint32_t inside = 0;
    for (int i = 0; i < w; i++) {
        int site = p + table.offsets[static_cast<size_t>(i)] * s;
        if (n == 0 || (site >= 1 && site <= n)) {
            sites.push_back(site);
            slot.push_back(i);
            inside |= uint32_t{1} << i;
        }
    }
    const auto &t = truncated_table(table, inside);
    int k = static_cast<int>(sites.size());
    size_t rows = size_t{1} << k;
    std::vector<int64_t> h(rows);
    for (size_t x = 0; x < rows; x++) {
        uint32_t idx = 0;
        for (int b = 0; b < k; b++) {
            if ((x >> b) & 1) {
                idx |= uint32_t{1} << slot[static_cast<size_t>(b)];
            }
        }
        h[x] = t.bits[idx] ? -1 : 1;
    }
    for (size_t len = 1; len < rows; len <<= 1) {
        for (size_t i = 0; i < rows; i += 2 * len) {
            for (size_t j = i; j < i + len; j++) {
                int64_t a = h[j];
                int64_t b = h[j + len];
                h[j] = a + b;
                h[j + len] = a - b;
            }
        }
    }
    XDiagonalOperator op(n);
    for (size_t mask = 0; mask < rows; mask++) {
        if (h[mask] == 0) {
            continue;
        }
        Support sup;
        for (int b = 0; b < k; b++) {
            if ((mask >> b) & 1) {
                sup.push_back(sites[static_cast<size_t>(b)]);
            }
        }
        std::sort(sup.begin(), sup.end());
        op.add(sup, Dyadic(h[mask], k));
    }
    return op;
}

namespace {

template <class Coeff, class Expand>
XDiagonal<Coeff> substitute(const XDiagonal<Coeff> &op, int n, size_t max_terms, int depth_reached,
                            Expand &&expand) {
    XDiagonal<Coeff> next(n);
    for (const auto &[support, c] : op.sorted_terms()) {
        XDiagonal<Coeff> prod(n);
        prod.add({}, Coeff(1));
        for (int j : support) {
            prod = prod * expand(j);
            if (prod.size() > max_terms) {
                throw TermLimitExceeded("term limit exceeded while expanding a product", depth_reached);
            }
        }
        for (const auto &[s, v] : prod.terms()) {
            next.add(s, v * c);
        }
        if (next.size() > max_terms) {
            throw TermLimitExceeded("term limit of " + std::to_string(max_terms) + " exceeded", depth_reached);
        }
    }
    return next;
}

int centre_of(const Architecture &arch, int n) {
    if (n == 0) {
        return 0;
    }
    arch.validate(n);
    return (n + 1) / 2;
}

}  // namespace

XDiagonalOperator backprop_partial(const Architecture &arch, int n, int levels, const BackpropOptions &options) {
    int d = arch.depth();
    if (levels < 0 || levels > d) {
        throw std::invalid_argument("levels must lie in [0, depth]");
    }
    if (levels > 2 && !options.allow_deep) {
        throw std::invalid_argument("exact backpropagation through more than two layers needs allow_deep");
    }
    int c = centre_of(arch, n);
    auto op = XDiagonalOperator::single(c, n);
    for (int f = d; f > d - levels; f--) {
        const auto &table = arch.table(f);
        std::map<int, XDiagonalOperator> cache;
        auto expand = [&](int j) -> const XDiagonalOperator & {
            auto it = cache.find(j);
            if (it == cache.end()) {
                it = cache.emplace(j, layer_expansion(table, f, j, n)).first;
            }
            return it->second;
        };
        op = substitute(op, n, options.max_terms, d - f, expand);
    }
    return op;
}

XDiagonalOperator backprop(const Architecture &arch, int n, const BackpropOptions &options) {
    return backprop_partial(arch, n, arch.depth(), options);
}

TruncatedBackprop backprop_truncated(const Architecture &arch, int n, double eps, size_t max_terms) {
    if (eps < 0 || max_terms < 1) {
        throw std::invalid_argument("truncation needs eps >= 0 and max_terms >= 1");
    }
    int d = arch.depth();
    int c = centre_of(arch, n);
    TruncatedBackprop res;
    res.op = XDiagonalReal::single(c, n);
    for (int f = d; f >= 1; f--) {
        const auto &table = arch.table(f);
        std::map<int, XDiagonalReal> cache;
        auto expand = [&](int j) -> const XDiagonalReal & {
            auto it = cache.find(j);
            if (it == cache.end()) {
                it = cache.emplace(j, to_real(layer_expansion(table, f, j, n))).first;
            }
            return it->second;
        };
        auto next = substitute(res.op, n, std::numeric_limits<size_t>::max(), d - f, expand);
        auto terms = next.sorted_terms();
        std::stable_sort(terms.begin(), terms.end(),
                         [](const auto &a, const auto &b) { return std::abs(a.second) > std::abs(b.second); });
        XDiagonalReal kept(n);
        for (size_t k = 0; k < terms.size(); k++) {
            if (k < max_terms && std::abs(terms[k].second) >= eps) {
                kept.add(terms[k].first, terms[k].second);
            } else {
                res.exact = false;
                res.dropped_weight += terms[k].second * terms[k].second;
            }
        }
        res.op = std::move(kept);
    }
    return res;
}

namespace {

/// Maximal runs of sites spaced by `spacing`.
int count_runs(const Support &sites, int spacing) {
    int runs = 0;
    for (size_t k = 0; k < sites.size(); k++) {
        if (k == 0 || sites[k] - sites[k - 1] != spacing) {
            runs++;
        }
    }
    return runs;
}

}  // namespace

BigInt count_terms(int d, int levels_back, bool merged) {
    if (d < 1 || d % 2 == 0) {
        throw std::invalid_argument("count_terms needs an odd depth");
    }
    if (levels_back < 0 || levels_back > 3 || levels_back > d) {
        throw std::invalid_argument("levels_back must lie in [0, min(3, d)]");
    }
    auto arch = Architecture::make(ClusterKind::ZXZ, ArchStyle::AltXZ, d);
    if (merged) {
        BackpropOptions options;
        options.allow_deep = true;
        return BigInt(backprop_partial(arch, 0, levels_back, options).size());
    }
    if (levels_back == 0) {
        return 1;
    }
    std::vector<Support> products;
    auto top = layer_expansion(arch.table(d), d, 0);
    for (const auto &[s, c] : top.terms()) {
        products.push_back(s);
    }
    if (levels_back == 1) {
        return BigInt(products.size());
    }
    int fz = d - 1;
    std::vector<Support> level2;
    for (const auto &prod : products) {
        std::vector<Support> partial{{}};
        for (int j : prod) {
            std::vector<Support> grown;
            auto site = layer_expansion(arch.table(fz), fz, j);
            for (const auto &[s, c] : site.terms()) {
                for (const auto &base : partial) {
                    grown.push_back(support_product(base, s));
                }
            }
            partial = std::move(grown);
        }
        level2.insert(level2.end(), partial.begin(), partial.end());
    }
    if (levels_back == 2) {
        return BigInt(level2.size());
    }
    BigInt total = 0;
    int spacing = 2 * pow3i(d - 2);
    for (const auto &prod : level2) {
        total += BigInt(1) << (4 * count_runs(prod, spacing));
    }
    return total;
}

PauliString conjugate_support(ClusterKind kind, const Support &support, int n) {
    PauliString p;
    for (int j : support) {
        if (j < 1 || j > n) {
            throw std::invalid_argument("support site outside the chain");
        }
        p.set(j, Pauli::X);
    }
    return conjugate_backward(p, disentangler(kind, n));
}

std::vector<WeightedPauli> conjugate_by_disentangler(const XDiagonalReal &op, ClusterKind kind, int n) {
    auto gates = disentangler(kind, n);
    std::vector<WeightedPauli> out;
    for (const auto &[s, c] : op.sorted_terms()) {
        PauliString p;
        for (int j : s) {
            if (j < 1 || j > n) {
                throw std::invalid_argument("support site outside the chain");
            }
            p.set(j, Pauli::X);
        }
        auto image = conjugate_backward(p, gates);
        if (!image.is_hermitian()) {
            throw std::logic_error("conjugated X string is not Hermitian");
        }
        double sign = image.phase() == 0 ? 1.0 : -1.0;
        image.multiply_phase(image.phase() == 0 ? 0 : 2);
        out.push_back({sign * c, image});
    }
    return out;
}

std::vector<WeightedPauli> conjugate_by_cz_chain(const XDiagonalReal &op, int n) {
    return conjugate_by_disentangler(op, ClusterKind::ZXZ, n);
}

PauliString conjugate_by_cz_chain(const PauliString &p, int n) {
    return conjugate_backward(p, disentangler(ClusterKind::ZXZ, n));
}

double expectation(const std::vector<WeightedPauli> &terms, const StateVector &state) {
    double v = 0;
    for (const auto &t : terms) {
        v += t.coeff * expectation(t.op, state);
    }
    return v;
}

int tracked_length_closed(int d, int f) {
    int p = pow3i(d - f);
    return f % 2 == 1 ? (p - 1) / 8 : (p + 13) / 8;
}

int sop_length_closed(int d) {
    return (pow3i(d) + 17) / 4;
}

Support left_attachment_closed(int d, int f) {
    Support out;
    int upper = f % 2 == 1 ? d - 4 - f : d - 5 - f;
    for (int g = 0; 2 * g <= upper; g++) {
        int nine = pow3i(2 * g);
        int base = f % 2 == 1 ? (23 * nine + 1) / 8 * pow3i(f) : (69 * nine - 13) / 8 * pow3i(f);
        int gap = (f % 2 == 1 ? 3 : 9) * pow3i(f + 2 * g);
        out.push_back(-base - gap);
        out.push_back(-base);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Support right_attachment_closed(int d, int f) {
    Support out;
    for (int o : left_attachment_closed(d, f)) {
        out.push_back(-o);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TrackedFamily tracked_family(int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("the tracked family needs an odd depth d >= 3");
    }
    TrackedFamily fam;
    fam.d = d;
    int l = 1;
    Support left;
    Support right;
    for (int f = d - 2; f >= 0; f--) {
        if (f < d - 2) {
            int sf = pow3i(f);
            // Layer f + 1 maps H^(f+1) onto H^(f).
            l = (f + 1) % 2 == 1 ? 3 * l + 2 : 3 * l - 5;
            Support nl;
            Support nr;
            if (f % 2 == 0) {
                for (int o : left) {
                    nl.push_back(o + 2 * sf);
                }
                for (int o : right) {
                    nr.push_back(o - 2 * sf);
                }
            } else {
                nl = {-6 * sf, -3 * sf};
                nr = {3 * sf, 6 * sf};
                for (int o : left) {
                    nl.push_back(o - 5 * sf);
                }
                for (int o : right) {
                    nr.push_back(o + 5 * sf);
                }
            }
            std::sort(nl.begin(), nl.end());
            std::sort(nr.begin(), nr.end());
            left = std::move(nl);
            right = std::move(nr);
        }
        TrackedLayer layer;
        layer.f = f;
        layer.l = l;
        layer.left = left;
        layer.right = right;
        int sf = pow3i(f);
        int j = -l * sf;
        int k = l * sf;
        for (int site = j; site <= k; site += sf) {
            layer.support.push_back(site);
        }
        for (int o : left) {
            layer.support.push_back(j + o);
        }
        for (int o : right) {
            layer.support.push_back(k + o);
        }
        std::sort(layer.support.begin(), layer.support.end());
        if (std::adjacent_find(layer.support.begin(), layer.support.end()) != layer.support.end()) {
            throw std::logic_error("tracked product factors overlap");
        }
        fam.layers.push_back(std::move(layer));
    }
    fam.L = 2 * fam.layers.back().l + 1;
    return fam;
}

ComplexityBounds complexity_bounds(int d) {
    if (d < 3 || d > 12) {
        throw std::invalid_argument("complexity bounds are defined for 3 <= d <= 12 (d >= 4 for the basis formula)");
    }
    ComplexityBounds b;
    b.product_bound = BigInt(1) << pow3i(d - 2);
    if (d >= 4) {
        b.basis_bound_formula = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(pow3i(d - 4)));
    }
    b.l2 = (pow3i(d - 2) + 13) / 8;
    b.basis_bound_l2 = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(2 * b.l2));
    return b;
}

size_t greedy_basis_cover(std::span<const PauliString> terms) {
    std::vector<std::map<int, Pauli>> groups;
    for (const auto &t : terms) {
        bool placed = false;
        for (auto &g : groups) {
            bool ok = true;
            for (const auto &[site, p] : t.letters()) {
                auto it = g.find(site);
                if (it != g.end() && it->second != p) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                for (const auto &[site, p] : t.letters()) {
                    g[site] = p;
                }
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.emplace_back(t.letters().begin(), t.letters().end());
        }
    }
    return groups.size();
}

DenseExpansion dense_conjugation_expansion(const GateList &gates, std::span<const int> window, const Support &support) {
    int w = static_cast<int>(window.size());
    if (w < 1 || w > 16) {
        throw std::invalid_argument("dense window must hold 1..16 qubits");
    }
    std::map<int, int> local;
    for (int k = 0; k < w; k++) {
        local[window[static_cast<size_t>(k)]] = k + 1;
    }
    auto remap = [&](int site) {
        auto it = local.find(site);
        if (it == local.end()) {
            throw std::invalid_argument("gate or support site outside the dense window");
        }
        return it->second;
    };
    GateList mapped;
    for (const auto &g : gates) {
        Gate m = g;
        for (int k = 0; k < g.arity(); k++) {
            m.q[static_cast<size_t>(k)] = remap(g.q[static_cast<size_t>(k)]);
        }
        mapped.push_back(m);
    }
    auto back = inverse(mapped);
    uint64_t xmask = 0;
    for (int j : support) {
        xmask |= StateVector::site_bit(remap(j), w);
    }
    size_t dim = size_t{1} << w;
    std::vector<amp_t> coeff(dim, 0.0);
    for (uint64_t b = 0; b < dim; b++) {
        StateVector v(w);
        v[0] = 0;
        v[b] = 1;
        apply_gates_inplace(mapped, v);
        StateVector flipped(w);
        for (uint64_t r = 0; r < dim; r++) {
            flipped[r ^ xmask] = v[r];
        }
        apply_gates_inplace(back, flipped);
        for (uint64_t r = 0; r < dim; r++) {
            if (flipped[r] != amp_t(0)) {
                coeff[r ^ b] += flipped[r];
            }
        }
    }
    DenseExpansion out;
    out.op = XDiagonalReal(0);
    double weight = 0;
    double imag = 0;
    for (uint64_t mask = 0; mask < dim; mask++) {
        amp_t c = coeff[mask] / static_cast<double>(dim);
        weight += std::norm(c);
        imag += std::abs(c.imag());
        if (std::abs(c.real()) > 1e-14) {
            Support s;
            for (int k = 0; k < w; k++) {
                if (mask & StateVector::site_bit(k + 1, w)) {
                    s.push_back(window[static_cast<size_t>(k)]);
                }
            }
            std::sort(s.begin(), s.end());
            out.op.add(s, c.real());
        }
    }
    out.residual = std::abs(1 - weight) + imag;
    return out;
}

namespace {

Support string_sites(int a, int b, int spacing) {
    Support s;
    for (int j = a; j <= b; j += spacing) {
        s.push_back(j);
    }
    return s;
}

}  // namespace

XDiagonalReal gx_formula(int f, int length) {
    if (f < 1 || length < 1) {
        throw std::invalid_argument("gx needs f >= 1 and length >= 1");
    }
    int s = pow3i(f - 1);
    int sf = 3 * s;
    int j = -(length - 1) * sf;
    int k = (length - 1) * sf;
    int gamma = 4 * s;
    auto G = [&](int a, int b) { return string_sites(a, b, 2 * s); };
    XDiagonalReal out(0);
    for (int alpha : {0, 2 * s, 4 * s}) {
        for (int beta : {0, 2 * s, 4 * s}) {
            out.add(G(j - alpha, k + beta), 0.25);
        }
    }
    for (int alpha : {0, 2 * s, 4 * s}) {
        out.add(support_product(G(j - alpha, k), G(k + gamma, k + gamma)), -0.25);
        out.add(support_product(G(j - gamma, j - gamma), G(j, k + alpha)), -0.25);
    }
    out.add(support_product(support_product(G(j - gamma, j - gamma), G(j, k)), G(k + gamma, k + gamma)), 0.25);
    return out;
}

XDiagonalReal gz_formula(int f, int length) {
    if (f < 1 || length < 1) {
        throw std::invalid_argument("gz needs f >= 1 and length >= 1");
    }
    int s = pow3i(f - 1);
    int sf = 3 * s;
    int eps = 7 * s;
    XDiagonalReal out(0);
    out.add({}, 1.0);
    for (int delta = -(length - 1) * sf; delta <= (length - 1) * sf; delta += 2 * sf) {
        XDiagonalReal factor(0);
        factor.add({delta - eps}, 0.5);
        factor.add({delta}, 0.5);
        factor.add({delta + eps}, 0.5);
        factor.add({delta - eps, delta, delta + eps}, -0.5);
        out = out * factor;
    }
    return out;
}

double verify_recursion(RecursionKind which, int f, int length) {
    auto layer = which == RecursionKind::gx ? LayerKind::Xcorr : LayerKind::Zcorr;
    int s = pow3i(f - 1);
    int sf = 3 * s;
    Support g = string_sites(-(length - 1) * sf, (length - 1) * sf, 2 * sf);
    GateList gates;
    for (int p : g) {
        auto part = qec_unitary(ClusterKind::ZXZ, layer, f, p);
        gates.insert(gates.end(), part.begin(), part.end());
    }
    auto predicted = which == RecursionKind::gx ? gx_formula(f, length) : gz_formula(f, length);
    std::vector<int> window;
    if (which == RecursionKind::gx) {
        int lo = g.front() - 5 * s;
        int hi = g.back() + 5 * s;
        for (int site = lo; site <= hi; site += s) {
            window.push_back(site);
        }
        if (window.size() > 16) {
            window.clear();
            for (int site = g.front() - 4 * s; site <= g.back() + 4 * s; site += 2 * s) {
                window.push_back(site);
            }
        }
    } else {
        auto cone = light_cone(gates);
        window.assign(cone.begin(), cone.end());
    }
    auto dense = dense_conjugation_expansion(gates, window, g);
    const auto &table = derive_table(ClusterKind::ZXZ, layer);
    XDiagonalReal walsh(0);
    walsh.add({}, 1.0);
    for (int p : g) {
        walsh = walsh * to_real(layer_expansion(table, f, p));
    }
    double dev = dense.residual;
    for (const auto *other : {&dense.op, &walsh}) {
        for (const auto &[sup, c] : predicted.terms()) {
            dev = std::max(dev, std::abs(c - other->coefficient(sup)));
        }
        for (const auto &[sup, c] : other->terms()) {
            dev = std::max(dev, std::abs(c - predicted.coefficient(sup)));
        }
    }
    return dev;
}

}  // namespace qcnn
