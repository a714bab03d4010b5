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

#include "qcnn/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <memory>
#include <sstream>

namespace qcnn {

int pow3i(int e) {
    if (e < 0 || e > 19) {
        throw std::out_of_range("3^" + std::to_string(e) + " out of int range");
    }
    int r = 1;
    for (int k = 0; k < e; k++) {
        r *= 3;
    }
    return r;
}

int DecoderTable::max_offset() const {
    int m = 0;
    for (int o : offsets) {
        m = std::max(m, std::abs(o));
    }
    return m;
}

DecoderTable derive_table_at(ClusterKind phase, LayerKind layer, int f) {
    int s = pow3i(f - 1);
    auto gates = qec_unitary(phase, layer, f, 0);
    auto window = light_cone(gates);
    auto perm = extract_permutation(gates, window);
    auto it = std::find(window.begin(), window.end(), 0);
    if (it == window.end()) {
        throw EqCondViolated("QEC unitary does not act on its survivor");
    }
    size_t ci = static_cast<size_t>(it - window.begin());
    DecoderTable t;
    t.phase = phase;
    t.layer = layer;
    for (int site : window) {
        if (site % s != 0) {
            throw EqCondViolated("QEC window is not on the 3^(f-1) sublattice");
        }
        t.offsets.push_back(site / s);
    }
    t.bits.resize(perm.table.size());
    for (size_t x = 0; x < perm.table.size(); x++) {
        t.bits[x] = static_cast<uint8_t>((perm.table[x] >> ci) & 1);
    }
    return t;
}

const DecoderTable &derive_table(ClusterKind phase, LayerKind layer) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<DecoderTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(phase), static_cast<int>(layer));
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<DecoderTable>(derive_table_at(phase, layer, 1))).first;
    }
    return *it->second;
}

const DecoderTable &truncated_table(const DecoderTable &table, uint32_t inside) {
    uint32_t full = (uint32_t{1} << table.width()) - 1;
    if (inside == full) {
        return table;
    }
    const auto &derived = derive_table(table.phase, table.layer);
    if (!(derived == table)) {
        return table;
    }
    static std::mutex mu;
    static std::map<std::tuple<int, int, uint32_t>, std::unique_ptr<DecoderTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(static_cast<int>(table.phase), static_cast<int>(table.layer), inside);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return *it->second;
    }
    std::set<int> kept;
    for (int i = 0; i < table.width(); i++) {
        if ((inside >> i) & 1) {
            kept.insert(table.offsets[static_cast<size_t>(i)]);
        }
    }
    GateList gates;
    for (const auto &g : qec_unitary(table.phase, table.layer, 1, 0)) {
        auto ops = g.operands();
        if (std::all_of(ops.begin(), ops.end(), [&](int q) { return kept.count(q) > 0; })) {
            gates.push_back(g);
        }
    }
    auto perm = extract_permutation(gates, table.offsets);
    size_t ci = static_cast<size_t>(std::find(table.offsets.begin(), table.offsets.end(), 0) - table.offsets.begin());
    auto out = std::make_unique<DecoderTable>(table);
    for (size_t x = 0; x < perm.table.size(); x++) {
        out->bits[x] = static_cast<uint8_t>((perm.table[x] >> ci) & 1);
    }
    return *cache.emplace(key, std::move(out)).first->second;
}

BitString decode_layer(const BitString &in, const DecoderTable &table, int f, int center) {
    int n = in.size();
    int s = pow3i(f - 1);
    int step = 3 * s;
    BitString out(n);
    int p0 = ((center - 1) % step + step) % step + 1;
    std::array<int, 16> scaled{};
    int w = table.width();
    for (int i = 0; i < w; i++) {
        scaled[static_cast<size_t>(i)] = table.offsets[static_cast<size_t>(i)] * s;
    }
    uint32_t full = (uint32_t{1} << w) - 1;
    for (int p = p0; p <= n; p += step) {
        uint32_t idx = 0;
        uint32_t inside = 0;
        for (int i = 0; i < w; i++) {
            int site = p + scaled[static_cast<size_t>(i)];
            if (site >= 1 && site <= n) {
                inside |= uint32_t{1} << i;
                idx |= static_cast<uint32_t>(in.get(site)) << i;
            }
        }
        const auto &t = inside == full ? table : truncated_table(table, inside);
        if (t.bits[idx]) {
            out.set(p, true);
        }
    }
    return out;
}

std::string_view arch_style_name(ArchStyle style) {
    switch (style) {
        case ArchStyle::XOnly:
            return "x-only";
        case ArchStyle::AltXZ:
            return "alt-xz";
        case ArchStyle::AltCZ:
            return "alt-cz";
    }
    return "?";
}

ArchStyle parse_arch_style(std::string_view text) {
    if (text == "x-only") {
        return ArchStyle::XOnly;
    }
    if (text == "alt-xz") {
        return ArchStyle::AltXZ;
    }
    if (text == "alt-cz") {
        return ArchStyle::AltCZ;
    }
    throw std::invalid_argument("unknown architecture '" + std::string(text) + "' (expected x-only, alt-xz or alt-cz)");
}

std::string_view phase_target_name(PhaseTarget target) {
    switch (target) {
        case PhaseTarget::ZXZ:
            return "ZXZ";
        case PhaseTarget::ZXXXZ:
            return "ZXXXZ";
        case PhaseTarget::ZXZvsZXXXZ:
            return "ZXZ-vs-ZXXXZ";
        case PhaseTarget::ZXXXZvsZXZ:
            return "ZXXXZ-vs-ZXZ";
    }
    return "?";
}

Architecture Architecture::make(ClusterKind disentangler, ArchStyle style, int depth) {
    if (depth < 0) {
        throw std::invalid_argument("depth must be non-negative");
    }
    Architecture a;
    a.disentangler = disentangler;
    a.style = style;
    if (style == ArchStyle::AltCZ) {
        if (disentangler != ClusterKind::ZXXXZ) {
            throw std::invalid_argument("alt-cz requires the zxxxz disentangler");
        }
        a.target = PhaseTarget::ZXXXZvsZXZ;
    } else if (style == ArchStyle::AltXZ && disentangler == ClusterKind::ZXZ) {
        a.target = PhaseTarget::ZXZvsZXXXZ;
    } else {
        a.target = disentangler == ClusterKind::ZXZ ? PhaseTarget::ZXZ : PhaseTarget::ZXXXZ;
    }
    for (int f = 1; f <= depth; f++) {
        bool odd = f % 2 == 1;
        switch (style) {
            case ArchStyle::XOnly:
                a.layers.push_back(LayerKind::Xcorr);
                break;
            case ArchStyle::AltXZ:
                a.layers.push_back(odd ? LayerKind::Xcorr : LayerKind::Zcorr);
                break;
            case ArchStyle::AltCZ:
                a.layers.push_back(odd ? LayerKind::Ccorr : LayerKind::Zcorr);
                break;
        }
    }
    return a;
}

const DecoderTable &Architecture::table(int f) const {
    return derive_table(disentangler, layers.at(static_cast<size_t>(f - 1)));
}

Architecture Architecture::prefix(int depth) const {
    if (depth < 0 || depth > this->depth()) {
        throw std::invalid_argument("prefix depth out of range");
    }
    Architecture a = *this;
    a.layers.resize(static_cast<size_t>(depth));
    return a;
}

int max_depth(int n) {
    int d = 0;
    long long p = 3;
    while (p <= n) {
        d++;
        p *= 3;
    }
    return d;
}

int output_count(int n, int depth) {
    return n / pow3i(depth);
}

void Architecture::validate(int n) const {
    if (n < 1 || n % 2 == 0) {
        throw std::invalid_argument("chain length must be odd, got " + std::to_string(n));
    }
    if (depth() > max_depth(n)) {
        throw std::invalid_argument("depth " + std::to_string(depth()) + " exceeds floor(log3 N) = " +
                                    std::to_string(max_depth(n)));
    }
    int m = output_count(n, depth());
    if (m % 2 == 0) {
        throw std::invalid_argument("output count m = floor(N / 3^d) = " + std::to_string(m) + " must be odd");
    }
    for (auto layer : layers) {
        if (layer == LayerKind::Ccorr && disentangler != ClusterKind::ZXXXZ) {
            throw std::invalid_argument("Ccorr layers require the zxxxz disentangler");
        }
    }
}

std::vector<int> output_positions(int n, int depth) {
    int m = output_count(n, depth);
    int c = (n + 1) / 2;
    int step = pow3i(depth);
    std::vector<int> out;
    for (int j = -(m - 1) / 2; j <= (m - 1) / 2; j++) {
        out.push_back(c + j * step);
    }
    return out;
}

std::vector<BitString> decode_trace(const BitString &x, const Architecture &arch) {
    int n = x.size();
    arch.validate(n);
    int c = (n + 1) / 2;
    std::vector<BitString> trace;
    trace.reserve(static_cast<size_t>(arch.depth()) + 1);
    trace.push_back(x);
    for (int f = 1; f <= arch.depth(); f++) {
        trace.push_back(decode_layer(trace.back(), arch.table(f), f, c));
    }
    return trace;
}

std::vector<uint8_t> decode(const BitString &x, const Architecture &arch) {
    int n = x.size();
    auto trace = decode_trace(x, arch);
    std::vector<uint8_t> out;
    for (int p : output_positions(n, arch.depth())) {
        out.push_back(trace.back().get(p) ? 1 : 0);
    }
    return out;
}

double shot_output(const BitString &x, const Architecture &arch) {
    auto g = decode(x, arch);
    double s = 0;
    for (auto b : g) {
        s += b ? -1.0 : 1.0;
    }
    return s / static_cast<double>(g.size());
}

OutputEstimate qcnn_output(std::span<const BitString> samples, const Architecture &arch) {
    if (samples.empty()) {
        throw std::invalid_argument("qcnn_output needs at least one sample");
    }
    double sum = 0;
    double sum_sq = 0;
    for (const auto &x : samples) {
        double v = shot_output(x, arch);
        sum += v;
        sum_sq += v * v;
    }
    double k = static_cast<double>(samples.size());
    OutputEstimate est;
    est.shots = samples.size();
    est.y = sum / k;
    double var = k > 1 ? std::max(0.0, (sum_sq - k * est.y * est.y) / (k - 1)) : 0.0;
    est.stderr_y = std::sqrt(var / k);
    return est;
}

FlipTable::FlipTable(ClusterKind kind, int n) : kind_(kind), n_(n), flips_(static_cast<size_t>(n) * 4) {
    auto gates = disentangler(kind, n);
    constexpr int R = 4;
    std::vector<std::vector<size_t>> by_min_site(static_cast<size_t>(n) + 1);
    for (size_t k = 0; k < gates.size(); k++) {
        auto ops = gates[k].operands();
        int lo = *std::min_element(ops.begin(), ops.end());
        by_min_site[static_cast<size_t>(lo)].push_back(k);
    }
    for (int j = 1; j <= n; j++) {
        std::vector<size_t> idx;
        for (int q = std::max(1, j - R); q <= std::min(n, j + R); q++) {
            for (size_t k : by_min_site[static_cast<size_t>(q)]) {
                auto ops = gates[k].operands();
                int hi = *std::max_element(ops.begin(), ops.end());
                if (hi <= j + R) {
                    idx.push_back(k);
                }
            }
        }
        std::sort(idx.begin(), idx.end());
        GateList local;
        for (size_t k : idx) {
            local.push_back(gates[k]);
        }
        for (Pauli letter : {Pauli::X, Pauli::Z, Pauli::Y}) {
            auto image = conjugate_forward(PauliString::single(j, letter), local);
            if (!image.is_identity() && (image.min_site() <= j - R || image.max_site() >= j + R)) {
                throw std::logic_error("disentangler light cone wider than the flip-table window");
            }
            auto &out = flips_[static_cast<size_t>(j - 1) * 4 + static_cast<uint8_t>(letter)];
            for (const auto &[site, p] : image.letters()) {
                if (flips_x_outcome(p)) {
                    out.push_back(site);
                }
            }
        }
    }
}

std::shared_ptr<const FlipTable> FlipTable::get(ClusterKind kind, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const FlipTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_shared<const FlipTable>(kind, n)).first;
    }
    return it->second;
}

const std::vector<int> &FlipTable::flips(Pauli letter, int site) const {
    if (site < 1 || site > n_ || letter == Pauli::I) {
        throw std::invalid_argument("flip lookup outside the chain or for the identity");
    }
    return flips_[static_cast<size_t>(site - 1) * 4 + static_cast<uint8_t>(letter)];
}

std::vector<int> flip_set(ClusterKind kind, Pauli letter, int site, int n) {
    return FlipTable::get(kind, n)->flips(letter, site);
}

BitString sample_syndrome(const FlipTable &flips, const ChannelSpec &ch, ShotRng &rng) {
    auto cfg = sample_error_config(ch, flips.n(), rng);
    BitString x(flips.n());
    for (const auto &e : cfg.events) {
        for (int s : flips.flips(e.letter, e.site)) {
            x.flip(s);
        }
    }
    return x;
}

std::vector<BitString> sample_syndromes_cluster(ClusterKind kind, const ChannelSpec &ch, int n, size_t shots,
                                                uint64_t seed, unsigned workers) {
    ch.validate();
    auto flips = FlipTable::get(kind, n);
    std::vector<BitString> out(shots);
    parallel_for_chunks(shots, workers, [&](size_t begin, size_t end) {
        for (size_t k = begin; k < end; k++) {
            ShotRng rng(seed, k);
            out[k] = sample_syndrome(*flips, ch, rng);
        }
    });
    return out;
}

std::vector<double> apply_channel_to_distribution(std::span<const double> probs, int n, ClusterKind kind,
                                                  const ChannelSpec &ch) {
    ch.validate();
    if (probs.size() != (size_t{1} << n)) {
        throw std::invalid_argument("distribution size does not match 2^n");
    }
    auto flips = FlipTable::get(kind, n);
    std::vector<double> cur(probs.begin(), probs.end());
    std::vector<double> next(cur.size());
    auto mask_of = [&](Pauli letter, int j) {
        uint64_t m = 0;
        for (int s : flips->flips(letter, j)) {
            m |= StateVector::site_bit(s, n);
        }
        return m;
    };
    for (int j = 1; j <= n; j++) {
        uint64_t mx = mask_of(Pauli::X, j);
        uint64_t my = mask_of(Pauli::Y, j);
        uint64_t mz = mask_of(Pauli::Z, j);
        for (uint64_t x = 0; x < cur.size(); x++) {
            next[x] = ch.p_identity() * cur[x] + ch.px * cur[x ^ mx] + ch.py * cur[x ^ my] + ch.pz * cur[x ^ mz];
        }
        std::swap(cur, next);
    }
    return cur;
}

double exact_output(std::span<const double> probs, int n, const Architecture &arch, bool center_only) {
    if (probs.size() != (size_t{1} << n)) {
        throw std::invalid_argument("distribution size does not match 2^n");
    }
    arch.validate(n);
    int c = (n + 1) / 2;
    double total = 0;
    for (uint64_t x = 0; x < probs.size(); x++) {
        if (probs[x] == 0) {
            continue;
        }
        auto bits = index_to_bits(x, n);
        double v;
        if (center_only) {
            v = decode_trace(bits, arch).back().get(c) ? -1.0 : 1.0;
        } else {
            v = shot_output(bits, arch);
        }
        total += probs[x] * v;
    }
    return total;
}

OutputEstimate estimate_sop_cluster(const ChannelSpec &ch, const SopSpec &spec, int n, size_t shots, uint64_t seed) {
    spec.validate();
    if (spec.k > n) {
        throw std::invalid_argument("string order parameter exceeds the chain");
    }
    auto image = conjugate_forward(sop_pauli(spec), disentangler(spec.kind, n));
    std::vector<int> support;
    for (const auto &[site, p] : image.letters()) {
        if (p != Pauli::X) {
            throw std::logic_error("string order parameter does not map onto an X string");
        }
        support.push_back(site);
    }
    double sign = image.phase() == 0 ? 1.0 : -1.0;
    auto samples = sample_syndromes_cluster(spec.kind, ch, n, shots, seed);
    double sum = 0;
    double sum_sq = 0;
    for (const auto &x : samples) {
        bool parity = false;
        for (int s : support) {
            parity ^= x.get(s);
        }
        double v = parity ? -sign : sign;
        sum += v;
        sum_sq += v * v;
    }
    double k = static_cast<double>(shots);
    OutputEstimate est;
    est.shots = shots;
    est.y = sum / k;
    est.stderr_y = std::sqrt(std::max(0.0, (sum_sq - k * est.y * est.y) / std::max(1.0, k - 1)) / k);
    return est;
}

std::string table_to_text(const DecoderTable &table) {
    std::string out = "phase " + std::string(cluster_kind_name(table.phase)) + "\n";
    out += "layer " + std::string(layer_kind_name(table.layer)) + "\n";
    out += "offsets";
    for (int o : table.offsets) {
        out += " " + std::to_string(o);
    }
    out += "\ntable ";
    static const char *kHex = "0123456789abcdef";
    size_t nbytes = (table.bits.size() + 7) / 8;
    for (size_t b = 0; b < nbytes; b++) {
        unsigned byte = 0;
        for (size_t k = 0; k < 8 && b * 8 + k < table.bits.size(); k++) {
            byte |= static_cast<unsigned>(table.bits[b * 8 + k] & 1) << k;
        }
        out += kHex[byte >> 4];
        out += kHex[byte & 15];
    }
    out += "\n";
    return out;
}

DecoderTable table_from_text(std::string_view text) {
    DecoderTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::string hex;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) {
            continue;
        }
        if (key == "phase") {
            std::string v;
            ls >> v;
            t.phase = parse_cluster_kind(v);
        } else if (key == "layer") {
            std::string v;
            ls >> v;
            t.layer = parse_layer_kind(v);
        } else if (key == "offsets") {
            int o;
            while (ls >> o) {
                t.offsets.push_back(o);
            }
        } else if (key == "table") {
            ls >> hex;
        } else {
            throw std::invalid_argument("unknown key '" + key + "' in decoder table text");
        }
    }
    size_t rows = size_t{1} << t.offsets.size();
    if (hex.size() != 2 * ((rows + 7) / 8)) {
        throw std::invalid_argument("decoder table hex length does not match the offsets");
    }
    t.bits.resize(rows);
    for (size_t r = 0; r < rows; r++) {
        unsigned byte = static_cast<unsigned>(std::stoul(hex.substr(2 * (r / 8), 2), nullptr, 16));
        t.bits[r] = static_cast<uint8_t>((byte >> (r % 8)) & 1);
    }
    return t;
}

void write_syndromes_binary(const std::filesystem::path &path, std::span<const BitString> samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    uint32_t n = samples.empty() ? 0 : static_cast<uint32_t>(samples[0].size());
    uint64_t shots = samples.size();
    out.write("QCSY", 4);
    out.write(reinterpret_cast<const char *>(&n), sizeof(n));
    out.write(reinterpret_cast<const char *>(&shots), sizeof(shots));
    size_t nbytes = (n + 7) / 8;
    std::vector<char> buf(nbytes);
    for (const auto &x : samples) {
        if (static_cast<uint32_t>(x.size()) != n) {
            throw std::invalid_argument("syndrome samples must share one length");
        }
        std::fill(buf.begin(), buf.end(), 0);
        for (int j = 1; j <= x.size(); j++) {
            if (x.get(j)) {
                buf[static_cast<size_t>(j - 1) / 8] |= static_cast<char>(1 << ((j - 1) % 8));
            }
        }
        out.write(buf.data(), static_cast<std::streamsize>(nbytes));
    }
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::vector<BitString> read_syndromes_binary(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    char magic[4];
    uint32_t n = 0;
    uint64_t shots = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char *>(&n), sizeof(n));
    in.read(reinterpret_cast<char *>(&shots), sizeof(shots));
    if (!in || std::memcmp(magic, "QCSY", 4) != 0) {
        throw std::runtime_error(path.string() + " is not a syndrome file");
    }
    size_t nbytes = (n + 7) / 8;
    std::vector<char> buf(nbytes);
    std::vector<BitString> out;
    for (uint64_t k = 0; k < shots; k++) {
        in.read(buf.data(), static_cast<std::streamsize>(nbytes));
        if (!in) {
            throw std::runtime_error("truncated syndrome file " + path.string());
        }
        BitString x(static_cast<int>(n));
        for (uint32_t j = 1; j <= n; j++) {
            if ((buf[(j - 1) / 8] >> ((j - 1) % 8)) & 1) {
                x.set(static_cast<int>(j), true);
            }
        }
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace qcnn
