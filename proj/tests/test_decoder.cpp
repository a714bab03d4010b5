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


#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "oracles/dense.hpp"
#include "qcnn/decoder.hpp"
#include "qcnn/noise.hpp"

namespace qcnn {
namespace {

int table_bit(const DecoderTable &t, const std::vector<int> &ones) {
    uint32_t idx = 0;
    for (int o : ones) {
        auto it = std::find(t.offsets.begin(), t.offsets.end(), o);
        EXPECT_NE(it, t.offsets.end());
        idx |= 1u << (it - t.offsets.begin());
    }
    return t.bits[idx];
}

// X-correcting layer written with AND / XOR gates.
bool xcorr_oracle(bool m4, bool m2, bool c, bool p2, bool p4) {
    return c ^ (m2 & !m4) ^ (p2 & !p4);
}

bool majority_oracle(bool a, bool b, bool c) {
    return ((a ^ b) & (b ^ c)) ^ b;
}

TEST(DecoderTable, ZxzXcorrMatchesLogicCircuit) {
    const auto &t = derive_table(ClusterKind::ZXZ, LayerKind::Xcorr);
    ASSERT_EQ(t.offsets, (std::vector<int>{-4, -2, 0, 2, 4}));
    for (uint32_t r = 0; r < 32; r++) {
        EXPECT_EQ(t.bits[r], xcorr_oracle(r & 1, r & 2, r & 4, r & 8, r & 16)) << r;
    }
}

TEST(DecoderTable, ZxzXcorrSyndromeBehaviour) {
    const auto &t = derive_table(ClusterKind::ZXZ, LayerKind::Xcorr);
    // A lone flip reaches the survivors two sites away and the survivor itself.
    EXPECT_EQ(table_bit(t, {0}), 1);
    EXPECT_EQ(table_bit(t, {-2}), 1);
    EXPECT_EQ(table_bit(t, {2}), 1);
    EXPECT_EQ(table_bit(t, {-4}), 0);
    EXPECT_EQ(table_bit(t, {4}), 0);
    // Adjacent pairs on the sublattice are the X_j syndrome and are removed.
    for (int o = -4; o <= 2; o += 2) {
        EXPECT_EQ(table_bit(t, {o, o + 2}), 0) << o;
    }
}

TEST(DecoderTable, ZcorrIsMajority) {
    const auto &t = derive_table(ClusterKind::ZXZ, LayerKind::Zcorr);
    ASSERT_EQ(t.offsets, (std::vector<int>{-7, 0, 7}));
    for (uint32_t r = 0; r < 8; r++) {
        EXPECT_EQ(t.bits[r], majority_oracle(r & 1, r & 2, r & 4));
    }
    EXPECT_EQ(derive_table(ClusterKind::ZXXXZ, LayerKind::Zcorr).bits, t.bits);
}

TEST(DecoderTable, CcorrEqualsZxzXcorr) {
    const auto &c = derive_table(ClusterKind::ZXXXZ, LayerKind::Ccorr);
    const auto &x = derive_table(ClusterKind::ZXZ, LayerKind::Xcorr);
    EXPECT_EQ(c.offsets, x.offsets);
    EXPECT_EQ(c.bits, x.bits);
}

TEST(DecoderTable, ZxxxzXcorrWindow) {
    const auto &t = derive_table(ClusterKind::ZXXXZ, LayerKind::Xcorr);
    EXPECT_EQ(t.offsets, (std::vector<int>{-8, -4, 0, 4, 8}));
    EXPECT_EQ(t.bits, derive_table(ClusterKind::ZXZ, LayerKind::Xcorr).bits);
}

TEST(DecoderTable, ScaleInvariance) {
    for (auto [phase, layer] : {std::pair{ClusterKind::ZXZ, LayerKind::Xcorr}, std::pair{ClusterKind::ZXZ, LayerKind::Zcorr},
                                std::pair{ClusterKind::ZXXXZ, LayerKind::Xcorr},
                                std::pair{ClusterKind::ZXXXZ, LayerKind::Ccorr}}) {
        for (int f : {2, 3}) {
            EXPECT_EQ(derive_table_at(phase, layer, f), derive_table(phase, layer));
        }
    }
}

TEST(DecoderTable, TextRoundTrip) {
    const auto &t = derive_table(ClusterKind::ZXXXZ, LayerKind::Xcorr);
    EXPECT_EQ(table_from_text(table_to_text(t)), t);
    EXPECT_THROW(table_from_text("phase zxz\nlayer Xcorr\noffsets -2 0 2\ntable b44bb4b4\n"), std::invalid_argument);
}

TEST(TruncatedTable, DroppedGatesAtChainEnds) {
    const auto &z = derive_table(ClusterKind::ZXZ, LayerKind::Zcorr);
    EXPECT_EQ(&truncated_table(z, 0b111), &z);
    for (uint32_t inside : {0b010u, 0b011u, 0b110u}) {
        const auto &t = truncated_table(z, inside);
        for (uint32_t r = 0; r < 8; r++) {
            if ((r & ~inside) == 0) {
                EXPECT_EQ(t.bits[r], (r >> 1) & 1) << inside << " " << r;
            }
        }
    }
    const auto &x = derive_table(ClusterKind::ZXZ, LayerKind::Xcorr);
    const auto &left = truncated_table(x, 0b11100);
    for (uint32_t r = 0; r < 32; r++) {
        if ((r & 0b11) == 0) {
            EXPECT_EQ(left.bits[r], x.bits[r]) << r;
        }
    }
    auto custom = z;
    custom.bits[0] = 1;
    EXPECT_EQ(truncated_table(custom, 0b010).bits, custom.bits);
}

TEST(DecodeLayer, MatchesWindowOracle) {
    std::mt19937_64 rng(12);
    int n = 243;
    int c = (n + 1) / 2;
    for (int f = 1; f <= 3; f++) {
        for (auto layer : {LayerKind::Xcorr, LayerKind::Zcorr}) {
            const auto &t = derive_table(ClusterKind::ZXZ, layer);
            BitString x(n);
            for (int s = 1; s <= n; s++) {
                x.set(s, rng() % 4 == 0);
            }
            auto out = decode_layer(x, t, f, c);
            int step = pow3i(f);
            int s_unit = pow3i(f - 1);
            for (int p = 1; p <= n; p++) {
                bool expect = false;
                if (((p - c) % step + step) % step == 0) {
                    auto at = [&](int o) { return x.get(p + o * s_unit); };
                    bool both = p - 7 * s_unit >= 1 && p + 7 * s_unit <= n;
                    if (layer == LayerKind::Xcorr) {
                        expect = xcorr_oracle(at(-4), at(-2), at(0), at(2), at(4));
                    } else {
                        // an open chain drops the gates that reach past an end
                        expect = both ? majority_oracle(at(-7), at(0), at(7)) : at(0);
                    }
                }
                EXPECT_EQ(out.get(p), expect) << "f=" << f << " p=" << p;
            }
        }
    }
}

TEST(Architecture, LayerSchedules) {
    auto a = Architecture::make(ClusterKind::ZXZ, ArchStyle::AltXZ, 4);
    EXPECT_EQ(a.layers, (std::vector<LayerKind>{LayerKind::Xcorr, LayerKind::Zcorr, LayerKind::Xcorr, LayerKind::Zcorr}));
    EXPECT_EQ(a.target, PhaseTarget::ZXZvsZXXXZ);
    auto x = Architecture::make(ClusterKind::ZXZ, ArchStyle::XOnly, 3);
    EXPECT_EQ(x.layers, (std::vector<LayerKind>(3, LayerKind::Xcorr)));
    auto c = Architecture::make(ClusterKind::ZXXXZ, ArchStyle::AltCZ, 2);
    EXPECT_EQ(c.layers, (std::vector<LayerKind>{LayerKind::Ccorr, LayerKind::Zcorr}));
    EXPECT_EQ(c.target, PhaseTarget::ZXXXZvsZXZ);
    EXPECT_THROW(Architecture::make(ClusterKind::ZXZ, ArchStyle::AltCZ, 2), std::invalid_argument);
    EXPECT_EQ(a.prefix(2).layers.size(), 2u);
    EXPECT_THROW(a.prefix(5), std::invalid_argument);
    EXPECT_EQ(parse_arch_style(arch_style_name(ArchStyle::AltCZ)), ArchStyle::AltCZ);
}

TEST(Architecture, Validation) {
    EXPECT_EQ(max_depth(1215), 6);
    EXPECT_EQ(max_depth(15), 2);
    EXPECT_EQ(output_count(1215, 6), 1);
    EXPECT_EQ(output_count(15, 1), 5);
    auto a = Architecture::make(ClusterKind::ZXZ, ArchStyle::AltXZ, 2);
    EXPECT_NO_THROW(a.validate(15));
    EXPECT_THROW(a.validate(14), std::invalid_argument);
    EXPECT_THROW(a.validate(19), std::invalid_argument);  // m = 2
    EXPECT_THROW(Architecture::make(ClusterKind::ZXZ, ArchStyle::AltXZ, 3).validate(15), std::invalid_argument);
    auto pos = output_positions(15, 1);
    EXPECT_EQ(pos, (std::vector<int>{2, 5, 8, 11, 14}));
    EXPECT_EQ(output_positions(1215, 6), (std::vector<int>{608}));
}

TEST(Decode, NoiselessClusterGivesUnitOutput) {
    auto a = Architecture::make(ClusterKind::ZXZ, ArchStyle::AltXZ, 5);
    BitString zero(1215);
    EXPECT_EQ(shot_output(zero, a), 1.0);
    auto trace = decode_trace(zero, a);
    ASSERT_EQ(trace.size(), 6u);
    for (const auto &t : trace) {
        EXPECT_EQ(t.popcount(), 0u);
    }
    EXPECT_EQ(decode(zero, a).size(), 5u);
}

TEST(Decode, QcnnOutputStatistics) {
    auto a = Architecture::make(ClusterKind::ZXZ, ArchStyle::XOnly, 1);
    std::vector<BitString> shots;
    for (int k = 0; k < 4; k++) {
        BitString x(9);
        if (k % 2) {
            x.set(5, true);
        }
        shots.push_back(x);
    }
    // Outputs at 2, 5, 8; a lone flip at 5 only reaches the output at 5.
    auto est = qcnn_output(shots, a);
    EXPECT_NEAR(est.y, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(est.stderr_y, std::sqrt(1.0 / 27.0), 1e-12);
    EXPECT_THROW(qcnn_output({}, a), std::invalid_argument);
}

std::vector<int> flips_by_statevector(ClusterKind kind, Pauli letter, int site, int n) {
    auto state = apply_pauli(PauliString::single(site, letter), cluster_state(kind, n));
    auto probs = x_basis_probabilities(apply_gates(disentangler(kind, n), state));
    size_t best = std::max_element(probs.begin(), probs.end()) - probs.begin();
    EXPECT_NEAR(probs[best], 1.0, 1e-12);
    auto bits = index_to_bits(best, n);
    std::vector<int> out;
    for (int s = 1; s <= n; s++) {
        if (bits.get(s)) {
            out.push_back(s);
        }
    }
    return out;
}

TEST(FlipTable, MatchesStatevectorSyndromes) {
    int n = 9;
    for (auto kind : {ClusterKind::ZXZ, ClusterKind::ZXXXZ}) {
        for (int s = 1; s <= n; s++) {
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                auto got = flip_set(kind, p, s, n);
                std::sort(got.begin(), got.end());
                EXPECT_EQ(got, flips_by_statevector(kind, p, s, n)) << cluster_kind_name(kind) << " " << s;
            }
        }
    }
}

TEST(FlipTable, BulkSyndromes) {
    EXPECT_EQ(flip_set(ClusterKind::ZXZ, Pauli::X, 7, 15), (std::vector<int>{6, 8}));
    EXPECT_EQ(flip_set(ClusterKind::ZXZ, Pauli::Z, 7, 15), (std::vector<int>{7}));
    EXPECT_EQ(flip_set(ClusterKind::ZXXXZ, Pauli::X, 7, 15), (std::vector<int>{5, 9}));
    EXPECT_EQ(flip_set(ClusterKind::ZXXXZ, Pauli::Z, 7, 15), (std::vector<int>{6, 7, 8}));
}

// Exact syndrome distribution by enumerating every Kraus branch on the statevector.
std::vector<double> enumerated_distribution(ClusterKind kind, const ChannelSpec &ch, int n) {
    auto c = cluster_state(kind, n);
    auto w = disentangler(kind, n);
    std::vector<double> out(size_t{1} << n, 0.0);
    const double probs[4] = {ch.p_identity(), ch.px, ch.pz, ch.py};
    for (uint64_t code = 0; code < (uint64_t{1} << (2 * n)); code++) {
        PauliString p;
        double weight = 1;
        for (int s = 1; s <= n; s++) {
            int letter = static_cast<int>((code >> (2 * (s - 1))) & 3);
            weight *= probs[letter];
            p.set(s, static_cast<Pauli>(letter));
        }
        if (weight == 0) {
            continue;
        }
        auto dist = x_basis_probabilities(apply_gates(w, apply_pauli(p, c)));
        for (size_t k = 0; k < dist.size(); k++) {
            out[k] += weight * dist[k];
        }
    }
    return out;
}

TEST(Syndromes, ChannelDistributionMatchesEnumeration) {
    int n = 6;
    ChannelSpec ch{0.05, 0.1, 0.15};
    for (auto kind : {ClusterKind::ZXZ, ClusterKind::ZXXXZ}) {
        auto ref = enumerated_distribution(kind, ch, n);
        auto clean = x_basis_probabilities(apply_gates(disentangler(kind, n), cluster_state(kind, n)));
        auto got = apply_channel_to_distribution(clean, n, kind, ch);
        for (size_t k = 0; k < ref.size(); k++) {
            EXPECT_NEAR(got[k], ref[k], 1e-12) << k;
        }
    }
}

TEST(Syndromes, SamplerMatchesEnumeration) {
    int n = 6;
    ChannelSpec ch{0.05, 0.1, 0.15};
    size_t shots = 60000;
    for (auto kind : {ClusterKind::ZXZ, ClusterKind::ZXXXZ}) {
        auto ref = enumerated_distribution(kind, ch, n);
        auto samples = sample_syndromes_cluster(kind, ch, n, shots, 17, 2);
        std::vector<double> counts(ref.size(), 0);
        for (const auto &s : samples) {
            counts[bits_to_index(s)] += 1;
        }
        double chi2 = 0;
        int dof = -1;
        for (size_t k = 0; k < ref.size(); k++) {
            if (ref[k] > 0) {
                double e = ref[k] * static_cast<double>(shots);
                chi2 += (counts[k] - e) * (counts[k] - e) / e;
                dof++;
            } else {
                EXPECT_EQ(counts[k], 0);
            }
        }
        double crit = boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), 1e-4));
        EXPECT_LT(chi2, crit) << cluster_kind_name(kind);
    }
}

TEST(Syndromes, WorkerCountDoesNotChangeSamples) {
    ChannelSpec ch{0.02, 0.02, 0.02};
    auto a = sample_syndromes_cluster(ClusterKind::ZXZ, ch, 81, 500, 9, 1);
    auto b = sample_syndromes_cluster(ClusterKind::ZXZ, ch, 81, 500, 9, 3);
    EXPECT_EQ(a, b);
    auto c = sample_syndromes_cluster(ClusterKind::ZXZ, ch, 81, 500, 10, 1);
    EXPECT_NE(a, c);
}

TEST(Syndromes, BinaryRoundTrip) {
    auto samples = sample_syndromes_cluster(ClusterKind::ZXXXZ, {0.1, 0.1, 0.1}, 27, 40, 3);
    auto path = std::filesystem::temp_directory_path() / "qcnn_syndromes.bin";
    write_syndromes_binary(path, samples);
    EXPECT_EQ(read_syndromes_binary(path), samples);
    {
        std::ofstream bad(path, std::ios::binary);
        bad << "NOPE";
    }
    EXPECT_THROW(read_syndromes_binary(path), std::runtime_error);
    std::filesystem::remove(path);
}

TEST(ExactOutput, AgreesWithSampledMean) {
    int n = 9;
    ChannelSpec ch{0.05, 0.05, 0.05};
    auto arch = Architecture::make(ClusterKind::ZXZ, ArchStyle::XOnly, 1);
    auto clean = x_basis_probabilities(apply_gates(disentangler(ClusterKind::ZXZ, n), cluster_state(ClusterKind::ZXZ, n)));
    auto dist = apply_channel_to_distribution(clean, n, ClusterKind::ZXZ, ch);
    double exact = exact_output(dist, n, arch);
    auto samples = sample_syndromes_cluster(ClusterKind::ZXZ, ch, n, 40000, 4);
    auto est = qcnn_output(samples, arch);
    EXPECT_NEAR(est.y, exact, 4 * est.stderr_y);
    double centre = exact_output(dist, n, arch, true);
    EXPECT_LE(centre, 1.0);
    EXPECT_GE(centre, -1.0);
}

TEST(SopEstimate, NoiselessIsOne) {
    auto est = estimate_sop_cluster({0, 0, 0}, {ClusterKind::ZXZ, 5, 15}, 21, 100, 1);
    EXPECT_DOUBLE_EQ(est.y, 1.0);
    EXPECT_THROW(estimate_sop_cluster({0, 0, 0}, {ClusterKind::ZXZ, 5, 25}, 21, 100, 1), std::invalid_argument);
}

}  // namespace
}  // namespace qcnn
