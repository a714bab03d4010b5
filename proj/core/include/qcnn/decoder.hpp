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

#ifndef QCNN_DECODER_HPP
#define QCNN_DECODER_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/bits.hpp"
#include "qcnn/circuits.hpp"
#include "qcnn/noise.hpp"
#include "qcnn/pauli.hpp"

namespace qcnn {

int pow3i(int e);

/// Truth table of one correction layer, restricted to the surviving bit.
struct DecoderTable {
    ClusterKind phase = ClusterKind::ZXZ;
    LayerKind layer = LayerKind::Xcorr;
    /// Window offsets in units of s = 3^(f-1), ascending. Bit i of a table index is offsets[i].
    std::vector<int> offsets;
    std::vector<uint8_t> bits;

    int width() const {
        return static_cast<int>(offsets.size());
    }
    int max_offset() const;
    bool operator==(const DecoderTable &other) const = default;
};

/// Cached table extracted from qec_unitary(phase, layer, 1, 0).
const DecoderTable &derive_table(ClusterKind phase, LayerKind layer);
/// Uncached extraction at scale f, with offsets divided back by 3^(f-1).
DecoderTable derive_table_at(ClusterKind phase, LayerKind layer, int f);

/// The layer restricted to the window offsets in `inside` (bit i is offsets[i]): gates touching any other
/// offset are dropped, as on an open chain. Tables that are not the derived table of their phase and
/// layer are returned unchanged.
const DecoderTable &truncated_table(const DecoderTable &table, uint32_t inside);

/// Bits at positions p = c (mod 3^f) get table(window around p); all other positions are 0.
/// Near the chain ends the truncated table is used.
BitString decode_layer(const BitString &in, const DecoderTable &table, int f, int center);

enum class PhaseTarget { ZXZ, ZXXXZ, ZXZvsZXXXZ, ZXXXZvsZXZ };
enum class ArchStyle { XOnly, AltXZ, AltCZ };

std::string_view arch_style_name(ArchStyle style);
ArchStyle parse_arch_style(std::string_view text);
std::string_view phase_target_name(PhaseTarget target);

struct Architecture {
    PhaseTarget target = PhaseTarget::ZXZ;
    ClusterKind disentangler = ClusterKind::ZXZ;
    ArchStyle style = ArchStyle::AltXZ;
    /// layers[f - 1] is the kind of layer f.
    std::vector<LayerKind> layers;

    /// x-only: every layer Xcorr. alt-xz: odd f Xcorr, even f Zcorr. alt-cz: odd f Ccorr, even f Zcorr (ZXXXZ only).
    static Architecture make(ClusterKind disentangler, ArchStyle style, int depth);

    int depth() const {
        return static_cast<int>(layers.size());
    }
    const DecoderTable &table(int f) const;
    Architecture prefix(int depth) const;
    void validate(int n) const;
    bool operator==(const Architecture &other) const = default;
};

int max_depth(int n);
int output_count(int n, int depth);
std::vector<int> output_positions(int n, int depth);

/// Layer-by-layer results: trace[0] = x, trace[f] = after layer f.
std::vector<BitString> decode_trace(const BitString &x, const Architecture &arch);
/// The m output bits G(x) at positions c + j 3^d.
std::vector<uint8_t> decode(const BitString &x, const Architecture &arch);

struct OutputEstimate {
    double y = 0;
    double stderr_y = 0;
    size_t shots = 0;
};

/// Per shot, the mean of (1 - 2 G(x)_pos) over outputs; y is the mean of that over shots.
double shot_output(const BitString &x, const Architecture &arch);
OutputEstimate qcnn_output(std::span<const BitString> samples, const Architecture &arch);

/// Measurement bits flipped by single-site errors after the disentangler, from exact conjugation.
class FlipTable {
   public:
    FlipTable(ClusterKind kind, int n);
    static std::shared_ptr<const FlipTable> get(ClusterKind kind, int n);

    const std::vector<int> &flips(Pauli letter, int site) const;
    ClusterKind kind() const {
        return kind_;
    }
    int n() const {
        return n_;
    }

   private:
    ClusterKind kind_;
    int n_;
    // index (site - 1) * 4 + letter
    std::vector<std::vector<int>> flips_;
};

std::vector<int> flip_set(ClusterKind kind, Pauli letter, int site, int n);

/// One syndrome from the cluster state of the table's kind under the channel.
BitString sample_syndrome(const FlipTable &flips, const ChannelSpec &ch, ShotRng &rng);
/// Shot k uses stream (seed, k).
std::vector<BitString> sample_syndromes_cluster(ClusterKind kind, const ChannelSpec &ch, int n, size_t shots,
                                                uint64_t seed, unsigned workers = 1);

/// Exact X-basis distribution after independent single-site errors, given the noiseless distribution
/// of W|psi>. Indexing follows the statevector convention.
std::vector<double> apply_channel_to_distribution(std::span<const double> probs, int n, ClusterKind kind,
                                                  const ChannelSpec &ch);

/// Sum_x P_x * (mean over outputs of (1 - 2 G(x)_pos)); center_only restricts to the central output.
double exact_output(std::span<const double> probs, int n, const Architecture &arch, bool center_only = false);

/// <S> for a string order parameter estimated from cluster-state syndromes: W S W^dagger is +-(X string),
/// so each shot contributes the sign times the parity of the flipped bits on its support.
OutputEstimate estimate_sop_cluster(const ChannelSpec &ch, const SopSpec &spec, int n, size_t shots, uint64_t seed);

/// Text export: "phase ..", "layer ..", "offsets ..", "table <hex>", bytes least significant row first.
std::string table_to_text(const DecoderTable &table);
DecoderTable table_from_text(std::string_view text);

/// Packed binary: "QCSY", uint32 n, uint64 shots, then ceil(n/8) bytes per shot (site j at bit j-1).
void write_syndromes_binary(const std::filesystem::path &path, std::span<const BitString> samples);
std::vector<BitString> read_syndromes_binary(const std::filesystem::path &path);

}  // namespace qcnn

#endif
