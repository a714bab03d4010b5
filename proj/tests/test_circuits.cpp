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
#include <map>

#include "oracles/dense.hpp"
#include "qcnn/circuits.hpp"

namespace qcnn {
namespace {

const GateKind kAllKinds[] = {GateKind::CZ,      GateKind::CyY,     GateKind::Z,   GateKind::H,     GateKind::CxZ,
                              GateKind::CxCxZ,   GateKind::CxCxNOT, GateKind::CxY, GateKind::CxCxY, GateKind::SWAP};

Gate sample_gate(GateKind kind) {
    switch (gate_arity(kind)) {
        case 1:
            return Gate::make(kind, {3});
        case 2:
            return Gate::make(kind, {4, 2});
        default:
            return Gate::make(kind, {1, 4, 2});
    }
}

TEST(Gates, NamesRoundTrip) {
    for (auto k : kAllKinds) {
        EXPECT_EQ(parse_gate_kind(gate_name(k)), k);
    }
    EXPECT_THROW(parse_gate_kind("CNOTX"), std::invalid_argument);
    EXPECT_THROW(Gate::make(GateKind::CZ, {1}), std::invalid_argument);
    EXPECT_THROW(Gate::make(GateKind::CZ, {2, 2}), std::invalid_argument);
}

TEST(Gates, StatevectorMatchesDenseDefinition) {
    auto state = oracle::random_state(4, 21);
    for (auto k : kAllKinds) {
        auto g = sample_gate(k);
        StateVector s = state;
        apply_gate_inplace(g, s);
        oracle::Vec ref = oracle::dense_gate(g, 4) * oracle::to_vec(state);
        EXPECT_TRUE(oracle::to_vec(s).isApprox(ref, 1e-12)) << gate_name(k);
    }
}

TEST(Gates, AreHermitianInvolutions) {
    for (auto k : kAllKinds) {
        auto u = oracle::dense_gate(sample_gate(k), 4);
        EXPECT_TRUE((u * u).isIdentity(1e-12)) << gate_name(k);
        EXPECT_TRUE(u.isApprox(u.adjoint())) << gate_name(k);
    }
}

TEST(Gates, TextRoundTrip) {
    GateList gates;
    for (auto k : kAllKinds) {
        gates.push_back(sample_gate(k));
    }
    EXPECT_EQ(gates_from_text(gates_to_text(gates)), gates);
    EXPECT_THROW(gates_from_text("CZ 1"), std::invalid_argument);
}

TEST(Circuits, InverseUndoes) {
    auto gates = disentangler(ClusterKind::ZXXXZ, 7);
    auto state = oracle::random_state(7, 2);
    auto back = apply_gates(inverse(gates), apply_gates(gates, state));
    EXPECT_NEAR(fidelity(back, state), 1.0, 1e-12);
}

TEST(Circuits, TruncateDropsOutOfChainGates) {
    GateList g{Gate::make(GateKind::CZ, {0, 1}), Gate::make(GateKind::CZ, {1, 2}),
               Gate::make(GateKind::CxCxZ, {3, 6, 4})};
    auto t = truncate_to_chain(g, 5);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0], g[1]);
}

TEST(ClusterState, StabilizedInTheBulk) {
    for (auto kind : {ClusterKind::ZXZ, ClusterKind::ZXXXZ}) {
        int n = 11;
        auto c = cluster_state(kind, n);
        int lo = kind == ClusterKind::ZXZ ? 2 : 3;
        for (int j = lo; j <= n + 1 - lo; j++) {
            EXPECT_NEAR(expectation(stabilizer(kind, j, n), c), 1.0, 1e-12) << cluster_kind_name(kind) << " " << j;
        }
    }
}

TEST(ClusterState, DisentanglerGivesPlusState) {
    for (auto kind : {ClusterKind::ZXZ, ClusterKind::ZXXXZ}) {
        auto c = cluster_state(kind, 9);
        auto w = apply_gates(disentangler(kind, 9), c);
        EXPECT_NEAR(fidelity(w, StateVector::plus_state(9)), 1.0, 1e-12);
    }
}

TEST(Clifford, ConjugationMatchesDense) {
    int n = 5;
    std::mt19937_64 rng(4);
    for (auto kind : {ClusterKind::ZXZ, ClusterKind::ZXXXZ}) {
        auto gates = disentangler(kind, n);
        auto w = oracle::dense_circuit(gates, n);
        for (int t = 0; t < 25; t++) {
            PauliString p;
            for (int s = 1; s <= n; s++) {
                p.set(s, static_cast<Pauli>(rng() % 4));
            }
            auto fwd = conjugate_forward(p, gates);
            auto bwd = conjugate_backward(p, gates);
            auto dp = oracle::dense(p, n);
            EXPECT_TRUE(oracle::dense(fwd, n).isApprox(w * dp * w.adjoint(), 1e-12)) << p.str();
            EXPECT_TRUE(oracle::dense(bwd, n).isApprox(w.adjoint() * dp * w, 1e-12)) << p.str();
        }
    }
}

TEST(Clifford, ToffoliClassIsRejected) {
    auto p = PauliString::single(1, Pauli::Z);
    EXPECT_THROW(conjugate_forward(p, {Gate::make(GateKind::CxCxZ, {1, 2, 3})}), std::invalid_argument);
}

TEST(Sampling, XBasisFrequencies) {
    auto state = oracle::random_state(4, 8);
    auto probs = x_basis_probabilities(state);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    ShotRng rng(3, 0);
    int shots = 40000;
    auto samples = sample_x_basis(state, shots, rng);
    std::vector<double> counts(probs.size(), 0);
    for (const auto &s : samples) {
        counts[bits_to_index(s)] += 1;
    }
    double chi2 = 0;
    for (size_t k = 0; k < probs.size(); k++) {
        double e = probs[k] * shots;
        chi2 += (counts[k] - e) * (counts[k] - e) / e;
    }
    double crit = boost::math::quantile(
        boost::math::complement(boost::math::chi_squared(static_cast<double>(probs.size() - 1)), 1e-4));
    EXPECT_LT(chi2, crit);
}

TEST(Sampling, XBasisProbabilitiesOfProductState) {
    auto x = BitString::from_string("10011");
    auto probs = x_basis_probabilities(StateVector::x_basis_state(x));
    EXPECT_NEAR(probs[bits_to_index(x)], 1.0, 1e-12);
    EXPECT_EQ(index_to_bits(bits_to_index(x), 5), x);
}

TEST(Sampling, DiscreteSamplerHitsSupportOnly) {
    std::vector<double> p{0.0, 0.25, 0.0, 0.75};
    DiscreteSampler s(p);
    std::map<uint64_t, int> hits;
    for (uint64_t k = 0; k < 4000; k++) {
        ShotRng rng(5, k);
        hits[s.sample(rng)]++;
    }
    EXPECT_EQ(hits.count(0), 0u);
    EXPECT_EQ(hits.count(2), 0u);
    EXPECT_NEAR(hits[3] / 4000.0, 0.75, 0.03);
}

TEST(QecUnitary, LightConeAndPermutation) {
    for (auto [phase, layer] : {std::pair{ClusterKind::ZXZ, LayerKind::Xcorr}, std::pair{ClusterKind::ZXZ, LayerKind::Zcorr},
                                std::pair{ClusterKind::ZXXXZ, LayerKind::Xcorr},
                                std::pair{ClusterKind::ZXXXZ, LayerKind::Ccorr}}) {
        auto gates = qec_unitary(phase, layer, 1, 0);
        auto window = light_cone(gates);
        EXPECT_TRUE(std::is_sorted(window.begin(), window.end()));
        auto perm = extract_permutation(gates, window);
        // Dense check of |x> -> phase |x'> on the window, remapped to sites 1..w.
        int w = static_cast<int>(window.size());
        GateList local;
        for (auto g : gates) {
            for (int k = 0; k < g.arity(); k++) {
                g.q[k] = static_cast<int>(std::find(window.begin(), window.end(), g.q[k]) - window.begin()) + 1;
            }
            local.push_back(g);
        }
        auto u = oracle::dense_circuit(local, w);
        for (uint32_t x = 0; x < (1u << w); x++) {
            BitString in(w);
            for (int k = 0; k < w; k++) {
                in.set(k + 1, (x >> k) & 1);
            }
            oracle::Vec out = u * oracle::to_vec(StateVector::x_basis_state(in));
            BitString img(w);
            for (int k = 0; k < w; k++) {
                img.set(k + 1, (perm.table[x] >> k) & 1);
            }
            oracle::Vec ref = oracle::to_vec(StateVector::x_basis_state(img));
            EXPECT_NEAR(std::abs(ref.dot(out)), 1.0, 1e-10) << layer_kind_name(layer) << " row " << x;
        }
    }
}

TEST(QecUnitary, HadamardViolatesTheEquivalenceCondition) {
    GateList g{Gate::make(GateKind::H, {1})};
    std::vector<int> window{1};
    EXPECT_THROW(extract_permutation(g, window), EqCondViolated);
}

}  // namespace
}  // namespace qcnn
