// Copyright 2026 The ftlab Authors
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

#include "ftlab/propagation.h"

#include <random>

#include "gtest/gtest.h"
#include "ftlab/dense_oracle.h"

using namespace ftlab;
using oracle::OperatorMatrix;

namespace {

double max_diff(const OperatorMatrix &a, const OperatorMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

std::vector<PauliOperator> all_paulis(size_t n, size_t max_weight) {
    std::vector<PauliOperator> out;
    size_t total = size_t{1} << (2 * n);
    for (size_t code = 0; code < total; code++) {
        PauliOperator p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_letter(q, PauliLetter((code >> (2 * q)) & 3));
        }
        if (p.weight() <= max_weight) {
            out.push_back(p);
        }
    }
    return out;
}

const GateKind NORMALIZER[] = {GateKind::BitFlip, GateKind::SignFlip, GateKind::PhaseShift, GateKind::Hadamard,
                               GateKind::ControlledNot};

Network normalizer_network(std::mt19937_64 &rng, size_t qubits, size_t slices) {
    Network net;
    for (size_t q = 0; q < qubits; q++) {
        net.qubits.push_back({QubitRole::Ancilla});
    }
    for (size_t s = 0; s < slices; s++) {
        Slice slice;
        auto g = NORMALIZER[rng() % 5];
        uint32_t a = (uint32_t)(rng() % qubits);
        uint32_t b = (uint32_t)((a + 1 + rng() % (qubits - 1)) % qubits);
        GateApplication app;
        app.kind = g;
        app.qubits = gate_arity(g) == 1 ? std::vector<uint32_t>{a} : std::vector<uint32_t>{a, b};
        slice.gates.push_back(app);
        net.slices.push_back(slice);
    }
    net.place_locations();
    return net;
}

}  // namespace

TEST(propagation, sign_flip_on_cnot_target) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}, {QubitRole::Ancilla}};
    Slice idle;
    idle.gates.push_back({GateKind::SignFlip, {1}});
    Slice cx;
    cx.gates.push_back({GateKind::ControlledNot, {0, 1}});
    net.slices = {idle, cx};
    net.place_locations();
    auto r = propagate_to_boundary(net, net.locations[0], PauliOperator::from_str("+S"));
    ASSERT_EQ(r.boundary.str(), "+SS");
    ASSERT_TRUE(r.flips.empty());
    auto id = propagate_to_boundary(net, net.locations[0], PauliOperator::from_str("+I"));
    ASSERT_TRUE(id.boundary.is_identity());
}

TEST(propagation, bit_flip_before_measurement) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}};
    net.num_records = 1;
    Slice prep;
    prep.gates.push_back({GateKind::Prepare, {0}});
    Slice meas;
    GateApplication m{GateKind::Measure, {0}};
    m.record = 0;
    meas.gates.push_back(m);
    net.slices = {prep, meas};
    net.place_locations();
    auto r = propagate_to_boundary(net, net.locations[0], PauliOperator::from_str("+N"));
    ASSERT_TRUE(r.boundary.has_identity_masks());
    ASSERT_EQ(r.flips, std::vector<int>{0});
    // Oracle: X|0> measures 1 with certainty.
    oracle::StateVector in = oracle::basis_state(1, 1);
    auto branches = oracle::simulate_branches(
        [&] {
            Network only = net;
            only.slices.erase(only.slices.begin());
            return only;
        }(),
        in);
    ASSERT_EQ(branches.size(), 1u);
    ASSERT_EQ(branches[0].record[0], 1);
}

TEST(propagation, matches_network_unitary) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; trial++) {
        Network net = normalizer_network(rng, 3, 8);
        Network tail = net;
        tail.slices.erase(tail.slices.begin());
        OperatorMatrix u = oracle::unitary_of_network(tail);
        for (const auto &e : all_paulis(3, 2)) {
            auto r = propagate_from_slice(net, 0, e);
            ASSERT_LT(max_diff(u * oracle::pauli_matrix(e), oracle::pauli_matrix(r.boundary) * u), 1e-10);
        }
    }
}

TEST(propagation, composes_gate_by_gate) {
    std::mt19937_64 rng(9);
    Network net = normalizer_network(rng, 4, 12);
    for (const auto &e : all_paulis(4, 2)) {
        PauliOperator step = e;
        for (size_t s = 1; s < net.slices.size(); s++) {
            for (const auto &g : net.slices[s].gates) {
                step = propagate_through_gate(step, g.kind, g.qubits);
            }
        }
        ASSERT_EQ(propagate_from_slice(net, 0, e).boundary, step);
    }
}

TEST(propagation, rejects_controlled_hadamard) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}, {QubitRole::Ancilla}};
    Slice a;
    a.gates.push_back({GateKind::Hadamard, {0}});
    Slice b;
    b.gates.push_back({GateKind::ControlledHadamard, {0, 1}});
    net.slices = {a, b};
    net.place_locations();
    ASSERT_THROW(propagate_to_boundary(net, net.locations[0], PauliOperator::from_str("+N")), UnsupportedPropagation);
}
