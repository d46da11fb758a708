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

#include "ftlab/dense_oracle.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "ftlab/builders.h"

using namespace ftlab;
using namespace ftlab::oracle;

namespace {

Network one_qubit_network(std::initializer_list<GateKind> gates) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}};
    for (auto g : gates) {
        Slice s;
        s.gates.push_back({g, {0}});
        net.slices.push_back(s);
    }
    net.place_locations();
    return net;
}

// Inserts a bit flip on `qubit` right after slice `after`.
Network with_injected_flip(const Network &base, size_t after, uint32_t qubit) {
    Network net = base;
    Slice s;
    s.tag = base.slices[after].tag;
    s.gates.push_back({GateKind::BitFlip, {qubit}});
    net.slices.insert(net.slices.begin() + after + 1, s);
    return net;
}

}  // namespace

TEST(dense_oracle, gate_matrices_are_unitary) {
    for (auto g : {GateKind::BitFlip, GateKind::SignFlip, GateKind::PhaseShift, GateKind::Hadamard,
                   GateKind::ControlledNot, GateKind::ControlledHadamard}) {
        OperatorMatrix u = gate_matrix(g);
        OperatorMatrix id = OperatorMatrix::Identity(u.rows(), u.cols());
        ASSERT_LT((u.adjoint() * u - id).cwiseAbs().maxCoeff(), 1e-10) << gate_name(g);
    }
}

TEST(dense_oracle, hadamard_squared_is_identity) {
    OperatorMatrix u = unitary_of_network(one_qubit_network({GateKind::Hadamard, GateKind::Hadamard}));
    ASSERT_LT((u - OperatorMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(dense_oracle, cnot_swaps_last_two_basis_states) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}, {QubitRole::Ancilla}};
    Slice s;
    s.gates.push_back({GateKind::ControlledNot, {0, 1}});
    net.slices = {s};
    OperatorMatrix u = unitary_of_network(net);
    OperatorMatrix expected = OperatorMatrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = expected(2, 3) = expected(3, 2) = 1;
    ASSERT_LT((u - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(dense_oracle, unitary_rejects_measurement_and_size) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}};
    net.num_records = 1;
    Slice s;
    GateApplication m{GateKind::Measure, {0}};
    m.record = 0;
    s.gates.push_back(m);
    net.slices = {s};
    ASSERT_THROW(unitary_of_network(net), OracleError);
    Network big;
    big.qubits.resize(MAX_QUBITS + 1);
    ASSERT_THROW(unitary_of_network(big), OracleError);
    ASSERT_THROW(simulate_branches(big, StateVector::Zero(2)), OracleError);
}

TEST(dense_oracle, measuring_zero) {
    Network net;
    net.qubits = {{QubitRole::Ancilla}};
    net.num_records = 1;
    Slice s;
    GateApplication m{GateKind::Measure, {0}};
    m.record = 0;
    s.gates.push_back(m);
    net.slices = {s};
    auto branches = simulate_branches(net, basis_state(1, 0));
    ASSERT_EQ(branches.size(), 1u);
    ASSERT_NEAR(branches[0].probability, 1, 1e-12);
    ASSERT_EQ(branches[0].record[0], 0);
}

TEST(dense_oracle, branch_probabilities_sum_to_one) {
    Network net = build_toffoli_gadget();
    StateVector in = kron(kron(angle_state(0.4), angle_state(1.1)), kron(angle_state(-0.2), angle_state(0.0)));
    auto branches = simulate_branches(net, in);
    double total = 0;
    for (const auto &b : branches) {
        total += b.probability;
        ASSERT_NEAR(b.state.squaredNorm(), 1, 1e-10);
    }
    ASSERT_NEAR(total, 1, 1e-10);
}

TEST(dense_oracle, controlled_hadamard_projects_onto_eigenspaces) {
    // anc = qubit 0 starts in |0>, data = qubit 1 in an arbitrary state.
    Network net;
    net.qubits = {{QubitRole::Ancilla}, {QubitRole::Data}};
    net.num_records = 1;
    Slice a, b, c, d;
    a.gates.push_back({GateKind::Hadamard, {0}});
    b.gates.push_back({GateKind::ControlledHadamard, {0, 1}});
    c.gates.push_back({GateKind::Hadamard, {0}});
    GateApplication m{GateKind::Measure, {0}};
    m.record = 0;
    d.gates.push_back(m);
    net.slices = {a, b, c, d};
    StateVector in = kron(basis_state(1, 0), angle_state(0.9));
    auto branches = simulate_branches(net, in);
    ASSERT_EQ(branches.size(), 2u);
    OperatorMatrix h = gate_matrix(GateKind::Hadamard);
    for (const auto &br : branches) {
        StateVector data(2);
        size_t anc = br.record[0];
        data << br.state[2 * anc], br.state[2 * anc + 1];
        double sign = anc == 0 ? 1 : -1;
        ASSERT_LT((h * data - sign * data).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(dense_oracle, hadamard_eigenvectors) {
    OperatorMatrix h = gate_matrix(GateKind::Hadamard);
    StateVector plus = angle_state(std::numbers::pi / 8);
    StateVector minus = angle_state(5 * std::numbers::pi / 8);
    ASSERT_LT((h * plus - plus).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_LT((h * minus + minus).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(dense_oracle, cat_prep_accepts_clean_run) {
    Network net = build_cat_prep(1);
    auto branches = simulate_branches(net, basis_state(net.num_qubits(), 0));
    double accepted = 0;
    for (const auto &b : branches) {
        if (b.record[0] == 0) {
            accepted += b.probability;
        }
    }
    ASSERT_NEAR(accepted, 1, 1e-12);
}

TEST(dense_oracle, cat_prep_single_flip_detected_or_harmless) {
    Network base = build_cat_prep(1);
    size_t n = base.num_qubits();
    size_t w = n - 1;
    size_t dim = size_t{1} << n;
    int verify_record = -1;
    for (const auto &s : base.slices) {
        for (const auto &g : s.gates) {
            if (g.kind == GateKind::Measure) {
                verify_record = g.record;
            }
        }
    }
    ASSERT_GE(verify_record, 0);
    size_t all_cat = ((size_t{1} << w) - 1) << 1;  // qubits 0..w-1 are the high bits
    size_t checked = 0;
    for (size_t after = 0; after + 1 < base.slices.size(); after++) {
        for (uint32_t q = 0; q < w; q++) {
            Network net = with_injected_flip(base, after, q);
            auto branches = simulate_branches(net, basis_state(n, 0));
            for (const auto &b : branches) {
                if (b.record[verify_record] != 0) {
                    continue;
                }
                // Accepted: the cat register must be X^e (|0..0> + |1..1>) with e of weight <= 1
                // up to the global flip, possibly with a relative sign (a sign flip on one qubit).
                bool ok = false;
                for (size_t e = 0; e < (size_t{1} << w) && !ok; e++) {
                    size_t wt = (size_t)std::popcount(e);
                    if (wt > 1 && wt < w - 1) {
                        continue;
                    }
                    for (double sign : {1.0, -1.0}) {
                        StateVector target = StateVector::Zero(dim);
                        size_t shifted = e << 1;
                        target[shifted] = 1 / std::sqrt(2.0);
                        target[shifted ^ all_cat] = sign / std::sqrt(2.0);
                        ok = ok || std::abs(target.dot(b.state)) > 1 - 1e-10;
                    }
                }
                ASSERT_TRUE(ok) << "flip on qubit " << q << " after slice " << after;
                checked++;
            }
        }
    }
    ASSERT_GT(checked, 0u);
}

TEST(dense_oracle, strength_examples) {
    double p = 0.01;
    ASSERT_NEAR(strength({OperatorMatrix::Identity(2, 2)}), 1, 1e-12);
    double s = strength({std::sqrt(p) * gate_matrix(GateKind::BitFlip)});
    ASSERT_NEAR(s, std::sqrt(p), 1e-12);
    ASSERT_NEAR(s * s, p, 1e-12);
    OperatorMatrix n = gate_matrix(GateKind::BitFlip), z = gate_matrix(GateKind::SignFlip);
    double a = std::sqrt(p / 3);
    ASSERT_NEAR(strength({a * n, a * z, a * (n * z)}), std::sqrt(p), 1e-10);
    ASSERT_EQ(strength({}), 0);
}

TEST(dense_oracle, strength_is_monotone) {
    std::vector<OperatorMatrix> family;
    double prev = 0;
    for (auto g : {GateKind::Hadamard, GateKind::BitFlip, GateKind::PhaseShift, GateKind::SignFlip}) {
        family.push_back(0.3 * gate_matrix(g));
        double s = strength(family);
        ASSERT_GE(s, prev - 1e-12);
        prev = s;
    }
}

TEST(dense_oracle, global_phase_comparison) {
    OperatorMatrix h = gate_matrix(GateKind::Hadamard);
    ASSERT_TRUE(equal_up_to_global_phase(h, -h, 1e-12));
    ASSERT_TRUE(equal_up_to_global_phase(h, Complex(0, 1) * h, 1e-12));
    ASSERT_FALSE(equal_up_to_global_phase(h, gate_matrix(GateKind::BitFlip), 1e-3));
}

TEST(dense_oracle, toffoli_on_basis_inputs) {
    Network net = build_toffoli_gadget();
    ASSERT_EQ(net.num_qubits(), 4u);
    for (size_t in = 0; in < 8; in++) {
        StateVector state = kron(basis_state(3, in), basis_state(1, 0));
        auto branches = simulate_branches(net, state);
        size_t expected = in == 6 ? 7 : in == 7 ? 6 : in;
        for (const auto &b : branches) {
            double mass = std::norm(b.state[2 * expected]) + std::norm(b.state[2 * expected + 1]);
            ASSERT_NEAR(mass, 1, 1e-10) << in;
        }
    }
}

TEST(dense_oracle, matrix_json_round_trip) {
    OperatorMatrix m = gate_matrix(GateKind::PhaseShift) * 0.5;
    OperatorMatrix back = matrix_from_json(matrix_to_json(m));
    ASSERT_LT((m - back).cwiseAbs().maxCoeff(), 0.0 + 1e-15);
}
