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

#include "ftlab/pauli.h"

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

}  // namespace

TEST(pauli, sign_and_bit_flip_anticommute) {
    auto s = PauliOperator::from_str("+S");
    auto n = PauliOperator::from_str("+N");
    auto sn = multiply(s, n);
    auto ns = multiply(n, s);
    ASSERT_TRUE(sn.same_masks(ns));
    ASSERT_EQ((sn.log_i() + 4 - ns.log_i()) % 4, 2);
}

TEST(pauli, identity_is_two_sided) {
    for (const auto &p : all_paulis(2, 2)) {
        for (uint8_t k = 0; k < 4; k++) {
            PauliOperator q = p;
            q.set_log_i(k);
            ASSERT_EQ(multiply(PauliOperator::identity(2), q), q);
            ASSERT_EQ(multiply(q, PauliOperator::identity(2)), q);
        }
    }
}

TEST(pauli, bit_flip_squared_matches_matrix) {
    auto n = PauliOperator::from_str("+N");
    auto nn = multiply(n, n);
    ASSERT_TRUE(nn.has_identity_masks());
    OperatorMatrix m = oracle::pauli_matrix(n);
    ASSERT_LT(max_diff(m * m, oracle::pauli_matrix(nn)), 1e-12);
}

TEST(pauli, product_matches_matrix_product) {
    auto ps = all_paulis(3, 2);
    for (const auto &a : ps) {
        for (const auto &b : ps) {
            OperatorMatrix expected = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
            ASSERT_LT(max_diff(oracle::pauli_matrix(a * b), expected), 1e-12) << a << " " << b;
        }
    }
}

TEST(pauli, associativity) {
    auto ps = all_paulis(2, 2);
    for (const auto &a : ps) {
        for (const auto &b : ps) {
            for (const auto &c : ps) {
                ASSERT_EQ((a * b) * c, a * (b * c));
            }
        }
    }
}

TEST(pauli, squares_have_empty_masks) {
    for (const auto &p : all_paulis(3, 3)) {
        auto sq = p * p;
        ASSERT_TRUE(sq.has_identity_masks());
        ASSERT_EQ(sq.log_i() % 2, 0);
    }
}

TEST(pauli, mismatched_sizes) {
    ASSERT_THROW(multiply(PauliOperator(2), PauliOperator(3)), std::invalid_argument);
}

TEST(pauli, text_round_trip) {
    for (const char *text : {"+INSB", "iN", "-SSI", "-iBBBB", "+"}) {
        ASSERT_EQ(PauliOperator::from_str(text).str(), text);
    }
    ASSERT_THROW(PauliOperator::from_str("+X"), std::invalid_argument);
}

TEST(pauli, wide_operators) {
    PauliOperator p(130);
    p.set_letter(129, PauliLetter::B);
    p.set_letter(3, PauliLetter::N);
    ASSERT_EQ(p.weight(), 2u);
    ASSERT_EQ(PauliOperator::from_str(p.str()), p);
    auto sq = p * p;
    ASSERT_TRUE(sq.has_identity_masks());
}

TEST(conjugate, printed_examples) {
    std::vector<uint32_t> one{0}, two{0, 1};
    ASSERT_EQ(conjugate_through_gate(PauliOperator::from_str("+S"), GateKind::Hadamard, one).str(), "+N");
    ASSERT_EQ(conjugate_through_gate(PauliOperator::from_str("+NI"), GateKind::ControlledNot, two).str(), "+NN");
    ASSERT_EQ(conjugate_through_gate(PauliOperator::from_str("+IS"), GateKind::ControlledNot, two).str(), "+SS");
    for (auto g : NORMALIZER) {
        std::vector<uint32_t> qs = gate_arity(g) == 1 ? one : two;
        auto id = PauliOperator::identity(qs.size());
        ASSERT_EQ(conjugate_through_gate(id, g, qs), id);
    }
}

TEST(conjugate, matches_oracle) {
    for (auto g : NORMALIZER) {
        size_t n = gate_arity(g);
        std::vector<uint32_t> qs = n == 1 ? std::vector<uint32_t>{0} : std::vector<uint32_t>{0, 1};
        OperatorMatrix u = oracle::gate_matrix(g);
        for (const auto &e : all_paulis(n, n)) {
            auto back = conjugate_through_gate(e, g, qs);
            ASSERT_LT(max_diff(oracle::pauli_matrix(e) * u, u * oracle::pauli_matrix(back)), 1e-12);
            auto fwd = propagate_through_gate(e, g, qs);
            ASSERT_LT(max_diff(u * oracle::pauli_matrix(e), oracle::pauli_matrix(fwd) * u), 1e-12);
        }
    }
}

TEST(conjugate, invertible) {
    for (auto g : NORMALIZER) {
        std::vector<uint32_t> qs = gate_arity(g) == 1 ? std::vector<uint32_t>{2} : std::vector<uint32_t>{2, 0};
        for (const auto &e : all_paulis(3, 3)) {
            ASSERT_EQ(propagate_through_gate(conjugate_through_gate(e, g, qs), g, qs), e);
            ASSERT_EQ(conjugate_through_gate(propagate_through_gate(e, g, qs), g, qs), e);
        }
    }
}

TEST(conjugate, rejects_other_gates) {
    std::vector<uint32_t> one{0}, two{0, 1};
    ASSERT_THROW(conjugate_through_gate(PauliOperator::from_str("+N"), GateKind::Measure, one), std::invalid_argument);
    ASSERT_THROW(conjugate_through_gate(PauliOperator::from_str("+NI"), GateKind::ControlledHadamard, two),
                 UnsupportedPropagation);
    ASSERT_EQ(conjugate_through_gate(PauliOperator::from_str("+II"), GateKind::ControlledHadamard, two).str(), "+II");
}

TEST(measurement_effect, flips) {
    ASSERT_TRUE(measurement_effect(PauliOperator::from_str("+N"), 0));
    ASSERT_TRUE(measurement_effect(PauliOperator::from_str("+B"), 0));
    ASSERT_FALSE(measurement_effect(PauliOperator::from_str("+S"), 0));
    ASSERT_FALSE(measurement_effect(PauliOperator::from_str("+I"), 0));
}

TEST(measurement_effect, both_flips_match_oracle) {
    // X|psi> and XZ|psi> have the same outcome distribution, opposite to |psi>.
    auto psi = oracle::angle_state(0.3);
    for (const char *err : {"+N", "+B"}) {
        oracle::StateVector out = oracle::pauli_matrix(PauliOperator::from_str(err)) * psi;
        ASSERT_NEAR(std::norm(out[0]), std::norm(psi[1]), 1e-12);
        ASSERT_NEAR(std::norm(out[1]), std::norm(psi[0]), 1e-12);
    }
}

