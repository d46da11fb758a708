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

#include "ftlab/steane.h"

#include <random>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "ftlab/dense_oracle.h"

using namespace ftlab;
using namespace ftlab::steane;

namespace {

PauliOperator block(uint8_t x, uint8_t z) {
    return PauliOperator::from_masks(BLOCK, x, z);
}

// At most one bit flip and at most one sign flip, each at one of 7 positions or absent.
std::vector<PauliOperator> single_flip_classes() {
    std::vector<PauliOperator> out;
    for (int bx = -1; bx < 7; bx++) {
        for (int bz = -1; bz < 7; bz++) {
            out.push_back(block(bx < 0 ? 0 : uint8_t(1 << bx), bz < 0 ? 0 : uint8_t(1 << bz)));
        }
    }
    return out;
}

}  // namespace

TEST(steane, identity_has_zero_syndrome) {
    ASSERT_EQ(syndrome_of(PauliOperator::identity(7)).bits, 0);
    ASSERT_EQ(syndrome_of(PauliOperator::identity(7)).str(), "000000");
}

TEST(steane, syndrome_is_commutation_pattern) {
    const auto &gens = generators();
    for (const auto &e : single_flip_classes()) {
        auto s = syndrome_of(e);
        for (size_t k = 0; k < 6; k++) {
            ASSERT_EQ(s.bit(k + 1), !e.commutes_with(gens[k])) << e;
        }
    }
}

TEST(steane, bit_flip_on_last_qubit_matches_oracle) {
    auto e = PauliOperator::single(7, 6, PauliLetter::N);
    auto s = syndrome_of(e);
    auto em = oracle::pauli_matrix(e);
    const auto &gens = generators();
    for (size_t k = 0; k < 6; k++) {
        auto gm = oracle::pauli_matrix(gens[k]);
        double anti = (em * gm + gm * em).cwiseAbs().maxCoeff();
        double comm = (em * gm - gm * em).cwiseAbs().maxCoeff();
        ASSERT_EQ(s.bit(k + 1), anti < 1e-12);
        ASSERT_EQ(!s.bit(k + 1), comm < 1e-12);
    }
    // Qubit 7 lies in every support, so it anticommutes with all Z-type and Y-type checks.
    ASSERT_EQ(s.str(), "111111");
}

TEST(steane, sixty_four_distinct_syndromes) {
    std::set<uint8_t> seen;
    for (const auto &e : single_flip_classes()) {
        seen.insert(syndrome_of(e).bits);
    }
    ASSERT_EQ(seen.size(), 64u);
}

TEST(steane, syndrome_is_homomorphism) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; t++) {
        auto a = block(rng() & ALL, rng() & ALL);
        auto b = block(rng() & ALL, rng() & ALL);
        ASSERT_EQ(syndrome_of(a * b).bits, syndrome_of(a).bits ^ syndrome_of(b).bits);
    }
}

TEST(steane, generators_commute) {
    const auto &gens = generators();
    for (const auto &a : gens) {
        for (const auto &b : gens) {
            ASSERT_TRUE(a.commutes_with(b));
        }
        ASSERT_TRUE(a.commutes_with(encoded_z()));
        ASSERT_TRUE(a.commutes_with(logical_x()));
    }
    ASSERT_FALSE(encoded_z().commutes_with(logical_x()));
}

TEST(steane, paired_generators_give_bit_flip_checks) {
    const auto &gens = generators();
    for (size_t i = 0; i < 3; i++) {
        auto prod = gens[i] * gens[i + 3];
        ASSERT_EQ(prod.z_mask(), 0u);
        ASSERT_EQ(prod.x_mask(), SUPPORTS[i]);
    }
}

TEST(steane, correction_round_trip) {
    ASSERT_TRUE(correction_for(Syndrome{0, std::nullopt}).is_identity());
    for (uint8_t s = 0; s < 64; s++) {
        auto c = correction_for(Syndrome{s, std::nullopt});
        ASSERT_EQ(syndrome_of(c).bits, s);
        ASSERT_LE(std::popcount((unsigned)c.x_mask()), 1);
        ASSERT_LE(std::popcount((unsigned)c.z_mask()), 1);
    }
    auto s3 = PauliOperator::single(7, 2, PauliLetter::S);
    ASSERT_EQ(correction_for(syndrome_of(s3)), s3);
}

TEST(steane, correction_restores_codespace) {
    for (const auto &e : single_flip_classes()) {
        auto residue = correction_for(syndrome_of(e)) * e;
        ASSERT_EQ(syndrome_of(residue).bits, 0);
        ASSERT_EQ(logical_class((uint8_t)residue.x_mask(), (uint8_t)residue.z_mask()), 0);
    }
}

TEST(steane, logical_effect_examples) {
    Syndrome zero{0, std::nullopt};
    ASSERT_EQ(logical_effect(PauliOperator::identity(7), zero).str(), "+I");
    ASSERT_EQ(logical_effect(encoded_z(), zero).str(), "+S");
    ASSERT_EQ(logical_effect(logical_x(), zero).str(), "+N");
    for (size_t q = 0; q < 7; q++) {
        for (auto l : {PauliLetter::N, PauliLetter::S, PauliLetter::B}) {
            ASSERT_EQ(logical_effect(PauliOperator::single(7, q, l), zero).str(), "+I");
        }
    }
}

TEST(steane, logical_effect_with_existing_syndrome) {
    // A block already carrying a correctable error keeps its logical content when the
    // same error is applied again.
    for (const auto &e : single_flip_classes()) {
        ASSERT_EQ(logical_effect(e, syndrome_of(e)).str(), "+I");
    }
}

TEST(steane, stabilizers_are_logically_trivial) {
    for (const auto &g : generators()) {
        ASSERT_EQ(logical_class((uint8_t)g.x_mask(), (uint8_t)g.z_mask()), 0) << g;
    }
}

TEST(steane, wrong_width_rejected) {
    ASSERT_THROW(syndrome_of(PauliOperator::identity(6)), std::invalid_argument);
    ASSERT_THROW(logical_effect(PauliOperator::identity(8), Syndrome{}), std::invalid_argument);
}

TEST(steane, parities_determine_y_checks) {
    for (const auto &e : single_flip_classes()) {
        uint8_t x = (uint8_t)e.x_mask(), z = (uint8_t)e.z_mask();
        uint8_t xpar = 0, zpar = 0;
        for (size_t i = 0; i < 3; i++) {
            xpar |= (uint8_t)((std::popcount((unsigned)(x & SUPPORTS[i])) & 1) << i);
            zpar |= (uint8_t)((std::popcount((unsigned)(z & SUPPORTS[i])) & 1) << i);
        }
        ASSERT_EQ(syndrome_from_parities(xpar, zpar), syndrome_of(e).bits);
    }
}

TEST(steane, codespace_check_passes) {
    auto r = codespace_check();
    for (const auto &f : r.failures) {
        ADD_FAILURE() << f;
    }
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(r.codespace_dimension, 2u);
    ASSERT_TRUE(r.generators_commute);
    ASSERT_TRUE(r.weight_one_detected);
    ASSERT_TRUE(r.syndromes_distinct);
}

TEST(steane, table_csv) {
    auto csv = decoding_table_csv();
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    ASSERT_EQ(line, "syndrome,correction");
    size_t rows = 0;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        ASSERT_NE(comma, std::string::npos);
        auto op = PauliOperator::from_str(line.substr(comma + 1));
        ASSERT_EQ(syndrome_of(op).str(), line.substr(0, comma));
        rows++;
    }
    ASSERT_EQ(rows, 64u);
    ASSERT_EQ(csv.find('\r'), std::string::npos);
}
