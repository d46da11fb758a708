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

#include "ftlab/builders.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "ftlab/dense_oracle.h"
#include "ftlab/propagation.h"
#include "ftlab/steane.h"

using namespace ftlab;

namespace {

int parity_of(uint8_t v) {
    return std::popcount((unsigned)v) & 1;
}

uint8_t block_mask(const PauliOperator &p, const std::vector<uint32_t> &blk, bool x) {
    uint8_t m = 0;
    for (size_t j = 0; j < blk.size(); j++) {
        if (x ? p.x(blk[j]) : p.z(blk[j])) {
            m |= (uint8_t)(1 << j);
        }
    }
    return m;
}

int check_parity(const ParityCheck &c, const std::vector<int> &flips) {
    int v = 0;
    for (int r : c.records) {
        for (int f : flips) {
            v ^= (int)(r == f);
        }
    }
    return v;
}


int record_parity(const std::vector<int> &records, const std::vector<int> &flips) {
    int v = 0;
    for (int r : records) {
        v ^= (int)(std::count(flips.begin(), flips.end(), r) & 1);
    }
    return v;
}

uint8_t extraction_syndrome(const std::vector<ParityCheck> &checks, const std::vector<int> &flips) {
    uint8_t s = 0;
    for (size_t i = 0; i < checks.size(); i++) {
        s |= (uint8_t)(record_parity(checks[i].records, flips) << i);
    }
    return s;
}

// Propagation with the classical control a single error triggers: conditions that fire
// in the faulty run (relative to the clean run) are executed, iterated to a fixed point.
PropagationResult propagate_with_control(const Network &net, const ErrorLocation &loc, const PauliOperator &err) {
    std::vector<bool> fired(net.conditions.size(), false);
    PropagationResult r;
    for (int round = 0; round < 8; round++) {
        auto executes = [&](const Network &n, size_t slice) {
            int c = n.slices[slice].condition;
            return c < 0 || fired[c];
        };
        r = propagate_to_boundary(net, loc, err, executes);
        std::vector<bool> next(net.conditions.size(), false);
        for (size_t c = 0; c < net.conditions.size(); c++) {
            const auto &cond = net.conditions[c];
            if (cond.parent >= 0 && !next[cond.parent]) {
                continue;
            }
            switch (cond.kind) {
                case ConditionKind::RecordParity:
                case ConditionKind::RetryUntilAccepted:
                    next[c] = record_parity(cond.records, r.flips) != 0;
                    break;
                case ConditionKind::SecondAttempt: {
                    const auto &rec = net.recoveries[cond.recovery];
                    next[c] = extraction_syndrome(rec.extractions[0], r.flips) !=
                              extraction_syndrome(rec.extractions[1], r.flips);
                    break;
                }
                case ConditionKind::External:
                    break;
            }
        }
        if (next == fired) {
            return r;
        }
        fired = next;
    }
    ADD_FAILURE() << "classical control did not settle";
    return r;
}

}  // namespace

TEST(builders, syndrome_bit_counts) {
    for (int bit = 1; bit <= 6; bit++) {
        Network net = build_syndrome_bit_extraction(bit);
        ASSERT_EQ(count_locations(net), std::make_pair(size_t{19}, size_t{10})) << bit;
        auto all = count_locations(net, nullptr);
        ASSERT_GT(all.first, 19u);
    }
}

TEST(builders, extraction_counts) {
    for (int attempt : {1, 2}) {
        ASSERT_EQ(count_locations(build_syndrome_extraction(attempt)), std::make_pair(size_t{121}, size_t{60}));
    }
}

TEST(builders, transversal_counts) {
    for (auto g : {GateKind::BitFlip, GateKind::SignFlip, GateKind::PhaseShift, GateKind::Hadamard,
                   GateKind::ControlledNot}) {
        Network net = build_transversal_gate(g);
        ASSERT_EQ(count_locations(net).first, 7u);
        ASSERT_EQ(net.num_qubits(), g == GateKind::ControlledNot ? 14u : 7u);
        ASSERT_TRUE(check_transversality(net));
    }
    ASSERT_THROW(build_transversal_gate(GateKind::ControlledHadamard), std::invalid_argument);
    ASSERT_THROW(build_transversal_gate(GateKind::Measure), std::invalid_argument);
}

TEST(builders, cat_attempts) {
    Network first = build_cat_prep(1);
    Network second = build_cat_prep(2);
    for (const auto &loc : first.locations) {
        ASSERT_FALSE(loc.conditional);
    }
    for (const auto &loc : second.locations) {
        ASSERT_TRUE(loc.conditional);
    }
    ASSERT_THROW(build_cat_prep(3), std::invalid_argument);
}

TEST(builders, recovery_structure) {
    Network net = build_recovery();
    ASSERT_EQ(net.recoveries.size(), 1u);
    const auto &rec = net.recoveries[0];
    ASSERT_EQ(rec.extractions.size(), 4u);
    ASSERT_GE(rec.second_attempt, 0);
    size_t corrections = 0;
    for (const auto &s : net.slices) {
        for (const auto &g : s.gates) {
            if (g.kind == GateKind::PauliCorrection) {
                ASSERT_EQ(s.tag.kind, TagKind::CorrectionStep);
                corrections++;
            }
        }
    }
    ASSERT_EQ(corrections, 7u);
    for (const auto &loc : net.locations) {
        if (loc.tag.attempt == 2 && loc.tag.kind != TagKind::CorrectionStep) {
            ASSERT_TRUE(loc.conditional);
        }
    }
}

TEST(builders, data_flip_flips_anticommuting_checks) {
    Network net = build_recovery();
    const auto &rec = net.recoveries[0];
    for (size_t j = 0; j < 7; j++) {
        for (auto letter : {PauliLetter::N, PauliLetter::S, PauliLetter::B}) {
            PauliOperator err = PauliOperator::single(net.num_qubits(), rec.data[j], letter);
            auto r = propagate_from_slice(net, 0, err);
            uint8_t x = letter != PauliLetter::S ? uint8_t(1 << j) : 0;
            uint8_t z = letter != PauliLetter::N ? uint8_t(1 << j) : 0;
            for (int e : {0, 1}) {
                for (const auto &c : rec.extractions[e]) {
                    int expected = 0;
                    if (c.kind == CheckKind::ZCheck) {
                        expected = parity_of(x & steane::SUPPORTS[c.support]);
                    } else if (c.kind == CheckKind::XCheck) {
                        expected = parity_of(z & steane::SUPPORTS[c.support]);
                    }
                    ASSERT_EQ(check_parity(c, r.flips), expected) << "qubit " << j << " extraction " << e;
                }
            }
        }
    }
}

TEST(builders, parity_gadget_matches_oracle) {
    Network net = build_parity_gadget(3);
    ASSERT_LE(net.num_qubits(), oracle::MAX_QUBITS);
    std::vector<int> cat_records;
    for (const auto &s : net.slices) {
        for (const auto &g : s.gates) {
            if (g.kind == GateKind::Measure && s.tag.kind == TagKind::SyndromeBitExtraction) {
                cat_records.push_back(g.record);
            }
        }
    }
    ASSERT_EQ(cat_records.size(), 3u);
    const double q = std::numbers::pi / 4;
    for (int signs = 0; signs < 8; signs++) {
        oracle::StateVector in = oracle::angle_state((signs & 1) ? -q : q);
        for (int j = 1; j < 3; j++) {
            in = oracle::kron(in, oracle::angle_state((signs >> j) & 1 ? -q : q));
        }
        for (size_t k = 3; k < net.num_qubits(); k++) {
            in = oracle::kron(in, oracle::basis_state(1, 0));
        }
        auto branches = oracle::simulate_branches(net, in);
        ASSERT_FALSE(branches.empty());
        for (const auto &b : branches) {
            int parity = 0;
            for (int r : cat_records) {
                parity ^= b.record[r];
            }
            ASSERT_EQ(parity, std::popcount((unsigned)signs) & 1) << signs;
        }
    }
}

TEST(builders, single_error_stays_single_per_block) {
    for (const char *name : {"syndrome_extraction", "recovery", "gate_network", "gate_context", "encoded_zero_prep"}) {
        Network net = build_named(name);
        ASSERT_FALSE(net.blocks.empty()) << name;
        size_t checked = 0;
        for (const auto &loc : net.locations) {
            if (loc.conditional) {
                continue;
            }
            size_t w = loc.qubits.size();
            for (uint32_t code = 1; code < (1u << (2 * w)); code++) {
                PauliOperator err(w);
                for (size_t j = 0; j < w; j++) {
                    err.set_letter(j, PauliLetter((code >> (2 * j)) & 3));
                }
                auto r = propagate_with_control(net, loc, err);
                for (const auto &blk : net.blocks) {
                    uint8_t bx = block_mask(r.boundary, blk, true);
                    uint8_t bz = block_mask(r.boundary, blk, false);
                    // Equivalent to at most one error modulo stabilizers. The preparation
                    // measures A1, so on its output a logical sign flip acts trivially.
                    uint8_t residual = steane::decode_residual(bx, bz);
                    if (!net.recoveries.empty() && net.recoveries[0].measures_logical) {
                        residual &= 1;
                    }
                    ASSERT_EQ(residual, 0)
                        << name << " slice " << loc.slice << " " << loc.tag.str() << " " << err << " -> " << r.boundary;
                }
                checked++;
            }
        }
        ASSERT_GT(checked, 0u);
    }
}

TEST(builders, zero_prep_measures_logical) {
    Network net = build_encoded_zero_prep();
    ASSERT_EQ(net.recoveries.size(), 1u);
    ASSERT_TRUE(net.recoveries[0].measures_logical);
    size_t logical_checks = 0;
    for (const auto &c : net.recoveries[0].extractions[0]) {
        logical_checks += c.kind == CheckKind::LogicalZ;
    }
    ASSERT_EQ(logical_checks, 1u);
}

TEST(builders, pi8_prep_structure) {
    Network net = build_pi8_prep();
    size_t ch = 0;
    for (const auto &s : net.slices) {
        for (const auto &g : s.gates) {
            if (g.kind == GateKind::ControlledHadamard) {
                ASSERT_EQ(s.tag.kind, TagKind::Pi8Measurement);
                ch++;
            }
        }
    }
    ASSERT_EQ(ch, 14u);
    ASSERT_FALSE(net.acceptance.empty());
    ASSERT_GE(net.recoveries.size(), 2u);
}

TEST(builders, toffoli_restores_register) {
    Network net = build_toffoli_gadget();
    ASSERT_EQ(net.num_qubits(), 4u);
    // The ancilla ends measured; the three register qubits are never measured.
    for (const auto &s : net.slices) {
        for (const auto &g : s.gates) {
            if (g.kind == GateKind::Measure) {
                ASSERT_EQ(g.qubits[0], 3u);
            }
        }
    }
}

TEST(builders, named_lookup) {
    for (const auto &name : builder_names()) {
        ASSERT_NO_THROW(build_named(name)) << name;
    }
    ASSERT_THROW(build_named("nope"), std::invalid_argument);
}
