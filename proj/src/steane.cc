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

#include <bit>
#include <set>

#include "ftlab/dense_oracle.h"

namespace ftlab::steane {

namespace {

int parity(uint8_t v) {
    return std::popcount(v) & 1;
}

PauliOperator block_op(uint8_t x, uint8_t z) {
    return PauliOperator::from_masks(BLOCK, x, z);
}

std::array<Correction, 64> make_table() {
    std::array<Correction, 64> table{};
    std::array<bool, 64> seen{};
    for (int xq = 0; xq <= 7; xq++) {
        for (int zq = 0; zq <= 7; zq++) {
            uint8_t x = xq ? (uint8_t)(1 << (xq - 1)) : 0;
            uint8_t z = zq ? (uint8_t)(1 << (zq - 1)) : 0;
            uint8_t s = syndrome_bits(x, z);
            if (seen[s]) {
                throw std::logic_error("decoding table collision");
            }
            seen[s] = true;
            table[s] = {x, z};
        }
    }
    return table;
}

}  // namespace

const std::array<PauliOperator, 6> &generators() {
    static const std::array<PauliOperator, 6> gens = [] {
        std::array<PauliOperator, 6> g;
        for (size_t i = 0; i < 3; i++) {
            g[i] = block_op(0, SUPPORTS[i]);
            // Y = i X Z on each of the four qubits; i^4 = 1.
            g[i + 3] = block_op(SUPPORTS[i], SUPPORTS[i]);
        }
        return g;
    }();
    return gens;
}

const PauliOperator &encoded_z() {
    static const PauliOperator a1 = block_op(0, ALL);
    return a1;
}

const PauliOperator &logical_x() {
    static const PauliOperator lx = block_op(ALL, 0);
    return lx;
}

std::string Syndrome::str() const {
    std::string out;
    for (size_t k = 1; k <= 6; k++) {
        out.push_back(bit(k) ? '1' : '0');
    }
    if (encoded.has_value()) {
        out += *encoded ? "|1" : "|0";
    }
    return out;
}

uint8_t syndrome_bits(uint8_t x, uint8_t z) {
    uint8_t s = 0;
    for (size_t i = 0; i < 3; i++) {
        // Z_T anticommutes with the bit-flip part; Y_T with bit-flip xor sign-flip.
        s |= (uint8_t)(parity(x & SUPPORTS[i]) << i);
        s |= (uint8_t)(parity((x ^ z) & SUPPORTS[i]) << (i + 3));
    }
    return s;
}

uint8_t syndrome_from_parities(uint8_t xpar, uint8_t zpar) {
    return (uint8_t)((xpar & 7) | (((xpar ^ zpar) & 7) << 3));
}

Syndrome syndrome_of(const PauliOperator &err) {
    if (err.num_qubits() != BLOCK) {
        throw std::invalid_argument("syndrome_of expects a 7-qubit operator");
    }
    return Syndrome{syndrome_bits((uint8_t)err.x_mask(), (uint8_t)err.z_mask()), std::nullopt};
}

const std::array<Correction, 64> &decoding_table() {
    static const std::array<Correction, 64> table = make_table();
    return table;
}

PauliOperator correction_for(const Syndrome &s) {
    const auto &c = decoding_table()[s.bits & 63];
    return block_op(c.x, c.z);
}

uint8_t logical_class(uint8_t x, uint8_t z) {
    // Logical N anticommutes with A1; logical S anticommutes with the all-N representative.
    uint8_t n = (uint8_t)parity(x & ALL);
    uint8_t s = (uint8_t)parity(z & ALL);
    return (uint8_t)(n | (s << 1));
}

uint8_t decode_residual(uint8_t x, uint8_t z) {
    const auto &c = decoding_table()[syndrome_bits(x, z)];
    return logical_class(x ^ c.x, z ^ c.z);
}

PauliOperator logical_effect(const PauliOperator &err, const Syndrome &s) {
    if (err.num_qubits() != BLOCK) {
        throw std::invalid_argument("logical_effect expects a 7-qubit operator");
    }
    const auto &pre = decoding_table()[s.bits & 63];
    uint8_t x = (uint8_t)err.x_mask() ^ pre.x;
    uint8_t z = (uint8_t)err.z_mask() ^ pre.z;
    uint8_t cls = decode_residual(x, z);
    return PauliOperator::from_masks(1, cls & 1, (cls >> 1) & 1);
}

CodespaceReport codespace_check() {
    using namespace oracle;
    CodespaceReport report;
    const auto &gens = generators();

    std::vector<OperatorMatrix> mats;
    for (const auto &g : gens) {
        mats.push_back(pauli_matrix(g));
    }
    OperatorMatrix a1 = pauli_matrix(encoded_z());
    size_t dim = (size_t)1 << BLOCK;
    OperatorMatrix id = OperatorMatrix::Identity(dim, dim);

    report.generators_commute = true;
    for (size_t i = 0; i < mats.size(); i++) {
        for (size_t j = 0; j < mats.size(); j++) {
            if ((mats[i] * mats[j] - mats[j] * mats[i]).cwiseAbs().maxCoeff() > 1e-12) {
                report.generators_commute = false;
            }
        }
    }
    if (!report.generators_commute) {
        report.failures.push_back("generators do not commute");
    }
    report.encoded_commutes = true;
    for (const auto &m : mats) {
        if ((m * a1 - a1 * m).cwiseAbs().maxCoeff() > 1e-12) {
            report.encoded_commutes = false;
        }
    }
    if (!report.encoded_commutes) {
        report.failures.push_back("A1 does not commute with the generators");
    }

    OperatorMatrix proj = id;
    for (const auto &m : mats) {
        proj = proj * ((id + m) * 0.5);
    }
    double trace = proj.trace().real();
    report.codespace_dimension = (size_t)std::llround(trace);
    if (std::abs(trace - 2) > 1e-9 || (proj * proj - proj).cwiseAbs().maxCoeff() > 1e-9) {
        report.failures.push_back("code space dimension is " + std::to_string(trace) + ", expected 2");
    }

    report.weight_one_detected = true;
    for (size_t q = 0; q < BLOCK; q++) {
        for (auto letter : {PauliLetter::N, PauliLetter::S, PauliLetter::B}) {
            if (syndrome_of(PauliOperator::single(BLOCK, q, letter)).bits == 0) {
                report.weight_one_detected = false;
            }
        }
    }
    if (!report.weight_one_detected) {
        report.failures.push_back("a weight-1 error has zero syndrome");
    }

    std::set<uint8_t> distinct;
    for (int xq = 0; xq <= 7; xq++) {
        for (int zq = 0; zq <= 7; zq++) {
            distinct.insert(syndrome_bits(xq ? (uint8_t)(1 << (xq - 1)) : 0, zq ? (uint8_t)(1 << (zq - 1)) : 0));
        }
    }
    report.syndromes_distinct = distinct.size() == 64;
    if (!report.syndromes_distinct) {
        report.failures.push_back("the 64 minimal errors do not have distinct syndromes");
    }

    // Encoded |0>: project |0000000> and normalize.
    StateVector zero = proj * basis_state(BLOCK, 0);
    zero /= zero.norm();
    StateVector one = pauli_matrix(logical_x()) * zero;
    report.oracle_syndromes_match = true;
    report.y_type_from_parities = true;
    for (int xq = 0; xq <= 7; xq++) {
        for (int zq = 0; zq <= 7; zq++) {
            PauliOperator e = block_op(xq ? (uint8_t)(1 << (xq - 1)) : 0, zq ? (uint8_t)(1 << (zq - 1)) : 0);
            Syndrome s = syndrome_of(e);
            OperatorMatrix em = pauli_matrix(e);
            for (const StateVector *basis : {&zero, &one}) {
                StateVector psi = em * (*basis);
                for (size_t k = 0; k < 6; k++) {
                    double ev = (psi.adjoint() * mats[k] * psi)(0, 0).real();
                    if (std::abs(ev - (s.bit(k + 1) ? -1.0 : 1.0)) > 1e-9) {
                        report.oracle_syndromes_match = false;
                    }
                }
                // Y_T eigenvalue equals the product of the X_T and Z_T parities.
                for (size_t i = 0; i < 3; i++) {
                    OperatorMatrix xt = pauli_matrix(block_op(SUPPORTS[i], 0));
                    OperatorMatrix zt = pauli_matrix(block_op(0, SUPPORTS[i]));
                    double ex = (psi.adjoint() * xt * psi)(0, 0).real();
                    double ez = (psi.adjoint() * zt * psi)(0, 0).real();
                    double ey = (psi.adjoint() * mats[i + 3] * psi)(0, 0).real();
                    if (std::abs(ey - ex * ez) > 1e-9 || std::abs(std::abs(ex) - 1) > 1e-9) {
                        report.y_type_from_parities = false;
                    }
                }
            }
        }
    }
    if (!report.oracle_syndromes_match) {
        report.failures.push_back("oracle eigenvalues disagree with mask syndromes");
    }
    if (!report.y_type_from_parities) {
        report.failures.push_back("Y-type eigenvalues are not the product of X and Z parities");
    }
    return report;
}

std::string decoding_table_csv() {
    std::string out = "syndrome,correction\n";
    for (size_t s = 0; s < 64; s++) {
        Syndrome syn{(uint8_t)s, std::nullopt};
        out += syn.str() + "," + correction_for(syn).str() + "\n";
    }
    return out;
}

}  // namespace ftlab::steane
