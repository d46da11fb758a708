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

#ifndef FTLAB_STEANE_H
#define FTLAB_STEANE_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ftlab/pauli.h"

namespace ftlab::steane {

constexpr size_t BLOCK = 7;

/// Supports T1..T3 of the generators as 7-bit masks; bit j is qubit j+1.
/// T1 = {4,5,6,7}, T2 = {2,3,6,7}, T3 = {1,3,5,7}.
constexpr std::array<uint8_t, 3> SUPPORTS = {0b1111000, 0b1100110, 0b1010101};
/// Weight-3 representative of A1 (Z on qubits 1, 2, 3).
constexpr uint8_t LOGICAL_Z_SHORT = 0b0000111;
constexpr uint8_t ALL = 0b1111111;

/// S1..S3 are Z on T1..T3, S4..S6 are Y on T1..T3.
const std::array<PauliOperator, 6> &generators();
/// A1: Z on all seven qubits.
const PauliOperator &encoded_z();
/// Bit flips on all seven qubits.
const PauliOperator &logical_x();

struct Syndrome {
    uint8_t bits = 0;  // bit k-1 holds S_k
    std::optional<bool> encoded;

    bool bit(size_t k) const {
        return (bits >> (k - 1)) & 1;
    }
    bool operator==(const Syndrome &) const = default;
    /// "S1..S6" as 0/1 characters, plus "|A" when the encoded bit is present.
    std::string str() const;
};

Syndrome syndrome_of(const PauliOperator &err);
/// Mask form: x and z are 7-bit masks.
uint8_t syndrome_bits(uint8_t x, uint8_t z);

/// Generator syndrome from block parities: xpar[i] is the bit-flip parity on
/// T_{i+1}, zpar[i] the sign-flip parity.
uint8_t syndrome_from_parities(uint8_t xpar, uint8_t zpar);

struct Correction {
    uint8_t x = 0;
    uint8_t z = 0;
};

/// 64-entry decoding table: syndrome -> minimal-form correction.
const std::array<Correction, 64> &decoding_table();

PauliOperator correction_for(const Syndrome &s);

/// Logical class of a zero-syndrome residue: bit 0 = logical N, bit 1 = logical S.
uint8_t logical_class(uint8_t x, uint8_t z);

/// Induced standard error on the encoded qubit (1-qubit operator, phase dropped).
PauliOperator logical_effect(const PauliOperator &err, const Syndrome &s);

/// Decodes a residual block error and returns its logical class bits.
uint8_t decode_residual(uint8_t x, uint8_t z);

struct CodespaceReport {
    bool generators_commute = false;
    bool encoded_commutes = false;
    size_t codespace_dimension = 0;
    bool weight_one_detected = false;
    bool syndromes_distinct = false;
    bool oracle_syndromes_match = false;
    bool y_type_from_parities = false;
    std::vector<std::string> failures;
    bool ok() const {
        return failures.empty();
    }
};

/// Oracle-backed check of the code properties.
CodespaceReport codespace_check();

/// 64 rows: "syndrome,correction" with a header, LF endings.
std::string decoding_table_csv();

}  // namespace ftlab::steane

#endif
