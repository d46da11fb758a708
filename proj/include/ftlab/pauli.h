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

#ifndef FTLAB_PAULI_H
#define FTLAB_PAULI_H

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ftlab {

/// Thrown when an error has to be pushed through a gate that does not map
/// standard errors to standard errors.
struct UnsupportedPropagation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GateKind : uint8_t {
    BitFlip,             // N
    SignFlip,            // S
    PhaseShift,          // S_i = diag(1, i)
    Hadamard,            // H
    ControlledNot,       // N_2, control first
    ControlledHadamard,  // controlled H, control first; not a normalizer gate
    Prepare,             // reset to cos(a)|0> + sin(a)|1>
    Measure,             // classical basis
    PauliCorrection,     // classically chosen standard error, filled in by the decoder
};

const char *gate_name(GateKind kind);
GateKind gate_from_name(std::string_view name);
size_t gate_arity(GateKind kind);
bool gate_is_unitary(GateKind kind);
bool gate_is_normalizer(GateKind kind);

/// Per-qubit letter in the text form.
enum class PauliLetter : uint8_t { I = 0, N = 1, S = 2, B = 3 };

/// i^k * prod_q X_q^{x_q} Z_q^{z_q}, with X to the left of Z on each qubit.
///
/// N is the matrix [[0,1],[1,0]], S is [[1,0],[0,-1]], B = N*S.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits);

    static PauliOperator identity(size_t num_qubits);
    static PauliOperator single(size_t num_qubits, size_t qubit, PauliLetter letter);
    static PauliOperator from_masks(size_t num_qubits, uint64_t x, uint64_t z, uint8_t log_i = 0);
    static PauliOperator from_str(std::string_view text);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_words() const {
        return xs_.size();
    }
    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    PauliLetter letter(size_t q) const {
        return PauliLetter((int)x(q) | ((int)z(q) << 1));
    }
    void set_letter(size_t q, PauliLetter letter);

    /// Phase exponent k in i^k.
    uint8_t log_i() const {
        return log_i_;
    }
    void set_log_i(uint8_t k) {
        log_i_ = k & 3;
    }

    std::span<const uint64_t> x_words() const {
        return xs_;
    }
    std::span<const uint64_t> z_words() const {
        return zs_;
    }
    /// Low 64 qubits of each mask.
    uint64_t x_mask() const {
        return xs_.empty() ? 0 : xs_[0];
    }
    uint64_t z_mask() const {
        return zs_.empty() ? 0 : zs_[0];
    }

    size_t weight() const;
    bool has_identity_masks() const;
    bool is_identity() const {
        return log_i_ == 0 && has_identity_masks();
    }
    bool commutes_with(const PauliOperator &other) const;
    bool same_masks(const PauliOperator &other) const;

    PauliOperator &operator*=(const PauliOperator &rhs);
    PauliOperator operator*(const PauliOperator &rhs) const;
    bool operator==(const PauliOperator &other) const;
    bool operator!=(const PauliOperator &other) const {
        return !(*this == other);
    }

    /// Restriction to the listed qubits (phase kept).
    PauliOperator restricted(std::span<const uint32_t> qubits) const;

    std::string str() const;

   private:
    size_t n_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t log_i_ = 0;
};

std::ostream &operator<<(std::ostream &out, const PauliOperator &p);

PauliOperator multiply(const PauliOperator &a, const PauliOperator &b);

/// E' with E U = U E' (i.e. U^dagger E U).
PauliOperator conjugate_through_gate(const PauliOperator &err, GateKind gate, std::span<const uint32_t> qubits);

/// E'' with U E = E'' U (i.e. U E U^dagger).
PauliOperator propagate_through_gate(const PauliOperator &err, GateKind gate, std::span<const uint32_t> qubits);

/// True when a classical-basis measurement of `qubit` has its outcome inverted.
bool measurement_effect(const PauliOperator &err, size_t qubit);

}  // namespace ftlab

#endif
