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

#include <bit>
#include <ostream>

namespace ftlab {

namespace {

struct GateInfo {
    GateKind kind;
    const char *name;
    size_t arity;
    bool unitary;
    bool normalizer;
};

constexpr GateInfo GATES[] = {
    {GateKind::BitFlip, "N", 1, true, true},
    {GateKind::SignFlip, "S", 1, true, true},
    {GateKind::PhaseShift, "S_i", 1, true, true},
    {GateKind::Hadamard, "H", 1, true, true},
    {GateKind::ControlledNot, "N_2", 2, true, true},
    {GateKind::ControlledHadamard, "CH", 2, true, false},
    {GateKind::Prepare, "prep", 1, false, false},
    {GateKind::Measure, "measure", 1, false, false},
    {GateKind::PauliCorrection, "correct", 1, false, false},
};

const GateInfo &info(GateKind kind) {
    return GATES[(size_t)kind];
}

size_t words_for(size_t n) {
    return (n + 63) >> 6;
}

// Image of a single generator (X or Z on one of the gate's qubits), written
// as phase exponent plus per-gate-qubit masks.
struct Image {
    uint8_t log_i;
    uint8_t x;  // bit j -> gate qubit j
    uint8_t z;
};

// Returns images of X_j and Z_j for each gate qubit j, indexed [2*j + (0 for X, 1 for Z)].
bool generator_images(GateKind gate, bool forward, Image *out) {
    switch (gate) {
        case GateKind::BitFlip:
            out[0] = {0, 1, 0};
            out[1] = {2, 0, 1};
            return true;
        case GateKind::SignFlip:
            out[0] = {2, 1, 0};
            out[1] = {0, 0, 1};
            return true;
        case GateKind::PhaseShift:
            // S_i X S_i^dag = Y = i XZ; S_i^dag X S_i = -Y.
            out[0] = {(uint8_t)(forward ? 1 : 3), 1, 1};
            out[1] = {0, 0, 1};
            return true;
        case GateKind::Hadamard:
            out[0] = {0, 0, 1};
            out[1] = {0, 1, 0};
            return true;
        case GateKind::ControlledNot:
            out[0] = {0, 0b11, 0};
            out[1] = {0, 0, 0b01};
            out[2] = {0, 0b10, 0};
            out[3] = {0, 0, 0b11};
            return true;
        default:
            return false;
    }
}

PauliOperator conjugate_impl(const PauliOperator &err, GateKind gate, std::span<const uint32_t> qubits, bool forward) {
    if (!gate_is_unitary(gate)) {
        throw std::invalid_argument(std::string("gate is not unitary: ") + gate_name(gate));
    }
    size_t arity = gate_arity(gate);
    if (qubits.size() != arity) {
        throw std::invalid_argument("wrong number of qubits for gate " + std::string(gate_name(gate)));
    }
    for (auto q : qubits) {
        if (q >= err.num_qubits()) {
            throw std::invalid_argument("gate qubit out of range");
        }
    }
    bool touched = false;
    for (auto q : qubits) {
        touched |= err.x(q) || err.z(q);
    }
    if (!touched) {
        return err;
    }
    Image images[4];
    if (!generator_images(gate, forward, images)) {
        throw UnsupportedPropagation(std::string("cannot push a standard error through ") + gate_name(gate));
    }

    PauliOperator result = err;
    for (auto q : qubits) {
        result.set_letter(q, PauliLetter::I);
    }
    auto apply = [&](const Image &img) {
        PauliOperator g(err.num_qubits());
        for (size_t j = 0; j < arity; j++) {
            g.set_x(qubits[j], (img.x >> j) & 1);
            g.set_z(qubits[j], (img.z >> j) & 1);
        }
        g.set_log_i(img.log_i);
        result *= g;
    };
    for (size_t j = 0; j < arity; j++) {
        if (err.x(qubits[j])) {
            apply(images[2 * j]);
        }
        if (err.z(qubits[j])) {
            apply(images[2 * j + 1]);
        }
    }
    return result;
}

}  // namespace

const char *gate_name(GateKind kind) {
    return info(kind).name;
}

GateKind gate_from_name(std::string_view name) {
    for (const auto &g : GATES) {
        if (name == g.name) {
            return g.kind;
        }
    }
    throw std::invalid_argument("unknown gate name: " + std::string(name));
}

size_t gate_arity(GateKind kind) {
    return info(kind).arity;
}

bool gate_is_unitary(GateKind kind) {
    return info(kind).unitary;
}

bool gate_is_normalizer(GateKind kind) {
    return info(kind).normalizer;
}

PauliOperator::PauliOperator(size_t num_qubits)
    : n_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliOperator PauliOperator::identity(size_t num_qubits) {
    return PauliOperator(num_qubits);
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t qubit, PauliLetter letter) {
    PauliOperator p(num_qubits);
    if (qubit >= num_qubits) {
        throw std::invalid_argument("qubit out of range");
    }
    p.set_letter(qubit, letter);
    return p;
}

PauliOperator PauliOperator::from_masks(size_t num_qubits, uint64_t x, uint64_t z, uint8_t log_i) {
    if (num_qubits < 64 && ((x | z) >> num_qubits)) {
        throw std::invalid_argument("mask has bits beyond the qubit count");
    }
    PauliOperator p(num_qubits);
    if (num_qubits) {
        p.xs_[0] = x;
        p.zs_[0] = z;
    }
    p.set_log_i(log_i);
    return p;
}

PauliOperator PauliOperator::from_str(std::string_view text) {
    uint8_t k = 0;
    if (text.starts_with("-i")) {
        k = 3;
        text.remove_prefix(2);
    } else if (text.starts_with("+")) {
        text.remove_prefix(1);
    } else if (text.starts_with("-")) {
        k = 2;
        text.remove_prefix(1);
    } else if (text.starts_with("i")) {
        k = 1;
        text.remove_prefix(1);
    }
    PauliOperator p(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
                break;
            case 'N':
                p.set_letter(q, PauliLetter::N);
                break;
            case 'S':
                p.set_letter(q, PauliLetter::S);
                break;
            case 'B':
                p.set_letter(q, PauliLetter::B);
                break;
            default:
                throw std::invalid_argument("bad letter in Pauli text: " + std::string(text));
        }
    }
    p.set_log_i(k);
    return p;
}

void PauliOperator::set_x(size_t q, bool v) {
    uint64_t bit = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | bit) : (xs_[q >> 6] & ~bit);
}

void PauliOperator::set_z(size_t q, bool v) {
    uint64_t bit = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | bit) : (zs_[q >> 6] & ~bit);
}

void PauliOperator::set_letter(size_t q, PauliLetter letter) {
    set_x(q, (uint8_t)letter & 1);
    set_z(q, (uint8_t)letter & 2);
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

bool PauliOperator::has_identity_masks() const {
    for (size_t k = 0; k < xs_.size(); k++) {
        if (xs_[k] | zs_[k]) {
            return false;
        }
    }
    return true;
}

bool PauliOperator::commutes_with(const PauliOperator &other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("qubit count mismatch");
    }
    size_t acc = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        acc += std::popcount((xs_[k] & other.zs_[k]) ^ (zs_[k] & other.xs_[k]));
    }
    return (acc & 1) == 0;
}

bool PauliOperator::same_masks(const PauliOperator &other) const {
    return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &rhs) {
    if (n_ != rhs.n_) {
        throw std::invalid_argument("qubit count mismatch in Pauli product");
    }
    // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}
    size_t swaps = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        swaps += std::popcount(zs_[k] & rhs.xs_[k]);
        xs_[k] ^= rhs.xs_[k];
        zs_[k] ^= rhs.zs_[k];
    }
    log_i_ = (uint8_t)((log_i_ + rhs.log_i_ + 2 * (swaps & 1)) & 3);
    return *this;
}

PauliOperator PauliOperator::operator*(const PauliOperator &rhs) const {
    PauliOperator r = *this;
    r *= rhs;
    return r;
}

bool PauliOperator::operator==(const PauliOperator &other) const {
    return log_i_ == other.log_i_ && same_masks(other);
}

PauliOperator PauliOperator::restricted(std::span<const uint32_t> qubits) const {
    PauliOperator r(qubits.size());
    for (size_t j = 0; j < qubits.size(); j++) {
        r.set_letter(j, letter(qubits[j]));
    }
    r.set_log_i(log_i_);
    return r;
}

std::string PauliOperator::str() const {
    static const char *PREFIX[] = {"+", "i", "-", "-i"};
    std::string out = PREFIX[log_i_];
    for (size_t q = 0; q < n_; q++) {
        out.push_back("INSB"[(int)letter(q)]);
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const PauliOperator &p) {
    return out << p.str();
}

PauliOperator multiply(const PauliOperator &a, const PauliOperator &b) {
    return a * b;
}

PauliOperator conjugate_through_gate(const PauliOperator &err, GateKind gate, std::span<const uint32_t> qubits) {
    return conjugate_impl(err, gate, qubits, false);
}

PauliOperator propagate_through_gate(const PauliOperator &err, GateKind gate, std::span<const uint32_t> qubits) {
    return conjugate_impl(err, gate, qubits, true);
}

bool measurement_effect(const PauliOperator &err, size_t qubit) {
    return err.x(qubit);
}

}  // namespace ftlab
