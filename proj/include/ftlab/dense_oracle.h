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

#ifndef FTLAB_DENSE_ORACLE_H
#define FTLAB_DENSE_ORACLE_H

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "json.hpp"
#include "ftlab/network.h"
#include "ftlab/pauli.h"

namespace ftlab::oracle {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using OperatorMatrix = Eigen::MatrixXcd;

constexpr size_t MAX_QUBITS = 8;

/// Thrown for networks the oracle refuses (size cap, non-unitary content).
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Qubit 0 is the most significant bit of a basis index, so kron(A, B) puts A on qubit 0.

OperatorMatrix gate_matrix(GateKind kind);
OperatorMatrix pauli_matrix(const PauliOperator &p);
OperatorMatrix embed(const OperatorMatrix &gate, std::span<const uint32_t> qubits, size_t num_qubits);
OperatorMatrix kron(const OperatorMatrix &a, const OperatorMatrix &b);

/// cos(angle)|0> + sin(angle)|1>.
StateVector angle_state(double angle);
StateVector basis_state(size_t num_qubits, size_t index);

/// Applies a 1- or 2-qubit matrix in place.
void apply_gate(StateVector &state, const OperatorMatrix &gate, std::span<const uint32_t> qubits, size_t num_qubits);

OperatorMatrix unitary_of_network(const Network &net);

struct Branch {
    std::vector<uint8_t> record;  // one entry per network record
    double probability = 0;
    StateVector state;            // normalized post-measurement state
    bool accepted = true;
};

/// Exhaustive measurement-branch enumeration with the classical control the
/// builders emit. Branches below `min_probability` are dropped.
std::vector<Branch> simulate_branches(const Network &net, const StateVector &input, double min_probability = 1e-14);

double strength(const std::vector<OperatorMatrix> &family);

bool equal_up_to_global_phase(const OperatorMatrix &u, const OperatorMatrix &v, double tol);
/// Largest entry modulus of u - c v for the best unit scalar c (c read off the largest entry of v).
double phase_aligned_distance(const OperatorMatrix &u, const OperatorMatrix &v);

nlohmann::json matrix_to_json(const OperatorMatrix &m);
OperatorMatrix matrix_from_json(const nlohmann::json &j);

}  // namespace ftlab::oracle

#endif
