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

#ifndef FTLAB_BUILDERS_H
#define FTLAB_BUILDERS_H

#include <string>

#include "ftlab/network.h"

namespace ftlab {

/// Cat preparation (cat_size qubits plus one verification qubit).
/// Attempt 2 is marked conditional on an external decision.
Network build_cat_prep(int attempt, size_t cat_size = 4);

/// One parity bit of a syndrome extraction on a standalone 7-qubit block.
/// Bits 1..3 measure the X-type check on T1..T3 and bits 4..6 the same checks
/// after the basis switch; bit 7 is the A1 representative.
Network build_syndrome_bit_extraction(int bit, int extraction = 1, int attempt = 1);

/// Parity extraction on `num_data` data qubits with a cat of the same size;
/// small enough for the dense oracle when num_data <= 3.
Network build_parity_gadget(size_t num_data);

/// Six bit extractions around one transversal H layer.
Network build_syndrome_extraction(int attempt = 1);

/// Two attempts of two extractions each (second attempt conditional) plus the correction step.
Network build_recovery();

/// Seven parallel physical gates (14 qubits for N_2).
Network build_transversal_gate(GateKind kind);

/// Recoveries on every input block, then the transversal operation.
Network build_gate_network(GateKind kind);

/// build_gate_network plus a recovery on every output block belonging to a
/// following gate; the pair-counting universe.
Network build_gate_context(GateKind kind);

/// Seven preparations plus a recovery that also measures A1.
Network build_encoded_zero_prep();

/// Two rounds of cat-controlled transversal H measurement on an encoded block
/// (assumed to start in encoded |0>), intermediate and final recoveries,
/// agreement check and the conditional pi/2 correction.
Network build_pi8_prep();

/// Unencoded analog of build_pi8_prep on two qubits (data, control).
Network build_pi8_analog();

/// Toffoli on qubits 0, 1 (controls) and 2 (target), using one reused ancilla.
Network build_toffoli_gadget();

/// Builder lookup for the CLI: "cat_prep", "syndrome_bit_extraction",
/// "syndrome_extraction", "recovery", "transversal_cnot", "gate_network",
/// "gate_context", "encoded_zero_prep", "pi8_prep", "pi8_analog", "toffoli".
Network build_named(const std::string &name);
const std::vector<std::string> &builder_names();

}  // namespace ftlab

#endif
