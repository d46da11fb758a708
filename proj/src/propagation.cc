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

#include "ftlab/propagation.h"

namespace ftlab {

bool unconditional_slice(const Network &net, size_t slice) {
    return net.slices[slice].condition < 0;
}

PropagationResult propagate_from_slice(const Network &net,
                                       size_t after_slice,
                                       PauliOperator err,
                                       const SliceFilter &executes) {
    if (err.num_qubits() != net.num_qubits()) {
        throw std::invalid_argument("error width does not match the network");
    }
    PropagationResult out;
    for (size_t s = after_slice + 1; s < net.slices.size(); s++) {
        if (!executes(net, s)) {
            continue;
        }
        for (const auto &g : net.slices[s].gates) {
            switch (g.kind) {
                case GateKind::Measure:
                    if (measurement_effect(err, g.qubits[0])) {
                        out.flips.push_back(g.record);
                    }
                    err.set_letter(g.qubits[0], PauliLetter::I);
                    break;
                case GateKind::Prepare:
                    err.set_letter(g.qubits[0], PauliLetter::I);
                    break;
                case GateKind::PauliCorrection:
                    break;
                default:
                    err = propagate_through_gate(err, g.kind, g.qubits);
                    break;
            }
        }
    }
    out.boundary = std::move(err);
    return out;
}

PropagationResult propagate_to_boundary(const Network &net,
                                        const ErrorLocation &location,
                                        const PauliOperator &err,
                                        const SliceFilter &executes) {
    PauliOperator full = err;
    if (err.num_qubits() != net.num_qubits()) {
        if (err.num_qubits() != location.qubits.size()) {
            throw std::invalid_argument("error width matches neither the location nor the network");
        }
        full = PauliOperator::identity(net.num_qubits());
        for (size_t k = 0; k < location.qubits.size(); k++) {
            full.set_letter(location.qubits[k], err.letter(k));
        }
        full.set_log_i(err.log_i());
    }
    return propagate_from_slice(net, location.slice, std::move(full), executes);
}

}  // namespace ftlab
