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

#ifndef FTLAB_PROPAGATION_H
#define FTLAB_PROPAGATION_H

#include <functional>
#include <vector>

#include "ftlab/network.h"
#include "ftlab/pauli.h"

namespace ftlab {

struct PropagationResult {
    PauliOperator boundary;   // error at the network output (measured and reset qubits cleared)
    std::vector<int> flips;   // records whose outcome is inverted
};

/// Decides whether a slice executes. The default runs unconditional slices only.
using SliceFilter = std::function<bool(const Network &, size_t slice)>;

bool unconditional_slice(const Network &net, size_t slice);

/// Pushes `err` (inserted right after slice `after_slice`) forward to the output.
/// `err` spans all qubits of the network.
PropagationResult propagate_from_slice(const Network &net,
                                       size_t after_slice,
                                       PauliOperator err,
                                       const SliceFilter &executes = unconditional_slice);

/// `err` spans either the location's qubits (in order) or the whole network.
PropagationResult propagate_to_boundary(const Network &net,
                                        const ErrorLocation &location,
                                        const PauliOperator &err,
                                        const SliceFilter &executes = unconditional_slice);

}  // namespace ftlab

#endif
