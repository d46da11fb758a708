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

#ifndef FTLAB_VERIFY_H
#define FTLAB_VERIFY_H

#include <string>
#include <vector>

#include "json.hpp"
#include "ftlab/pauli.h"

namespace ftlab::verify {

enum class Verdict { Verified, OracleOverridden, Failed };
const char *verdict_name(Verdict v);

/// One conjugation identity E U = U E' as printed, with the computed image.
struct IdentityRow {
    std::string error;        // E, letters per gate qubit
    GateKind gate;
    uint8_t printed_log_i = 0;
    std::string printed_image;
    bool disputed = false;    // known to disagree with direct computation
    PauliOperator computed;   // oracle-confirmed E'
    bool masks_match = false;
    bool phase_match = false;
    double oracle_residual = 0;  // max |E U - U E'|
    Verdict verdict = Verdict::Failed;
};

std::vector<IdentityRow> identity_suite();

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GadgetReport {
    size_t branches = 0;
    size_t accepted = 0;
    double max_distance = 0;  // worst accepted branch
    bool pass = false;
};

/// Each of the 2^k measurement branches acts on the 3-qubit register as Toffoli up to phase.
GadgetReport check_toffoli_gadget(double tol = 1e-10);
/// Accepted branches of the unencoded purification leave |pi/8> on the data qubit.
GadgetReport check_pi8_analog(double tol = 1e-10);

std::vector<Check> hadamard_eigen_checks(double tol = 1e-12);

struct Report {
    std::vector<IdentityRow> identities;
    std::vector<Check> checks;
    bool ok() const;
    nlohmann::json to_json() const;
};

Report run_all();

}  // namespace ftlab::verify

#endif
