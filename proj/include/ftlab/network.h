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

#ifndef FTLAB_NETWORK_H
#define FTLAB_NETWORK_H

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ftlab/pauli.h"

namespace ftlab {

enum class QubitRole : uint8_t { Data, Cat, Verification, Ancilla };

struct QubitInfo {
    QubitRole role = QubitRole::Data;
    int block = -1;  // code block for data qubits
    int label = 0;   // 1..7 inside a block
    bool operator==(const QubitInfo &) const = default;
};

struct GateApplication {
    GateKind kind = GateKind::BitFlip;
    std::vector<uint32_t> qubits;
    double angle = 0;    // Prepare only
    int record = -1;     // Measure only: classical record index
    int recovery = -1;   // PauliCorrection only: which recovery decides it
    int condition = -1;  // copied from the slice
    bool operator==(const GateApplication &) const = default;
};

enum class TagKind : uint8_t {
    CatPrep,
    SyndromeBitExtraction,
    EncodedHadamardLayer,
    CorrectionStep,
    EncodedOperation,
    RecoveryAttempt,
    Pi8Measurement,
    ToffoliGadget,
};

const char *tag_kind_name(TagKind kind);

/// Innermost subnetwork a slice belongs to, plus the enclosing indices needed
/// to evaluate failure definitions.
struct SubnetworkTag {
    TagKind kind = TagKind::EncodedOperation;
    int cat_attempt = 0;  // 1 or 2 inside a cat preparation
    int bit = 0;          // 1-based bit inside a syndrome extraction (7 = A1)
    int extraction = 0;   // 1..4 inside a recovery
    int attempt = 0;      // recovery attempt 1 or 2
    int round = 0;        // pi8 measurement round
    int recovery = -1;    // index into Network::recoveries
    int gate = -1;        // index into Network::gates
    int block = -1;
    bool operator==(const SubnetworkTag &) const = default;
    std::string str() const;
};

enum class ConditionKind : uint8_t {
    RecordParity,        // execute when the xor of `records` is 1
    RetryUntilAccepted,  // first run when xor of `records` is 1, rerun while `retry_record` reads 1
    SecondAttempt,       // execute when the first attempt of `recovery` was inconsistent
    External,            // decided outside the network (standalone builders)
};

struct Condition {
    ConditionKind kind = ConditionKind::External;
    int parent = -1;
    std::vector<int> records;
    int retry_record = -1;
    int recovery = -1;
    uint32_t first_slice = 0;  // RetryUntilAccepted: slice range of the block
    uint32_t end_slice = 0;
    bool operator==(const Condition &) const = default;
};

/// What a measured parity means for the code block, in the block's canonical
/// frame (after undoing the transversal H layers that preceded it).
enum class CheckKind : uint8_t {
    XCheck,    // X on a generator support: flips on odd sign-flip parity
    ZCheck,    // Z on a generator support: flips on odd bit-flip parity
    LogicalZ,  // A1 representative
};

struct ParityCheck {
    CheckKind kind = CheckKind::ZCheck;
    int support = 0;  // 0..2 for T1..T3
    std::vector<int> records;
    bool operator==(const ParityCheck &) const = default;
};

struct RecoveryInfo {
    int block = -1;
    int gate = -1;
    std::vector<uint32_t> data;                    // labels 1..7 in order
    std::vector<std::vector<ParityCheck>> extractions;  // 4 entries
    int second_attempt = -1;                       // condition index
    bool measures_logical = false;
    bool operator==(const RecoveryInfo &) const = default;
};

/// Computation-level gate: recoveries on its inputs followed by an encoded operation.
struct EncodedGateInfo {
    std::vector<int> recoveries;
    std::vector<int> blocks;     // output blocks in order
    std::vector<int> following;  // per output block: following gate or -1
    bool boundary = false;       // only its recoveries are part of the network
    bool operator==(const EncodedGateInfo &) const = default;
};

/// Post-selection: the run is rejected when the xor of `records` is 1.
struct AcceptanceCheck {
    std::vector<int> records;
    bool operator==(const AcceptanceCheck &) const = default;
};

struct Slice {
    std::vector<GateApplication> gates;
    SubnetworkTag tag;
    int condition = -1;
    bool operator==(const Slice &) const = default;
};

enum class LocationKind : uint8_t { Operational, Memory };

struct ErrorLocation {
    uint32_t slice = 0;
    LocationKind kind = LocationKind::Operational;
    std::vector<uint32_t> qubits;
    SubnetworkTag tag;
    bool conditional = false;
    int condition = -1;
    bool operator==(const ErrorLocation &) const = default;
};

struct Network {
    std::vector<QubitInfo> qubits;
    std::vector<Slice> slices;
    std::vector<Condition> conditions;
    std::vector<RecoveryInfo> recoveries;
    std::vector<EncodedGateInfo> gates;
    std::vector<AcceptanceCheck> acceptance;
    std::vector<std::vector<uint32_t>> blocks;  // data qubits of each code block, labels 1..7
    size_t num_records = 0;
    std::vector<ErrorLocation> locations;

    size_t num_qubits() const {
        return qubits.size();
    }
    /// Recomputes `locations` from the slices.
    void place_locations();
    /// Throws std::invalid_argument describing the first structural problem found.
    void validate() const;
    /// True when the condition (or any ancestor) is non-trivial.
    bool is_conditional(int condition) const {
        return condition >= 0;
    }
    bool operator==(const Network &) const = default;
};

enum class CellClass : uint8_t { Gate, Memory, Inactive };

/// Classifies one qubit-slice cell of the space-time diagram.
CellClass classify_cell(const Network &net, size_t slice, size_t qubit);

using LocationFilter = std::function<bool(const ErrorLocation &)>;

bool is_second_cat_attempt(const ErrorLocation &loc);
/// Drops second cat attempts, the usual tally filter.
bool counted_location(const ErrorLocation &loc);

std::pair<size_t, size_t> count_locations(const Network &net, const LocationFilter &filter = counted_location);

/// Two-qubit gates inside encoded operations only pair equal labels of distinct blocks.
bool check_transversality(const Network &net);

nlohmann::json network_to_json(const Network &net);
Network network_from_json(const nlohmann::json &j);

}  // namespace ftlab

#endif
