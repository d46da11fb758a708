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

#include "ftlab/network.h"

#include <sstream>

namespace ftlab {

using nlohmann::json;

namespace {

constexpr const char *TAG_NAMES[] = {
    "CatPrep",        "SyndromeBitExtraction", "EncodedHadamardLayer", "CorrectionStep",
    "EncodedOperation", "RecoveryAttempt",     "Pi8Measurement",       "ToffoliGadget",
};
constexpr const char *ROLE_NAMES[] = {"data", "cat", "verification", "ancilla"};
constexpr const char *CONDITION_NAMES[] = {"record_parity", "retry_until_accepted", "second_attempt", "external"};
constexpr const char *CHECK_NAMES[] = {"x_check", "z_check", "logical_z"};

template <typename E, size_t K>
E enum_from(const char *const (&names)[K], const std::string &s, const char *what) {
    for (size_t k = 0; k < K; k++) {
        if (s == names[k]) {
            return (E)k;
        }
    }
    throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

// occupancy[s][q] = index of the gate in slice s touching q, or -1.
std::vector<std::vector<int>> occupancy(const Network &net) {
    std::vector<std::vector<int>> occ(net.slices.size(), std::vector<int>(net.qubits.size(), -1));
    for (size_t s = 0; s < net.slices.size(); s++) {
        const auto &gates = net.slices[s].gates;
        for (size_t g = 0; g < gates.size(); g++) {
            for (auto q : gates[g].qubits) {
                occ[s][q] = (int)g;
            }
        }
    }
    return occ;
}

// Idle cells that count as memory: non-data qubits between a preparation and
// the next measurement.
std::vector<std::vector<bool>> memory_cells(const Network &net, const std::vector<std::vector<int>> &occ) {
    std::vector<std::vector<bool>> mem(net.slices.size(), std::vector<bool>(net.qubits.size(), false));
    for (size_t q = 0; q < net.qubits.size(); q++) {
        if (net.qubits[q].role == QubitRole::Data) {
            continue;
        }
        bool active = false;
        for (size_t s = 0; s < net.slices.size(); s++) {
            int g = occ[s][q];
            if (g < 0) {
                mem[s][q] = active;
                continue;
            }
            auto kind = net.slices[s].gates[g].kind;
            if (kind == GateKind::Prepare) {
                active = true;
            } else if (kind == GateKind::Measure) {
                active = false;
            }
        }
    }
    return mem;
}

json tag_to_json(const SubnetworkTag &t) {
    return json{{"kind", TAG_NAMES[(int)t.kind]}, {"cat_attempt", t.cat_attempt}, {"bit", t.bit},
                {"extraction", t.extraction}, {"attempt", t.attempt},   {"round", t.round},
                {"recovery", t.recovery},     {"gate", t.gate},         {"block", t.block}};
}

SubnetworkTag tag_from_json(const json &j) {
    SubnetworkTag t;
    t.kind = enum_from<TagKind>(TAG_NAMES, j.at("kind").get<std::string>(), "tag kind");
    t.cat_attempt = j.value("cat_attempt", 0);
    t.bit = j.value("bit", 0);
    t.extraction = j.value("extraction", 0);
    t.attempt = j.value("attempt", 0);
    t.round = j.value("round", 0);
    t.recovery = j.value("recovery", -1);
    t.gate = j.value("gate", -1);
    t.block = j.value("block", -1);
    return t;
}

}  // namespace

const char *tag_kind_name(TagKind kind) {
    return TAG_NAMES[(int)kind];
}

std::string SubnetworkTag::str() const {
    std::ostringstream out;
    out << tag_kind_name(kind);
    switch (kind) {
        case TagKind::CatPrep:
            out << "(" << cat_attempt << ")";
            break;
        case TagKind::SyndromeBitExtraction:
            out << "(bit=" << bit << ",extraction=" << extraction << ",attempt=" << attempt << ")";
            break;
        case TagKind::RecoveryAttempt:
            out << "(" << attempt << ")";
            break;
        case TagKind::Pi8Measurement:
            out << "(" << round << ")";
            break;
        default:
            break;
    }
    return out.str();
}

void Network::place_locations() {
    locations.clear();
    auto occ = occupancy(*this);
    auto mem = memory_cells(*this, occ);
    for (size_t s = 0; s < slices.size(); s++) {
        const auto &slice = slices[s];
        for (const auto &g : slice.gates) {
            if (g.kind == GateKind::Measure) {
                continue;
            }
            ErrorLocation loc;
            loc.slice = (uint32_t)s;
            loc.kind = LocationKind::Operational;
            loc.qubits = g.qubits;
            loc.tag = slice.tag;
            loc.condition = slice.condition;
            loc.conditional = slice.condition >= 0;
            locations.push_back(std::move(loc));
        }
        for (size_t q = 0; q < qubits.size(); q++) {
            if (!mem[s][q]) {
                continue;
            }
            ErrorLocation loc;
            loc.slice = (uint32_t)s;
            loc.kind = LocationKind::Memory;
            loc.qubits = {(uint32_t)q};
            loc.tag = slice.tag;
            loc.condition = slice.condition;
            loc.conditional = slice.condition >= 0;
            locations.push_back(std::move(loc));
        }
    }
}

void Network::validate() const {
    auto fail = [](const std::string &msg) {
        throw std::invalid_argument("invalid network: " + msg);
    };
    for (size_t s = 0; s < slices.size(); s++) {
        std::vector<bool> used(qubits.size(), false);
        const auto &slice = slices[s];
        if (slice.condition >= (int)conditions.size()) {
            fail("slice " + std::to_string(s) + " has an unknown condition");
        }
        for (const auto &g : slice.gates) {
            if (g.qubits.size() != gate_arity(g.kind)) {
                fail("slice " + std::to_string(s) + ": wrong arity for " + gate_name(g.kind));
            }
            if (g.condition != slice.condition) {
                fail("slice " + std::to_string(s) + ": gate condition differs from its slice");
            }
            for (auto q : g.qubits) {
                if (q >= qubits.size()) {
                    fail("slice " + std::to_string(s) + ": qubit out of range");
                }
                if (used[q]) {
                    fail("slice " + std::to_string(s) + ": qubit " + std::to_string(q) + " used twice");
                }
                used[q] = true;
            }
            if (g.kind == GateKind::Measure && (g.record < 0 || (size_t)g.record >= num_records)) {
                fail("slice " + std::to_string(s) + ": measurement without a valid record");
            }
            if (g.kind == GateKind::PauliCorrection && (g.recovery < 0 || (size_t)g.recovery >= recoveries.size())) {
                fail("slice " + std::to_string(s) + ": correction without a recovery");
            }
        }
    }
    for (const auto &c : conditions) {
        if (c.parent >= (int)conditions.size()) {
            fail("condition parent out of range");
        }
        for (int r : c.records) {
            if (r < 0 || (size_t)r >= num_records) {
                fail("condition record out of range");
            }
        }
    }
    for (const auto &rec : recoveries) {
        if (rec.data.size() != 7) {
            fail("recovery block must have 7 data qubits");
        }
    }
}

CellClass classify_cell(const Network &net, size_t slice, size_t qubit) {
    for (const auto &g : net.slices[slice].gates) {
        for (auto q : g.qubits) {
            if (q == qubit) {
                return CellClass::Gate;
            }
        }
    }
    if (net.qubits[qubit].role == QubitRole::Data) {
        return CellClass::Inactive;
    }
    bool active = false;
    for (size_t s = 0; s < slice; s++) {
        for (const auto &g : net.slices[s].gates) {
            for (auto q : g.qubits) {
                if (q == qubit) {
                    if (g.kind == GateKind::Prepare) {
                        active = true;
                    } else if (g.kind == GateKind::Measure) {
                        active = false;
                    }
                }
            }
        }
    }
    return active ? CellClass::Memory : CellClass::Inactive;
}

bool is_second_cat_attempt(const ErrorLocation &loc) {
    return loc.tag.kind == TagKind::CatPrep && loc.tag.cat_attempt == 2;
}

bool counted_location(const ErrorLocation &loc) {
    return !is_second_cat_attempt(loc);
}

std::pair<size_t, size_t> count_locations(const Network &net, const LocationFilter &filter) {
    size_t ops = 0;
    size_t mem = 0;
    for (const auto &loc : net.locations) {
        if (filter && !filter(loc)) {
            continue;
        }
        if (loc.kind == LocationKind::Operational) {
            ops++;
        } else {
            mem++;
        }
    }
    return {ops, mem};
}

bool check_transversality(const Network &net) {
    for (const auto &slice : net.slices) {
        if (slice.tag.kind != TagKind::EncodedOperation) {
            continue;
        }
        for (const auto &g : slice.gates) {
            if (g.qubits.size() < 2) {
                continue;
            }
            const auto &a = net.qubits[g.qubits[0]];
            const auto &b = net.qubits[g.qubits[1]];
            if (a.role != QubitRole::Data || b.role != QubitRole::Data) {
                continue;
            }
            if (a.block == b.block || a.label != b.label) {
                return false;
            }
        }
    }
    return true;
}

json network_to_json(const Network &net) {
    json j;
    j["qubits"] = json::array();
    for (const auto &q : net.qubits) {
        j["qubits"].push_back({{"role", ROLE_NAMES[(int)q.role]}, {"block", q.block}, {"label", q.label}});
    }
    j["slices"] = json::array();
    j["slice_tags"] = json::array();
    for (const auto &slice : net.slices) {
        json gates = json::array();
        for (const auto &g : slice.gates) {
            json jg{{"gate", gate_name(g.kind)}, {"qubits", g.qubits}, {"condition", g.condition}};
            if (g.kind == GateKind::Prepare) {
                jg["angle"] = g.angle;
            }
            if (g.kind == GateKind::Measure) {
                jg["record"] = g.record;
            }
            if (g.kind == GateKind::PauliCorrection) {
                jg["recovery"] = g.recovery;
            }
            gates.push_back(std::move(jg));
        }
        j["slices"].push_back(std::move(gates));
        j["slice_tags"].push_back(tag_to_json(slice.tag));
    }
    j["conditions"] = json::array();
    for (const auto &c : net.conditions) {
        j["conditions"].push_back({{"kind", CONDITION_NAMES[(int)c.kind]},
                                   {"parent", c.parent},
                                   {"records", c.records},
                                   {"retry_record", c.retry_record},
                                   {"recovery", c.recovery},
                                   {"first_slice", c.first_slice},
                                   {"end_slice", c.end_slice}});
    }
    j["recoveries"] = json::array();
    for (const auto &r : net.recoveries) {
        json ex = json::array();
        for (const auto &checks : r.extractions) {
            json jc = json::array();
            for (const auto &c : checks) {
                jc.push_back({{"kind", CHECK_NAMES[(int)c.kind]}, {"support", c.support}, {"records", c.records}});
            }
            ex.push_back(std::move(jc));
        }
        j["recoveries"].push_back({{"block", r.block},
                                   {"gate", r.gate},
                                   {"data", r.data},
                                   {"extractions", std::move(ex)},
                                   {"second_attempt", r.second_attempt},
                                   {"measures_logical", r.measures_logical}});
    }
    j["gates"] = json::array();
    for (const auto &g : net.gates) {
        j["gates"].push_back({{"recoveries", g.recoveries},
                              {"blocks", g.blocks},
                              {"following", g.following},
                              {"boundary", g.boundary}});
    }
    j["acceptance"] = json::array();
    for (const auto &a : net.acceptance) {
        j["acceptance"].push_back({{"records", a.records}});
    }
    j["blocks"] = net.blocks;
    j["num_records"] = net.num_records;
    j["locations"] = json::array();
    for (const auto &loc : net.locations) {
        j["locations"].push_back({{"slice", loc.slice},
                                  {"kind", loc.kind == LocationKind::Operational ? "operational" : "memory"},
                                  {"qubits", loc.qubits},
                                  {"tag", tag_to_json(loc.tag)},
                                  {"conditional", loc.conditional},
                                  {"condition", loc.condition}});
    }
    return j;
}

Network network_from_json(const json &j) {
    Network net;
    for (const auto &jq : j.at("qubits")) {
        QubitInfo q;
        q.role = enum_from<QubitRole>(ROLE_NAMES, jq.at("role").get<std::string>(), "qubit role");
        q.block = jq.value("block", -1);
        q.label = jq.value("label", 0);
        net.qubits.push_back(q);
    }
    const auto &jslices = j.at("slices");
    const json empty_tags = json::array();
    const auto &jtags = j.contains("slice_tags") ? j.at("slice_tags") : empty_tags;
    for (size_t s = 0; s < jslices.size(); s++) {
        Slice slice;
        if (s < jtags.size()) {
            slice.tag = tag_from_json(jtags[s]);
        }
        for (const auto &jg : jslices[s]) {
            GateApplication g;
            g.kind = gate_from_name(jg.at("gate").get<std::string>());
            g.qubits = jg.at("qubits").get<std::vector<uint32_t>>();
            g.condition = jg.value("condition", -1);
            g.angle = jg.value("angle", 0.0);
            g.record = jg.value("record", -1);
            g.recovery = jg.value("recovery", -1);
            slice.condition = g.condition;
            slice.gates.push_back(std::move(g));
        }
        net.slices.push_back(std::move(slice));
    }
    for (const auto &jc : j.value("conditions", json::array())) {
        Condition c;
        c.kind = enum_from<ConditionKind>(CONDITION_NAMES, jc.at("kind").get<std::string>(), "condition kind");
        c.parent = jc.value("parent", -1);
        c.records = jc.value("records", std::vector<int>{});
        c.retry_record = jc.value("retry_record", -1);
        c.recovery = jc.value("recovery", -1);
        c.first_slice = jc.value("first_slice", 0u);
        c.end_slice = jc.value("end_slice", 0u);
        net.conditions.push_back(std::move(c));
    }
    for (const auto &jr : j.value("recoveries", json::array())) {
        RecoveryInfo r;
        r.block = jr.value("block", -1);
        r.gate = jr.value("gate", -1);
        r.data = jr.at("data").get<std::vector<uint32_t>>();
        for (const auto &jex : jr.at("extractions")) {
            std::vector<ParityCheck> checks;
            for (const auto &jc : jex) {
                ParityCheck c;
                c.kind = enum_from<CheckKind>(CHECK_NAMES, jc.at("kind").get<std::string>(), "check kind");
                c.support = jc.value("support", 0);
                c.records = jc.at("records").get<std::vector<int>>();
                checks.push_back(std::move(c));
            }
            r.extractions.push_back(std::move(checks));
        }
        r.second_attempt = jr.value("second_attempt", -1);
        r.measures_logical = jr.value("measures_logical", false);
        net.recoveries.push_back(std::move(r));
    }
    for (const auto &jg : j.value("gates", json::array())) {
        EncodedGateInfo g;
        g.recoveries = jg.at("recoveries").get<std::vector<int>>();
        g.blocks = jg.at("blocks").get<std::vector<int>>();
        g.following = jg.at("following").get<std::vector<int>>();
        g.boundary = jg.value("boundary", false);
        net.gates.push_back(std::move(g));
    }
    for (const auto &ja : j.value("acceptance", json::array())) {
        net.acceptance.push_back({ja.at("records").get<std::vector<int>>()});
    }
    net.blocks = j.value("blocks", std::vector<std::vector<uint32_t>>{});
    net.num_records = j.value("num_records", (size_t)0);
    net.validate();
    net.place_locations();
    return net;
}

}  // namespace ftlab
