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

#include "ftlab/builders.h"

#include <numbers>

#include "ftlab/steane.h"

namespace ftlab {

namespace {

class Assembler {
   public:
    Network net;

    uint32_t qubit(QubitRole role, int block = -1, int label = 0) {
        net.qubits.push_back({role, block, label});
        return (uint32_t)(net.qubits.size() - 1);
    }

    std::vector<uint32_t> block(int index) {
        std::vector<uint32_t> data;
        for (int label = 1; label <= 7; label++) {
            data.push_back(qubit(QubitRole::Data, index, label));
        }
        if ((int)net.blocks.size() <= index) {
            net.blocks.resize(index + 1);
        }
        net.blocks[index] = data;
        return data;
    }

    size_t open(const SubnetworkTag &tag, int cond) {
        Slice s;
        s.tag = tag;
        s.condition = cond;
        net.slices.push_back(std::move(s));
        return net.slices.size() - 1;
    }

    void gate(size_t slice, GateKind kind, std::vector<uint32_t> qubits) {
        GateApplication g;
        g.kind = kind;
        g.qubits = std::move(qubits);
        g.condition = net.slices[slice].condition;
        net.slices[slice].gates.push_back(std::move(g));
    }

    void prep(size_t slice, uint32_t q, double angle = 0) {
        gate(slice, GateKind::Prepare, {q});
        net.slices[slice].gates.back().angle = angle;
    }

    int measure(size_t slice, uint32_t q) {
        gate(slice, GateKind::Measure, {q});
        int r = (int)net.num_records++;
        net.slices[slice].gates.back().record = r;
        return r;
    }

    int condition(Condition c) {
        net.conditions.push_back(std::move(c));
        return (int)net.conditions.size() - 1;
    }

    Network finish() {
        net.validate();
        net.place_locations();
        return std::move(net);
    }
};

struct CatPool {
    std::vector<uint32_t> cat;
    uint32_t verify = 0;
};

CatPool make_pool(Assembler &a, size_t cat_size) {
    CatPool pool;
    for (size_t k = 0; k < cat_size; k++) {
        pool.cat.push_back(a.qubit(QubitRole::Cat));
    }
    pool.verify = a.qubit(QubitRole::Verification);
    return pool;
}

// Chain-built cat with just-in-time preparations and a parity check of the
// two end qubits onto the verification qubit. Returns the verification record.
int emit_cat(Assembler &a, const CatPool &pool, const SubnetworkTag &tag, int cond) {
    const auto &c = pool.cat;
    size_t w = c.size();
    if (w < 3) {
        throw std::invalid_argument("cat size must be at least 3");
    }
    size_t s = a.open(tag, cond);
    a.prep(s, c[0]);
    s = a.open(tag, cond);
    a.gate(s, GateKind::Hadamard, {c[0]});
    a.prep(s, c[1]);
    for (size_t t = 3; t <= w + 1; t++) {
        s = a.open(tag, cond);
        a.gate(s, GateKind::ControlledNot, {c[t - 3], c[t - 2]});
        if (t <= w) {
            a.prep(s, c[t - 1]);
        }
        if (t == w) {
            a.prep(s, pool.verify);
        }
        if (t == w + 1) {
            a.gate(s, GateKind::ControlledNot, {c[0], pool.verify});
        }
    }
    s = a.open(tag, cond);
    a.gate(s, GateKind::ControlledNot, {c[w - 1], pool.verify});
    s = a.open(tag, cond);
    return a.measure(s, pool.verify);
}

// Cat attempt 1, conditional attempt 2 (retried until accepted), then the
// coupling to `data` and the X-basis readout of the cat. Returns cat records.
std::vector<int> emit_bit(Assembler &a,
                          const CatPool &pool,
                          const std::vector<uint32_t> &data,
                          SubnetworkTag scope,
                          int cond,
                          GateKind coupling,
                          const SubnetworkTag &coupling_tag) {
    SubnetworkTag cat_tag = scope;
    cat_tag.kind = TagKind::CatPrep;
    cat_tag.cat_attempt = 1;
    int v1 = emit_cat(a, pool, cat_tag, cond);

    int retry = a.condition({ConditionKind::RetryUntilAccepted, cond, {v1}});
    a.net.conditions[retry].first_slice = (uint32_t)a.net.slices.size();
    cat_tag.cat_attempt = 2;
    int v2 = emit_cat(a, pool, cat_tag, retry);
    a.net.conditions[retry].retry_record = v2;
    a.net.conditions[retry].end_slice = (uint32_t)a.net.slices.size();

    const auto &c = pool.cat;
    size_t w = c.size();
    size_t k = data.size();
    std::vector<int> records;
    if (k == w) {
        size_t s = a.open(coupling_tag, cond);
        for (size_t i = 0; i + 1 < w; i++) {
            a.gate(s, coupling, {c[i], data[i]});
        }
        s = a.open(coupling_tag, cond);
        a.gate(s, coupling, {c[w - 1], data[w - 1]});
        for (size_t i = 0; i + 1 < w; i++) {
            a.gate(s, GateKind::Hadamard, {c[i]});
        }
        s = a.open(coupling_tag, cond);
        a.gate(s, GateKind::Hadamard, {c[w - 1]});
        for (size_t i = 0; i + 1 < w; i++) {
            records.push_back(a.measure(s, c[i]));
        }
        s = a.open(coupling_tag, cond);
        records.push_back(a.measure(s, c[w - 1]));
    } else if (k < w) {
        size_t s = a.open(coupling_tag, cond);
        for (size_t i = 0; i < k; i++) {
            a.gate(s, coupling, {c[i], data[i]});
        }
        s = a.open(coupling_tag, cond);
        for (size_t i = 0; i < w; i++) {
            a.gate(s, GateKind::Hadamard, {c[i]});
        }
        s = a.open(coupling_tag, cond);
        for (size_t i = 0; i < w; i++) {
            records.push_back(a.measure(s, c[i]));
        }
    } else {
        throw std::invalid_argument("more data qubits than cat qubits");
    }
    return records;
}

std::vector<uint32_t> support_qubits(const std::vector<uint32_t> &data, uint8_t mask) {
    std::vector<uint32_t> out;
    for (size_t j = 0; j < 7; j++) {
        if ((mask >> j) & 1) {
            out.push_back(data[j]);
        }
    }
    return out;
}

std::vector<int> emit_syndrome_bit(Assembler &a,
                                   const CatPool &pool,
                                   const std::vector<uint32_t> &data,
                                   int bit,
                                   SubnetworkTag scope,
                                   int cond) {
    uint8_t mask = bit == 7 ? steane::LOGICAL_Z_SHORT : steane::SUPPORTS[(bit - 1) % 3];
    scope.bit = bit;
    SubnetworkTag coupling_tag = scope;
    coupling_tag.kind = TagKind::SyndromeBitExtraction;
    return emit_bit(a, pool, support_qubits(data, mask), scope, cond, GateKind::ControlledNot, coupling_tag);
}

// Frame 0: X checks first, then the H layer, then Z checks (canonical meaning).
// Frame 1: the reverse. A1 is read in the Z half.
std::vector<ParityCheck> emit_extraction(Assembler &a,
                                         const CatPool &pool,
                                         const std::vector<uint32_t> &data,
                                         int frame,
                                         bool logical,
                                         SubnetworkTag scope,
                                         int cond) {
    std::vector<ParityCheck> checks;
    auto half = [&](int first_bit, CheckKind kind) {
        for (int i = 0; i < 3; i++) {
            ParityCheck c;
            c.kind = kind;
            c.support = i;
            c.records = emit_syndrome_bit(a, pool, data, first_bit + i, scope, cond);
            checks.push_back(std::move(c));
        }
        if (logical && kind == CheckKind::ZCheck) {
            ParityCheck c;
            c.kind = CheckKind::LogicalZ;
            c.records = emit_syndrome_bit(a, pool, data, 7, scope, cond);
            checks.push_back(std::move(c));
        }
    };
    half(1, frame == 0 ? CheckKind::XCheck : CheckKind::ZCheck);
    SubnetworkTag layer = scope;
    layer.kind = TagKind::EncodedHadamardLayer;
    size_t s = a.open(layer, cond);
    for (auto q : data) {
        a.gate(s, GateKind::Hadamard, {q});
    }
    half(4, frame == 0 ? CheckKind::ZCheck : CheckKind::XCheck);
    return checks;
}

int emit_recovery(Assembler &a, const CatPool &pool, int block, int gate, bool logical, int cond = -1) {
    int r = (int)a.net.recoveries.size();
    RecoveryInfo info;
    info.block = block;
    info.gate = gate;
    info.data = a.net.blocks.at(block);
    info.measures_logical = logical;
    a.net.recoveries.push_back(info);

    SubnetworkTag scope;
    scope.kind = TagKind::RecoveryAttempt;
    scope.recovery = r;
    scope.gate = gate;
    scope.block = block;

    std::vector<std::vector<ParityCheck>> extractions;
    for (int e = 1; e <= 2; e++) {
        scope.attempt = 1;
        scope.extraction = e;
        extractions.push_back(emit_extraction(a, pool, info.data, e - 1, logical, scope, cond));
    }
    int second = a.condition({ConditionKind::SecondAttempt, cond, {}, -1, r});
    for (int e = 3; e <= 4; e++) {
        scope.attempt = 2;
        scope.extraction = e;
        extractions.push_back(emit_extraction(a, pool, info.data, e - 3, logical, scope, second));
    }
    a.net.recoveries[r].extractions = std::move(extractions);
    a.net.recoveries[r].second_attempt = second;

    SubnetworkTag fix = scope;
    fix.kind = TagKind::CorrectionStep;
    fix.attempt = 0;
    fix.extraction = 0;
    size_t s = a.open(fix, cond);
    for (auto q : info.data) {
        a.gate(s, GateKind::PauliCorrection, {q});
        a.net.slices[s].gates.back().recovery = r;
    }
    return r;
}

void emit_transversal(Assembler &a, GateKind kind, const std::vector<std::vector<uint32_t>> &blocks, int gate) {
    SubnetworkTag tag;
    tag.kind = TagKind::EncodedOperation;
    tag.gate = gate;
    size_t s = a.open(tag, -1);
    for (size_t j = 0; j < 7; j++) {
        if (gate_arity(kind) == 2) {
            a.gate(s, kind, {blocks[0][j], blocks[1][j]});
        } else {
            a.gate(s, kind, {blocks[0][j]});
        }
    }
}

void check_transversal_kind(GateKind kind) {
    switch (kind) {
        case GateKind::BitFlip:
        case GateKind::SignFlip:
        case GateKind::PhaseShift:
        case GateKind::Hadamard:
        case GateKind::ControlledNot:
            return;
        default:
            throw std::invalid_argument(std::string("no transversal encoding for ") + gate_name(kind));
    }
}

}  // namespace

Network build_cat_prep(int attempt, size_t cat_size) {
    if (attempt != 1 && attempt != 2) {
        throw std::invalid_argument("cat attempt must be 1 or 2");
    }
    Assembler a;
    CatPool pool = make_pool(a, cat_size);
    int cond = -1;
    if (attempt == 2) {
        Condition external;
        external.kind = ConditionKind::External;
        cond = a.condition(external);
    }
    SubnetworkTag tag;
    tag.kind = TagKind::CatPrep;
    tag.cat_attempt = attempt;
    emit_cat(a, pool, tag, cond);
    return a.finish();
}

Network build_syndrome_bit_extraction(int bit, int extraction, int attempt) {
    if (bit < 1 || bit > 7) {
        throw std::invalid_argument("bit must be in 1..7");
    }
    Assembler a;
    auto data = a.block(0);
    CatPool pool = make_pool(a, 4);
    SubnetworkTag scope;
    scope.extraction = extraction;
    scope.attempt = attempt;
    scope.block = 0;
    emit_syndrome_bit(a, pool, data, bit, scope, -1);
    return a.finish();
}

Network build_parity_gadget(size_t num_data) {
    Assembler a;
    std::vector<uint32_t> data;
    for (size_t j = 0; j < num_data; j++) {
        data.push_back(a.qubit(QubitRole::Data, 0, (int)j + 1));
    }
    a.net.blocks.push_back(data);
    CatPool pool = make_pool(a, num_data);
    SubnetworkTag scope;
    scope.bit = 1;
    scope.extraction = 1;
    scope.attempt = 1;
    SubnetworkTag coupling_tag = scope;
    coupling_tag.kind = TagKind::SyndromeBitExtraction;
    emit_bit(a, pool, data, scope, -1, GateKind::ControlledNot, coupling_tag);
    return a.finish();
}

Network build_syndrome_extraction(int attempt) {
    Assembler a;
    auto data = a.block(0);
    CatPool pool = make_pool(a, 4);
    SubnetworkTag scope;
    scope.extraction = 1;
    scope.attempt = attempt;
    scope.block = 0;
    emit_extraction(a, pool, data, 0, false, scope, -1);
    return a.finish();
}

Network build_recovery() {
    Assembler a;
    a.block(0);
    CatPool pool = make_pool(a, 4);
    int r = emit_recovery(a, pool, 0, 0, false);
    a.net.gates.push_back({{r}, {0}, {-1}, false});
    return a.finish();
}

Network build_transversal_gate(GateKind kind) {
    check_transversal_kind(kind);
    Assembler a;
    std::vector<std::vector<uint32_t>> blocks{a.block(0)};
    if (gate_arity(kind) == 2) {
        blocks.push_back(a.block(1));
    }
    emit_transversal(a, kind, blocks, 0);
    return a.finish();
}

namespace {

Network gate_network(GateKind kind, bool with_following) {
    check_transversal_kind(kind);
    Assembler a;
    std::vector<std::vector<uint32_t>> blocks{a.block(0)};
    if (gate_arity(kind) == 2) {
        blocks.push_back(a.block(1));
    }
    CatPool pool = make_pool(a, 4);
    EncodedGateInfo g;
    for (size_t b = 0; b < blocks.size(); b++) {
        g.recoveries.push_back(emit_recovery(a, pool, (int)b, 0, false));
        g.blocks.push_back((int)b);
        g.following.push_back(-1);
    }
    a.net.gates.push_back(g);
    emit_transversal(a, kind, blocks, 0);
    if (with_following) {
        for (size_t b = 0; b < blocks.size(); b++) {
            int id = (int)a.net.gates.size();
            int r = emit_recovery(a, pool, (int)b, id, false);
            a.net.gates.push_back({{r}, {(int)b}, {-1}, true});
            a.net.gates[0].following[b] = id;
        }
    }
    return a.finish();
}

}  // namespace

Network build_gate_network(GateKind kind) {
    return gate_network(kind, false);
}

Network build_gate_context(GateKind kind) {
    return gate_network(kind, true);
}

Network build_encoded_zero_prep() {
    Assembler a;
    auto data = a.block(0);
    CatPool pool = make_pool(a, 4);
    SubnetworkTag tag;
    tag.kind = TagKind::EncodedOperation;
    tag.gate = 0;
    size_t s = a.open(tag, -1);
    for (auto q : data) {
        a.prep(s, q);
    }
    int r = emit_recovery(a, pool, 0, 0, true);
    a.net.gates.push_back({{r}, {0}, {-1}, false});
    return a.finish();
}

Network build_pi8_prep() {
    Assembler a;
    auto data = a.block(0);
    CatPool wide = make_pool(a, 7);
    CatPool pool = make_pool(a, 4);

    auto round = [&](int r) {
        SubnetworkTag scope;
        scope.round = r;
        scope.gate = 0;
        scope.block = 0;
        SubnetworkTag measure_tag = scope;
        measure_tag.kind = TagKind::Pi8Measurement;
        return emit_bit(a, wide, data, scope, -1, GateKind::ControlledHadamard, measure_tag);
    };

    EncodedGateInfo g;
    g.blocks = {0};
    g.following = {-1};
    auto m1 = round(1);
    g.recoveries.push_back(emit_recovery(a, pool, 0, 0, false));
    auto m2 = round(2);

    AcceptanceCheck agree;
    agree.records = m1;
    agree.records.insert(agree.records.end(), m2.begin(), m2.end());
    a.net.acceptance.push_back(agree);

    int fix = a.condition({ConditionKind::RecordParity, -1, m1});
    SubnetworkTag tag;
    tag.kind = TagKind::EncodedOperation;
    tag.gate = 0;
    size_t s = a.open(tag, fix);
    for (auto q : data) {
        a.gate(s, GateKind::SignFlip, {q});
    }
    s = a.open(tag, fix);
    for (auto q : data) {
        a.gate(s, GateKind::BitFlip, {q});
    }
    g.recoveries.push_back(emit_recovery(a, pool, 0, 0, false));
    a.net.gates.push_back(g);
    return a.finish();
}

Network build_pi8_analog() {
    Assembler a;
    uint32_t d = a.qubit(QubitRole::Data, 0, 1);
    uint32_t c = a.qubit(QubitRole::Ancilla);
    a.net.blocks.push_back({d});
    SubnetworkTag tag;
    tag.kind = TagKind::Pi8Measurement;
    size_t s = a.open(tag, -1);
    a.prep(s, d);
    std::vector<int> outcomes;
    for (int r = 1; r <= 2; r++) {
        tag.round = r;
        s = a.open(tag, -1);
        a.prep(s, c);
        s = a.open(tag, -1);
        a.gate(s, GateKind::Hadamard, {c});
        s = a.open(tag, -1);
        a.gate(s, GateKind::ControlledHadamard, {c, d});
        s = a.open(tag, -1);
        a.gate(s, GateKind::Hadamard, {c});
        s = a.open(tag, -1);
        outcomes.push_back(a.measure(s, c));
    }
    a.net.acceptance.push_back({{outcomes[0], outcomes[1]}});
    int fix = a.condition({ConditionKind::RecordParity, -1, {outcomes[0]}});
    tag.kind = TagKind::EncodedOperation;
    tag.round = 0;
    s = a.open(tag, fix);
    a.gate(s, GateKind::SignFlip, {d});
    s = a.open(tag, fix);
    a.gate(s, GateKind::BitFlip, {d});
    return a.finish();
}

Network build_toffoli_gadget() {
    Assembler a;
    uint32_t x = a.qubit(QubitRole::Data, 0, 1);
    uint32_t y = a.qubit(QubitRole::Data, 0, 2);
    uint32_t t = a.qubit(QubitRole::Data, 0, 3);
    uint32_t m = a.qubit(QubitRole::Ancilla);
    a.net.blocks.push_back({x, y, t});
    SubnetworkTag tag;
    tag.kind = TagKind::ToffoliGadget;

    auto one = [&](GateKind k, uint32_t q) {
        size_t s = a.open(tag, -1);
        a.gate(s, k, {q});
    };
    auto cnot = [&](uint32_t c, uint32_t tq) {
        size_t s = a.open(tag, -1);
        a.gate(s, GateKind::ControlledNot, {c, tq});
    };
    // diag(1, e^{i pi/4}) on q from a |pi/8> ancilla: H S_i^dag maps it to the
    // +1 eigenstate of (X+Y)/sqrt2, which is then teleported in.
    auto t_gate = [&](uint32_t q, bool dagger) {
        size_t s = a.open(tag, -1);
        a.prep(s, m, std::numbers::pi / 8);
        one(GateKind::SignFlip, m);
        one(GateKind::PhaseShift, m);
        one(GateKind::Hadamard, m);
        cnot(q, m);
        s = a.open(tag, -1);
        int r = a.measure(s, m);
        int fix = a.condition({ConditionKind::RecordParity, -1, {r}});
        s = a.open(tag, fix);
        a.gate(s, GateKind::PhaseShift, {q});
        if (dagger) {
            one(GateKind::SignFlip, q);
            one(GateKind::PhaseShift, q);
        }
    };

    one(GateKind::Hadamard, t);
    cnot(y, t);
    t_gate(t, true);
    cnot(x, t);
    t_gate(t, false);
    cnot(y, t);
    t_gate(t, true);
    cnot(x, t);
    t_gate(y, false);
    t_gate(t, false);
    one(GateKind::Hadamard, t);
    cnot(x, y);
    t_gate(x, false);
    t_gate(y, true);
    cnot(x, y);
    return a.finish();
}

const std::vector<std::string> &builder_names() {
    static const std::vector<std::string> names = {
        "cat_prep",   "syndrome_bit_extraction", "syndrome_extraction", "recovery",   "transversal_cnot",
        "gate_network", "gate_context",          "encoded_zero_prep",   "pi8_prep",   "pi8_analog",
        "toffoli",
    };
    return names;
}

Network build_named(const std::string &name) {
    if (name == "cat_prep") {
        return build_cat_prep(1);
    }
    if (name == "syndrome_bit_extraction") {
        return build_syndrome_bit_extraction(1);
    }
    if (name == "syndrome_extraction") {
        return build_syndrome_extraction();
    }
    if (name == "recovery") {
        return build_recovery();
    }
    if (name == "transversal_cnot") {
        return build_transversal_gate(GateKind::ControlledNot);
    }
    if (name == "gate_network") {
        return build_gate_network(GateKind::ControlledNot);
    }
    if (name == "gate_context") {
        return build_gate_context(GateKind::ControlledNot);
    }
    if (name == "encoded_zero_prep") {
        return build_encoded_zero_prep();
    }
    if (name == "pi8_prep") {
        return build_pi8_prep();
    }
    if (name == "pi8_analog") {
        return build_pi8_analog();
    }
    if (name == "toffoli") {
        return build_toffoli_gadget();
    }
    throw std::invalid_argument("unknown network name: " + name);
}

}  // namespace ftlab
