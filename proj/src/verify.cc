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

#include "ftlab/verify.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "ftlab/builders.h"
#include "ftlab/dense_oracle.h"
#include "ftlab/steane.h"

namespace ftlab::verify {

namespace {

using namespace oracle;

struct PrintedIdentity {
    const char *error;
    GateKind gate;
    uint8_t log_i;
    const char *image;
    bool disputed;
};

// E U = i^k U E' as printed; the two disputed rows disagree with direct computation.
constexpr PrintedIdentity PRINTED[] = {
    {"N", GateKind::SignFlip, 2, "N", false},
    {"S", GateKind::BitFlip, 2, "S", false},
    {"S", GateKind::Hadamard, 0, "N", false},
    {"N", GateKind::Hadamard, 0, "S", false},
    {"S", GateKind::PhaseShift, 0, "S", false},
    {"N", GateKind::PhaseShift, 3, "N", true},
    {"IS", GateKind::ControlledNot, 0, "SS", false},
    {"SI", GateKind::ControlledNot, 2, "SI", true},
    {"IN", GateKind::ControlledNot, 0, "IN", false},
    {"NI", GateKind::ControlledNot, 0, "NN", false},
};

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

}  // namespace

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Verified:
            return "verified";
        case Verdict::OracleOverridden:
            return "oracle-overridden";
        default:
            return "failed";
    }
}

std::vector<IdentityRow> identity_suite() {
    std::vector<IdentityRow> rows;
    for (const auto &p : PRINTED) {
        IdentityRow row;
        row.error = p.error;
        row.gate = p.gate;
        row.printed_log_i = p.log_i;
        row.printed_image = p.image;
        row.disputed = p.disputed;

        size_t n = gate_arity(p.gate);
        std::vector<uint32_t> qubits;
        for (size_t q = 0; q < n; q++) {
            qubits.push_back((uint32_t)q);
        }
        PauliOperator e = PauliOperator::from_str(std::string("+") + p.error);
        PauliOperator printed = PauliOperator::from_str(std::string("+") + p.image);
        printed.set_log_i(p.log_i);
        row.computed = conjugate_through_gate(e, p.gate, qubits);
        row.masks_match = row.computed.same_masks(printed);
        row.phase_match = row.masks_match && row.computed.log_i() == printed.log_i();

        OperatorMatrix u = gate_matrix(p.gate);
        OperatorMatrix lhs = pauli_matrix(e) * u;
        OperatorMatrix rhs = u * pauli_matrix(row.computed);
        row.oracle_residual = (lhs - rhs).cwiseAbs().maxCoeff();

        bool oracle_ok = row.oracle_residual <= 1e-12;
        if (!oracle_ok) {
            row.verdict = Verdict::Failed;
        } else if (row.masks_match && row.phase_match) {
            row.verdict = Verdict::Verified;
        } else if (row.disputed) {
            row.verdict = Verdict::OracleOverridden;
        } else {
            row.verdict = Verdict::Failed;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

GadgetReport check_toffoli_gadget(double tol) {
    Network net = build_toffoli_gadget();
    size_t n = net.num_qubits();
    size_t extra = n - 3;
    OperatorMatrix toffoli = OperatorMatrix::Identity(8, 8);
    toffoli(6, 6) = 0;
    toffoli(7, 7) = 0;
    toffoli(6, 7) = 1;
    toffoli(7, 6) = 1;

    // Per measurement record: the linear map on the register.
    std::map<std::vector<uint8_t>, OperatorMatrix> maps;
    for (size_t in = 0; in < 8; in++) {
        StateVector input = basis_state(n, in << extra);
        for (const auto &b : simulate_branches(net, input)) {
            StateVector raw = b.state * std::sqrt(b.probability);
            StateVector column = StateVector::Zero(8);
            for (size_t out = 0; out < 8; out++) {
                for (size_t low = 0; low < (size_t{1} << extra); low++) {
                    column[out] += raw[(out << extra) | low];
                }
            }
            auto it = maps.find(b.record);
            if (it == maps.end()) {
                it = maps.emplace(b.record, OperatorMatrix::Zero(8, 8)).first;
            }
            it->second.col(in) = column;
        }
    }
    GadgetReport report;
    report.branches = maps.size();
    report.pass = !maps.empty();
    for (auto &[record, k] : maps) {
        double scale = std::sqrt(k.squaredNorm() / 8);
        if (scale == 0) {
            continue;
        }
        report.accepted++;
        double d = phase_aligned_distance(k / scale, toffoli);
        report.max_distance = std::max(report.max_distance, d);
    }
    report.pass = report.pass && report.max_distance <= tol;
    return report;
}

GadgetReport check_pi8_analog(double tol) {
    Network net = build_pi8_analog();
    size_t n = net.num_qubits();
    StateVector target = angle_state(std::numbers::pi / 8);
    GadgetReport report;
    report.pass = true;
    double accepted_probability = 0;
    for (const auto &b : simulate_branches(net, basis_state(n, 0))) {
        report.branches++;
        if (!b.accepted) {
            continue;
        }
        report.accepted++;
        accepted_probability += b.probability;
        // Data is qubit 0; the control is collapsed, so one half of the amplitudes vanishes.
        StateVector data = StateVector::Zero(2);
        for (size_t i = 0; i < 4; i++) {
            data[i >> 1] += b.state[i];
        }
        double fidelity = std::norm(target.dot(data));
        report.max_distance = std::max(report.max_distance, std::abs(1 - fidelity));
    }
    report.pass = report.accepted > 0 && report.max_distance <= tol && std::abs(accepted_probability - 1) <= 1e-10;
    return report;
}

std::vector<Check> hadamard_eigen_checks(double tol) {
    std::vector<Check> out;
    OperatorMatrix h = gate_matrix(GateKind::Hadamard);
    StateVector plus = angle_state(std::numbers::pi / 8);
    StateVector minus = angle_state(5 * std::numbers::pi / 8);
    double e1 = (h * plus - plus).cwiseAbs().maxCoeff();
    double e2 = (h * minus + minus).cwiseAbs().maxCoeff();
    out.push_back({"H +1 eigenvector (cos pi/8, sin pi/8)", e1 <= tol, fmt("residual %.3g", e1)});
    out.push_back({"H -1 eigenvector (cos 5pi/8, sin 5pi/8)", e2 <= tol, fmt("residual %.3g", e2)});

    // The conditional correction of the purification network: S then N.
    StateVector fixed = gate_matrix(GateKind::BitFlip) * (gate_matrix(GateKind::SignFlip) * minus);
    double d = phase_aligned_distance(fixed, plus);
    out.push_back({"correction N S maps the -1 eigenvector to the +1 eigenvector", d <= tol, fmt("distance %.3g", d)});
    return out;
}

bool Report::ok() const {
    for (const auto &r : identities) {
        if (r.verdict == Verdict::Failed) {
            return false;
        }
    }
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["ok"] = ok();
    j["identities"] = nlohmann::json::array();
    for (const auto &r : identities) {
        PauliOperator printed = PauliOperator::from_str("+" + r.printed_image);
        printed.set_log_i(r.printed_log_i);
        j["identities"].push_back({
            {"error", r.error},
            {"gate", gate_name(r.gate)},
            {"printed_image", printed.str()},
            {"computed_image", r.computed.str()},
            {"masks_match", r.masks_match},
            {"phase_match", r.phase_match},
            {"oracle_residual", r.oracle_residual},
            {"verdict", verdict_name(r.verdict)},
        });
    }
    j["checks"] = nlohmann::json::array();
    for (const auto &c : checks) {
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return j;
}

Report run_all() {
    Report report;
    report.identities = identity_suite();

    auto code = steane::codespace_check();
    std::string detail = "dimension " + std::to_string(code.codespace_dimension);
    for (const auto &f : code.failures) {
        detail += "; " + f;
    }
    report.checks.push_back({"code space", code.ok(), detail});

    for (auto &c : hadamard_eigen_checks()) {
        report.checks.push_back(std::move(c));
    }

    auto tof = check_toffoli_gadget();
    report.checks.push_back({"Toffoli gadget", tof.pass,
                             std::to_string(tof.accepted) + " branches, max distance " +
                                 fmt("%.3g", tof.max_distance)});
    auto pi8 = check_pi8_analog();
    report.checks.push_back({"pi/8 purification analog", pi8.pass,
                             std::to_string(pi8.accepted) + "/" + std::to_string(pi8.branches) +
                                 " branches accepted, max infidelity " + fmt("%.3g", pi8.max_distance)});

    OperatorMatrix hh = unitary_of_network([] {
        Network net;
        net.qubits.push_back({QubitRole::Data, 0, 1});
        for (int k = 0; k < 2; k++) {
            Slice s;
            s.gates.push_back({GateKind::Hadamard, {0}});
            net.slices.push_back(s);
        }
        return net;
    }());
    double dh = (hh - OperatorMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    report.checks.push_back({"H H = I", dh <= 1e-12, fmt("residual %.3g", dh)});
    return report;
}

}  // namespace ftlab::verify
