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

#include "ftlab/dense_oracle.h"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ftlab::oracle {

using nlohmann::json;

namespace {

const Complex I1{0, 1};

size_t bit_of(size_t q, size_t n) {
    return n - 1 - q;
}

void check_size(size_t n) {
    if (n > MAX_QUBITS) {
        throw OracleError("oracle is capped at " + std::to_string(MAX_QUBITS) + " qubits, network has " +
                          std::to_string(n));
    }
}

bool condition_holds(const Network &net, int c, const std::vector<uint8_t> &record) {
    while (c >= 0) {
        const auto &cond = net.conditions[c];
        switch (cond.kind) {
            case ConditionKind::RecordParity:
            case ConditionKind::RetryUntilAccepted: {
                int parity = 0;
                for (int r : cond.records) {
                    parity ^= record[r];
                }
                if (!parity) {
                    return false;
                }
                break;
            }
            case ConditionKind::External:
                return false;
            case ConditionKind::SecondAttempt:
                throw OracleError("recovery control is outside the oracle's scope");
        }
        c = cond.parent;
    }
    return true;
}

double prob_one(const StateVector &state, size_t q, size_t n) {
    size_t mask = size_t{1} << bit_of(q, n);
    double p = 0;
    for (Eigen::Index i = 0; i < state.size(); i++) {
        if (i & mask) {
            p += std::norm(state[i]);
        }
    }
    return p;
}

void reset_qubit(StateVector &state, size_t q, size_t n, double angle) {
    double p1 = prob_one(state, q, n) / state.squaredNorm();
    size_t mask = size_t{1} << bit_of(q, n);
    if (p1 > 1e-12 && p1 < 1 - 1e-12) {
        throw OracleError("preparation on qubit " + std::to_string(q) + " which is entangled or in superposition");
    }
    if (p1 >= 1 - 1e-12) {
        for (Eigen::Index i = 0; i < state.size(); i++) {
            if (i & mask) {
                state[i & ~mask] = state[i];
                state[i] = 0;
            }
        }
    }
    OperatorMatrix ry(2, 2);
    double c = std::cos(angle), s = std::sin(angle);
    ry << c, -s, s, c;
    uint32_t qq = (uint32_t)q;
    apply_gate(state, ry, std::span<const uint32_t>(&qq, 1), n);
}

}  // namespace

OperatorMatrix gate_matrix(GateKind kind) {
    const double r = 1 / std::sqrt(2.0);
    OperatorMatrix m;
    switch (kind) {
        case GateKind::BitFlip:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            return m;
        case GateKind::SignFlip:
            m.resize(2, 2);
            m << 1, 0, 0, -1;
            return m;
        case GateKind::PhaseShift:
            m.resize(2, 2);
            m << 1, 0, 0, I1;
            return m;
        case GateKind::Hadamard:
            m.resize(2, 2);
            m << r, r, r, -r;
            return m;
        case GateKind::ControlledNot:
            m = OperatorMatrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            return m;
        case GateKind::ControlledHadamard:
            m = OperatorMatrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = 1;
            m(2, 2) = m(2, 3) = m(3, 2) = r;
            m(3, 3) = -r;
            return m;
        default:
            throw OracleError(std::string("no unitary matrix for ") + gate_name(kind));
    }
}

OperatorMatrix kron(const OperatorMatrix &a, const OperatorMatrix &b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

OperatorMatrix pauli_matrix(const PauliOperator &p) {
    check_size(p.num_qubits());
    OperatorMatrix out = OperatorMatrix::Identity(1, 1);
    OperatorMatrix x = gate_matrix(GateKind::BitFlip);
    OperatorMatrix z = gate_matrix(GateKind::SignFlip);
    for (size_t q = 0; q < p.num_qubits(); q++) {
        OperatorMatrix f = OperatorMatrix::Identity(2, 2);
        if (p.x(q)) {
            f = f * x;
        }
        if (p.z(q)) {
            f = f * z;
        }
        out = kron(out, f);
    }
    static const Complex PHASES[] = {1.0, I1, -1.0, -I1};
    return PHASES[p.log_i()] * out;
}

OperatorMatrix embed(const OperatorMatrix &gate, std::span<const uint32_t> qubits, size_t num_qubits) {
    check_size(num_qubits);
    size_t dim = size_t{1} << num_qubits;
    OperatorMatrix out(dim, dim);
    for (size_t c = 0; c < dim; c++) {
        StateVector col = StateVector::Zero(dim);
        col[c] = 1;
        apply_gate(col, gate, qubits, num_qubits);
        out.col(c) = col;
    }
    return out;
}

StateVector angle_state(double angle) {
    StateVector v(2);
    v << std::cos(angle), std::sin(angle);
    return v;
}

StateVector basis_state(size_t num_qubits, size_t index) {
    check_size(num_qubits);
    StateVector v = StateVector::Zero(size_t{1} << num_qubits);
    v[index] = 1;
    return v;
}

void apply_gate(StateVector &state, const OperatorMatrix &gate, std::span<const uint32_t> qubits, size_t n) {
    size_t dim = state.size();
    if (qubits.size() == 1) {
        size_t m = size_t{1} << bit_of(qubits[0], n);
        Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
        for (size_t i = 0; i < dim; i++) {
            if (i & m) {
                continue;
            }
            Complex a = state[i], b = state[i | m];
            state[i] = g00 * a + g01 * b;
            state[i | m] = g10 * a + g11 * b;
        }
        return;
    }
    if (qubits.size() == 2) {
        size_t m0 = size_t{1} << bit_of(qubits[0], n);
        size_t m1 = size_t{1} << bit_of(qubits[1], n);
        for (size_t i = 0; i < dim; i++) {
            if (i & (m0 | m1)) {
                continue;
            }
            size_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
            Complex in[4], out[4];
            for (int k = 0; k < 4; k++) {
                in[k] = state[idx[k]];
            }
            for (int r = 0; r < 4; r++) {
                out[r] = 0;
                for (int k = 0; k < 4; k++) {
                    out[r] += gate(r, k) * in[k];
                }
            }
            for (int k = 0; k < 4; k++) {
                state[idx[k]] = out[k];
            }
        }
        return;
    }
    throw OracleError("only 1- and 2-qubit gates are supported");
}

OperatorMatrix unitary_of_network(const Network &net) {
    size_t n = net.num_qubits();
    check_size(n);
    size_t dim = size_t{1} << n;
    OperatorMatrix u = OperatorMatrix::Identity(dim, dim);
    for (const auto &slice : net.slices) {
        for (const auto &g : slice.gates) {
            if (!gate_is_unitary(g.kind)) {
                throw OracleError(std::string("network contains non-unitary ") + gate_name(g.kind));
            }
            if (g.condition >= 0) {
                throw OracleError("network contains classically controlled gates");
            }
            OperatorMatrix m = gate_matrix(g.kind);
            for (Eigen::Index c = 0; c < u.cols(); c++) {
                StateVector col = u.col(c);
                apply_gate(col, m, g.qubits, n);
                u.col(c) = col;
            }
        }
    }
    return u;
}

std::vector<Branch> simulate_branches(const Network &net, const StateVector &input, double min_probability) {
    size_t n = net.num_qubits();
    check_size(n);
    if ((size_t)input.size() != (size_t{1} << n)) {
        throw OracleError("input state has the wrong dimension");
    }
    // Unnormalized branch states; probability is the squared norm.
    std::vector<Branch> branches(1);
    branches[0].record.assign(net.num_records, 0);
    branches[0].state = input;
    for (const auto &slice : net.slices) {
        for (const auto &g : slice.gates) {
            std::vector<Branch> next;
            for (auto &b : branches) {
                if (!condition_holds(net, g.condition, b.record)) {
                    next.push_back(std::move(b));
                    continue;
                }
                switch (g.kind) {
                    case GateKind::Prepare:
                        reset_qubit(b.state, g.qubits[0], n, g.angle);
                        next.push_back(std::move(b));
                        break;
                    case GateKind::Measure: {
                        size_t mask = size_t{1} << bit_of(g.qubits[0], n);
                        for (int outcome = 0; outcome < 2; outcome++) {
                            Branch nb;
                            nb.record = b.record;
                            nb.record[g.record] = (uint8_t)outcome;
                            nb.state = b.state;
                            for (Eigen::Index i = 0; i < nb.state.size(); i++) {
                                if (((i & mask) != 0) != (outcome == 1)) {
                                    nb.state[i] = 0;
                                }
                            }
                            if (nb.state.squaredNorm() > min_probability) {
                                next.push_back(std::move(nb));
                            }
                        }
                        break;
                    }
                    case GateKind::PauliCorrection:
                        throw OracleError("decoder-driven corrections are outside the oracle's scope");
                    default:
                        apply_gate(b.state, gate_matrix(g.kind), g.qubits, n);
                        next.push_back(std::move(b));
                        break;
                }
            }
            branches = std::move(next);
        }
    }
    for (auto &b : branches) {
        b.probability = b.state.squaredNorm();
        b.state /= std::sqrt(b.probability);
        for (const auto &check : net.acceptance) {
            int parity = 0;
            for (int r : check.records) {
                parity ^= b.record[r];
            }
            if (parity) {
                b.accepted = false;
            }
        }
    }
    return branches;
}

double strength(const std::vector<OperatorMatrix> &family) {
    if (family.empty()) {
        return 0;
    }
    Eigen::Index dim = family[0].cols();
    OperatorMatrix sum = OperatorMatrix::Zero(dim, dim);
    for (const auto &a : family) {
        if (a.cols() != dim) {
            throw std::invalid_argument("operator family has mixed dimensions");
        }
        sum += a.adjoint() * a;
    }
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(sum, Eigen::EigenvaluesOnly);
    double top = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

double phase_aligned_distance(const OperatorMatrix &u, const OperatorMatrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("matrix shapes differ");
    }
    Eigen::Index bi = 0, bj = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < v.rows(); i++) {
        for (Eigen::Index j = 0; j < v.cols(); j++) {
            if (std::abs(v(i, j)) > best) {
                best = std::abs(v(i, j));
                bi = i;
                bj = j;
            }
        }
    }
    if (best <= 0) {
        return u.cwiseAbs().maxCoeff();
    }
    Complex c = u(bi, bj) / v(bi, bj);
    if (std::abs(c) == 0) {
        return (u - v).cwiseAbs().maxCoeff();
    }
    c /= std::abs(c);
    return (u - c * v).cwiseAbs().maxCoeff();
}

bool equal_up_to_global_phase(const OperatorMatrix &u, const OperatorMatrix &v, double tol) {
    return phase_aligned_distance(u, v) <= tol;
}

json matrix_to_json(const OperatorMatrix &m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            data.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

OperatorMatrix matrix_from_json(const json &j) {
    Eigen::Index rows = j.at("rows"), cols = j.at("cols");
    const auto &data = j.at("data");
    if ((Eigen::Index)data.size() != rows * cols) {
        throw std::invalid_argument("matrix data length does not match its shape");
    }
    OperatorMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; i++) {
        for (Eigen::Index j2 = 0; j2 < cols; j2++) {
            const auto &e = data[i * cols + j2];
            m(i, j2) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

}  // namespace ftlab::oracle
