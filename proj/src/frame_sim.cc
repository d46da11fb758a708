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

#include "ftlab/frame_sim.h"

#include <bit>

#include "ftlab/frame_kernels.h"
#include "ftlab/steane.h"

namespace ftlab::frame {

namespace {

using SyndromePlanes = std::array<Plane, 6>;

Plane filled(uint64_t v) {
    Plane p;
    p.fill(v);
    return p;
}

class Run {
   public:
    Run(const Network &net, ErrorSource &source, uint32_t cap, const std::vector<std::vector<uint32_t>> &locs)
        : net_(net), k_(simd::active_kernels()), source_(source), cap_(cap), locs_(locs) {
        size_t n = net.num_qubits();
        st_.x.assign(n, Plane{});
        st_.z.assign(n, Plane{});
        st_.records.assign(net.num_records, Plane{});
        masks_.assign(net.conditions.size(), Plane{});
        mask_ready_.assign(net.conditions.size(), false);
        corr_x_.assign(net.recoveries.size(), {});
        corr_z_.assign(net.recoveries.size(), {});
        corr_ready_.assign(net.recoveries.size(), false);
        res_.recoveries.assign(net.recoveries.size(), RecoveryHistory{});
        ones_ = filled(~uint64_t{0});
    }

    BatchResult execute() {
        size_t s = 0;
        while (s < net_.slices.size()) {
            int c = net_.slices[s].condition;
            if (c >= 0 && net_.conditions[c].kind == ConditionKind::RetryUntilAccepted &&
                s == net_.conditions[c].first_slice) {
                retry_block(c);
                s = net_.conditions[c].end_slice;
                continue;
            }
            exec_slice(s, mask_of(c), 0);
            s++;
        }
        finish();
        return std::move(res_);
    }

   private:
    const Network &net_;
    const simd::Kernels &k_;
    ErrorSource &source_;
    uint32_t cap_;
    const std::vector<std::vector<uint32_t>> &locs_;
    FrameState st_;
    BatchResult res_;
    Plane ones_;
    std::vector<Plane> masks_;
    std::vector<bool> mask_ready_;
    std::vector<std::array<Plane, 7>> corr_x_;
    std::vector<std::array<Plane, 7>> corr_z_;
    std::vector<bool> corr_ready_;

    Plane parity(const std::vector<int> &records) const {
        Plane p{};
        for (int r : records) {
            k_.xor_into(p.data(), st_.records[r].data(), WORDS);
        }
        return p;
    }

    const Plane &mask_of(int c) {
        if (c < 0) {
            return ones_;
        }
        if (mask_ready_[c]) {
            return masks_[c];
        }
        const auto &cond = net_.conditions[c];
        Plane m{};
        switch (cond.kind) {
            case ConditionKind::RecordParity:
            case ConditionKind::RetryUntilAccepted:
                m = parity(cond.records);
                break;
            case ConditionKind::SecondAttempt: {
                auto s1 = syndrome_planes(cond.recovery, 0);
                auto s2 = syndrome_planes(cond.recovery, 1);
                for (size_t b = 0; b < 6; b++) {
                    k_.xor_into(s1[b].data(), s2[b].data(), WORDS);
                    k_.or_into(m.data(), s1[b].data(), WORDS);
                }
                break;
            }
            case ConditionKind::External:
                break;
        }
        Plane parent = mask_of(cond.parent);
        k_.and_into(m.data(), parent.data(), WORDS);
        masks_[c] = m;
        mask_ready_[c] = true;
        return masks_[c];
    }

    SyndromePlanes syndrome_planes(int recovery, size_t extraction) const {
        Plane xpar[3]{}, zpar[3]{};
        for (const auto &check : net_.recoveries[recovery].extractions.at(extraction)) {
            Plane p = parity(check.records);
            if (check.kind == CheckKind::ZCheck) {
                xpar[check.support] = p;
            } else if (check.kind == CheckKind::XCheck) {
                zpar[check.support] = p;
            }
        }
        SyndromePlanes s;
        for (size_t i = 0; i < 3; i++) {
            s[i] = xpar[i];
            s[i + 3] = xpar[i];
            k_.xor_into(s[i + 3].data(), zpar[i].data(), WORDS);
        }
        return s;
    }

    void retry_block(int c) {
        const auto &cond = net_.conditions[c];
        Plane m = mask_of(c);
        uint32_t pass = 0;
        for (; pass < cap_ && k_.any(m.data(), WORDS); pass++) {
            masks_[c] = m;
            if (pass > 0) {
                res_.retries += k_.popcount(m.data(), WORDS);
            }
            for (size_t s = cond.first_slice; s < cond.end_slice; s++) {
                exec_slice(s, m, pass);
            }
            k_.and_into(m.data(), st_.records[cond.retry_record].data(), WORDS);
        }
        k_.or_into(res_.retry_exhausted.data(), m.data(), WORDS);
    }

    void compute_correction(int r) {
        const auto &rec = net_.recoveries[r];
        auto s1 = syndrome_planes(r, 0);
        auto s2 = syndrome_planes(r, 1);
        auto s3 = syndrome_planes(r, 2);
        auto s4 = syndrome_planes(r, 3);
        Plane diff1{}, diff2{};
        for (size_t b = 0; b < 6; b++) {
            Plane d = s1[b];
            k_.xor_into(d.data(), s2[b].data(), WORDS);
            k_.or_into(diff1.data(), d.data(), WORDS);
            d = s3[b];
            k_.xor_into(d.data(), s4[b].data(), WORDS);
            k_.or_into(diff2.data(), d.data(), WORDS);
        }
        const Plane &second = mask_of(rec.second_attempt);
        auto &hist = res_.recoveries[r];
        hist.second_attempt = second;
        // use1: first attempt consistent; use3: second attempt run and consistent.
        Plane use1 = ones_, use3 = second;
        k_.and_not(use1.data(), diff1.data(), WORDS);
        k_.and_not(use3.data(), diff2.data(), WORDS);
        k_.and_not(use3.data(), use1.data(), WORDS);
        hist.undecided = second;
        k_.and_into(hist.undecided.data(), diff2.data(), WORDS);

        Plane nonzero{};
        for (size_t b = 0; b < 6; b++) {
            Plane t{};
            k_.copy_and(t.data(), s1[b].data(), use1.data(), WORDS);
            k_.or_into(nonzero.data(), t.data(), WORDS);
            k_.copy_and(t.data(), s3[b].data(), use3.data(), WORDS);
            k_.or_into(nonzero.data(), t.data(), WORDS);
        }
        auto &cx = corr_x_[r];
        auto &cz = corr_z_[r];
        for (auto &p : cx) {
            p = Plane{};
        }
        for (auto &p : cz) {
            p = Plane{};
        }
        const auto &table = steane::decoding_table();
        for (size_t w = 0; w < WORDS; w++) {
            uint64_t bits = nonzero[w];
            while (bits) {
                size_t lane = w * 64 + (size_t)std::countr_zero(bits);
                bits &= bits - 1;
                const SyndromePlanes &src = lane_bit(use1, lane) ? s1 : s3;
                uint8_t syn = 0;
                for (size_t b = 0; b < 6; b++) {
                    syn |= (uint8_t)(lane_bit(src[b], lane) << b);
                }
                hist.syndrome[lane] = syn;
                const auto &c = table[syn];
                for (size_t j = 0; j < 7; j++) {
                    if ((c.x >> j) & 1) {
                        flip_lane(cx[j], lane);
                    }
                    if ((c.z >> j) & 1) {
                        flip_lane(cz[j], lane);
                    }
                }
            }
        }
        corr_ready_[r] = true;
    }

    void exec_slice(size_t s, const Plane &m, uint32_t pass) {
        if (!k_.any(m.data(), WORDS)) {
            return;
        }
        for (const auto &g : net_.slices[s].gates) {
            const auto &q = g.qubits;
            switch (g.kind) {
                case GateKind::BitFlip:
                case GateKind::SignFlip:
                    break;
                case GateKind::PhaseShift:
                    k_.xor_and(st_.z[q[0]].data(), st_.x[q[0]].data(), m.data(), WORDS);
                    break;
                case GateKind::Hadamard:
                    k_.masked_swap(st_.x[q[0]].data(), st_.z[q[0]].data(), m.data(), WORDS);
                    break;
                case GateKind::ControlledNot:
                    k_.xor_and(st_.x[q[1]].data(), st_.x[q[0]].data(), m.data(), WORDS);
                    k_.xor_and(st_.z[q[0]].data(), st_.z[q[1]].data(), m.data(), WORDS);
                    break;
                case GateKind::Prepare:
                    k_.and_not(st_.x[q[0]].data(), m.data(), WORDS);
                    k_.and_not(st_.z[q[0]].data(), m.data(), WORDS);
                    break;
                case GateKind::Measure:
                    k_.blend(st_.records[g.record].data(), st_.x[q[0]].data(), m.data(), WORDS);
                    break;
                case GateKind::PauliCorrection: {
                    if (!corr_ready_[g.recovery]) {
                        compute_correction(g.recovery);
                    }
                    const auto &data = net_.recoveries[g.recovery].data;
                    size_t j = 0;
                    while (data[j] != q[0]) {
                        j++;
                    }
                    k_.xor_and(st_.x[q[0]].data(), corr_x_[g.recovery][j].data(), m.data(), WORDS);
                    k_.xor_and(st_.z[q[0]].data(), corr_z_[g.recovery][j].data(), m.data(), WORDS);
                    break;
                }
                case GateKind::ControlledHadamard:
                    throw UnsupportedNetwork("controlled-H has no Pauli frame rule");
            }
        }
        for (uint32_t loc : locs_[s]) {
            source_.inject(net_, loc, pass, m, st_);
        }
    }

    void finish() {
        for (const auto &check : net_.acceptance) {
            Plane p = parity(check.records);
            k_.or_into(res_.rejected.data(), p.data(), WORDS);
        }
        res_.logical.assign(net_.blocks.size(), {});
        for (size_t b = 0; b < net_.blocks.size(); b++) {
            const auto &data = net_.blocks[b];
            Plane touched{};
            for (auto q : data) {
                k_.or_into(touched.data(), st_.x[q].data(), WORDS);
                k_.or_into(touched.data(), st_.z[q].data(), WORDS);
            }
            auto &out = res_.logical[b];
            for (size_t w = 0; w < WORDS; w++) {
                uint64_t bits = touched[w];
                while (bits) {
                    size_t lane = w * 64 + (size_t)std::countr_zero(bits);
                    bits &= bits - 1;
                    uint8_t x = 0, z = 0;
                    for (size_t j = 0; j < data.size(); j++) {
                        x |= (uint8_t)(lane_bit(st_.x[data[j]], lane) << j);
                        z |= (uint8_t)(lane_bit(st_.z[data[j]], lane) << j);
                    }
                    uint8_t cls = steane::decode_residual(x, z);
                    if (cls & 1) {
                        flip_lane(out[0], lane);
                    }
                    if (cls & 2) {
                        flip_lane(out[1], lane);
                    }
                }
            }
            k_.or_into(res_.failed.data(), out[0].data(), WORDS);
            k_.or_into(res_.failed.data(), out[1].data(), WORDS);
        }
    }
};

}  // namespace

void apply_error(const Network &net, uint32_t location, size_t lane, uint8_t x, uint8_t z, FrameState &state) {
    const auto &qs = net.locations[location].qubits;
    for (size_t j = 0; j < qs.size(); j++) {
        if ((x >> j) & 1) {
            flip_lane(state.x[qs[j]], lane);
        }
        if ((z >> j) & 1) {
            flip_lane(state.z[qs[j]], lane);
        }
    }
    if (x | z) {
        state.faulted[lane >> 6] |= uint64_t{1} << (lane & 63);
    }
}

FrameSimulator::FrameSimulator(const Network &net, uint32_t retry_cap) : net_(net), retry_cap_(retry_cap) {
    for (const auto &slice : net.slices) {
        for (const auto &g : slice.gates) {
            if (g.kind == GateKind::ControlledHadamard) {
                throw UnsupportedNetwork("controlled-H has no Pauli frame rule");
            }
            if (g.kind == GateKind::Prepare && net.qubits[g.qubits[0]].role == QubitRole::Data) {
                throw UnsupportedNetwork("data preparation makes syndrome outcomes random in the error-free run");
            }
        }
    }
    for (const auto &rec : net.recoveries) {
        if (rec.extractions.size() != 4) {
            throw UnsupportedNetwork("recovery without four extractions");
        }
    }
    slice_locations_.assign(net.slices.size(), {});
    for (size_t i = 0; i < net.locations.size(); i++) {
        slice_locations_[net.locations[i].slice].push_back((uint32_t)i);
    }
}

BatchResult FrameSimulator::run(ErrorSource &source) const {
    return Run(net_, source, retry_cap_, slice_locations_).execute();
}

}  // namespace ftlab::frame
