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

#ifndef FTLAB_FRAME_SIM_H
#define FTLAB_FRAME_SIM_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ftlab/network.h"

namespace ftlab::frame {

constexpr size_t LANES = 1024;
constexpr size_t WORDS = LANES / 64;
using Plane = std::array<uint64_t, WORDS>;

inline bool lane_bit(const Plane &p, size_t lane) {
    return (p[lane >> 6] >> (lane & 63)) & 1;
}
inline void flip_lane(Plane &p, size_t lane) {
    p[lane >> 6] ^= uint64_t{1} << (lane & 63);
}

struct UnsupportedNetwork : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pauli frame of LANES independent trials: one x and one z plane per qubit.
struct FrameState {
    std::vector<Plane> x;
    std::vector<Plane> z;
    std::vector<Plane> records;
    Plane faulted{};  // lanes that received at least one error
};

/// Supplies errors after each slice. `exec` marks the lanes in which the
/// location executed; `pass` counts repetitions of a retried cat preparation.
class ErrorSource {
   public:
    virtual ~ErrorSource() = default;
    virtual void inject(const Network &net, uint32_t location, uint32_t pass, const Plane &exec, FrameState &state) = 0;
};

/// Applies `x`/`z` (bit j for the j-th qubit of the location) in `lane`.
void apply_error(const Network &net, uint32_t location, size_t lane, uint8_t x, uint8_t z, FrameState &state);

struct RecoveryHistory {
    std::array<uint8_t, LANES> syndrome{};  // syndrome the correction was based on
    Plane second_attempt{};
    Plane undecided{};                      // both attempts inconsistent, no correction
};

struct BatchResult {
    std::vector<std::array<Plane, 2>> logical;  // per block: logical N plane, logical S plane
    Plane failed{};                             // any block with a nonzero logical error
    Plane rejected{};                           // an acceptance check fired
    Plane retry_exhausted{};
    uint64_t retries = 0;                       // extra cat passes over all lanes
    std::vector<RecoveryHistory> recoveries;
};

/// Executes a stabilizer network on code-state inputs, relative to the
/// error-free run. Classical decisions only read record parities that are
/// deterministic in the error-free run.
class FrameSimulator {
   public:
    explicit FrameSimulator(const Network &net, uint32_t retry_cap = 100);
    BatchResult run(ErrorSource &source) const;
    const Network &network() const {
        return net_;
    }

   private:
    const Network &net_;
    uint32_t retry_cap_;
    std::vector<std::vector<uint32_t>> slice_locations_;
};

}  // namespace ftlab::frame

#endif
