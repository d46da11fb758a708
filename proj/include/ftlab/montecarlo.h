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

#ifndef FTLAB_MONTECARLO_H
#define FTLAB_MONTECARLO_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "ftlab/calibration.h"
#include "ftlab/failure.h"
#include "ftlab/frame_sim.h"
#include "ftlab/network.h"

namespace ftlab::mc {

/// SplitMix64 output function.
uint64_t mix64(uint64_t x);

/// Counter-based stream: SplitMix64 seeded by (seed, a, b, c).
class Stream {
   public:
    Stream(uint64_t seed, uint64_t a, uint64_t b, uint64_t c);
    uint64_t next();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [0, n).
    uint64_t below(uint64_t n);

   private:
    uint64_t state_;
};

struct ErrorModelConfig {
    double p = 0;
    uint64_t seed = 0;
    /// Weights over the non-identity errors of one- and two-qubit locations,
    /// indexed by code-1 where bit 2j of code is the bit flip and bit 2j+1 the
    /// sign flip of the j-th qubit. Empty means uniform.
    std::vector<double> mix1;
    std::vector<double> mix2;
    void validate() const;
};

/// Location index -> error over the location's qubits.
using Assignment = std::map<uint32_t, PauliOperator>;

/// One trial's errors, keyed by (seed, trial, location).
Assignment sample_instance(const Network &net, const ErrorModelConfig &config, uint64_t trial);

struct TrialResult {
    bool accepted = true;
    bool failed = false;
    std::vector<PauliOperator> logical;  // one 1-qubit operator per block
    std::vector<uint8_t> syndromes;      // per recovery: syndrome used for the correction
    std::vector<bool> second_attempt;    // per recovery
    uint64_t retries = 0;
};

TrialResult execute_pauli_frame(const Network &net, const Assignment &assignment);

/// Independent stochastic errors in every executed lane.
class StochasticSource : public frame::ErrorSource {
   public:
    StochasticSource(const ErrorModelConfig &config, uint64_t batch);
    void inject(const Network &net, uint32_t location, uint32_t pass, const frame::Plane &exec,
                frame::FrameState &state) override;

   private:
    const ErrorModelConfig &config_;
    uint64_t batch_;
    double log_q_;
    uint8_t pick(Stream &rng, size_t arity) const;
};

/// Fixed errors per (lane, location, pass).
class AssignmentSource : public frame::ErrorSource {
   public:
    void add(size_t lane, uint32_t location, uint32_t pass, uint8_t x, uint8_t z);
    void inject(const Network &net, uint32_t location, uint32_t pass, const frame::Plane &exec,
                frame::FrameState &state) override;

   private:
    struct Entry {
        size_t lane;
        uint32_t pass;
        uint8_t x;
        uint8_t z;
    };
    std::map<uint32_t, std::vector<Entry>> entries_;
};

/// Recovery+gate network sampled for a gate class; memory locations dropped
/// when `with_memory` is false.
Network mc_network(failure::GateClass gate_class, bool with_memory);

struct Options {
    bool with_memory = false;
    size_t workers = 1;
    uint32_t retry_cap = 100;
};

struct Estimate {
    std::string gate_class;
    double p = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    uint64_t rejected = 0;
    uint64_t retries = 0;
    double rate = 0;
    double ci_low = 0;
    double ci_high = 0;
    double analytic_bound = 0;
    uint64_t seed = 0;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials);

Estimate estimate_logical_error(failure::GateClass gate_class, double p, uint64_t trials, uint64_t seed,
                                const Options &options = {}, const Calibration &cal = default_calibration());

/// Same, on a prebuilt network (reused across a sweep).
Estimate estimate_on(const Network &net, failure::GateClass gate_class, double p, uint64_t trials, uint64_t seed,
                     const Options &options, const Calibration &cal);

struct SweepConfig {
    std::vector<double> p_values;
    uint64_t trials = 0;
    std::string gate_class = "two_qubit";
    uint64_t seed = 0;
    bool with_memory = false;
};

/// Rejects unknown and malformed fields with a message naming the field.
SweepConfig sweep_config_from_json(const nlohmann::json &j);

std::vector<Estimate> run_sweep(const SweepConfig &config, const Options &options, const Calibration &cal);

std::string sweep_csv(const std::vector<Estimate> &rows);

/// Least-squares slope of log(rate) against log(p).
double loglog_slope(const std::vector<double> &p, const std::vector<double> &rate);

}  // namespace ftlab::mc

#endif
