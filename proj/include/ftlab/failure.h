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

#ifndef FTLAB_FAILURE_H
#define FTLAB_FAILURE_H

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ftlab/calibration.h"
#include "ftlab/network.h"

namespace ftlab::failure {

/// A following gate's status was needed before it was determined.
struct OrderingError : std::logic_error {
    using std::logic_error::logic_error;
};

struct InfeasibleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Where a location sits with respect to the failure definitions.
struct Region {
    int recovery = -1;    // owning recovery, -1 outside recoveries
    int extraction = 0;   // 1..4, 0 outside extractions
    bool second_cat = false;
    bool correction = false;
    int operation = -1;   // gate whose encoded operation holds the location
};

Region region_of(const ErrorLocation &loc);
std::vector<Region> regions_of(const Network &net);

/// Failed locations are indices into net.locations.
using Failed = std::span<const uint32_t>;

bool syndrome_extraction_failed(const Network &net, Failed failed, int recovery, int extraction);
bool recovery_failed(const Network &net, Failed failed, int recovery);

enum class Status : int8_t { Unknown = -1, Ok = 0, Failed = 1 };

/// `statuses` must already hold the status of every following gate of `gate`.
bool encoded_gate_failed(const Network &net, Failed failed, int gate, std::span<const Status> statuses);

/// Statuses of all gates, evaluated backwards in time.
std::vector<Status> evaluate_gates(const Network &net, Failed failed);

// Closed forms.
uint64_t choose2(uint64_t n);
uint64_t recovery_pairs(uint64_t L);
uint64_t count_recovery_pairs(const Calibration &cal, bool with_memory, bool prep);
uint64_t count_post_recovery_pairs(const Calibration &cal, bool with_memory);
uint64_t pi8_other_pairs(const Pi8Regions &r);

enum class GateClass { TwoQubit, Pi8 };
const char *gate_class_name(GateClass c);
GateClass gate_class_from_name(const std::string &name);

struct PairCountReport {
    GateClass gate_class = GateClass::TwoQubit;
    bool with_memory = false;
    uint64_t recovery_pairs = 0;
    uint64_t post_recovery_pairs = 0;  // pi8: pairs not failing a recovery
    uint64_t f = 0;
};

PairCountReport pair_counts(GateClass gate_class, bool with_memory, const Calibration &cal);
uint64_t total_f(GateClass gate_class, bool with_memory, const Calibration &cal);

struct EnumerationResult {
    uint64_t locations = 0;
    uint64_t pairs_examined = 0;
    uint64_t recovery_pairs = 0;  // a recovery of a non-boundary gate failed
    uint64_t other_pairs = 0;     // recoveries succeeded but a non-boundary gate failed
    uint64_t total() const {
        return recovery_pairs + other_pairs;
    }
};

/// Counts location pairs that make a non-boundary gate fail. Second cat
/// attempts are excluded; memory locations only when `with_memory`.
EnumerationResult enumerate_pairs(const Network &net, bool with_memory, size_t workers = 1);

/// Element-level enumeration over the pi/8 regions; returns the non-recovery pairs.
uint64_t enumerate_pi8_pairs(const Pi8Regions &r, size_t workers = 1);

struct ThresholdReport {
    uint64_t f = 0;
    double exact = 0;          // 1/f
    double rounded = 0;        // one decimal in units of 1e-6
    std::string rounded_str;   // e.g. "3.0e-6"
    std::string two_sf;        // e.g. "3.0e-06"
    std::string model = "stochastic";
};

ThresholdReport threshold(uint64_t f);

struct NaiveEstimate {
    uint64_t per_qubit = 0;   // 7*6*2+2
    uint64_t operations = 0;  // 14 * per_qubit
    double threshold = 0;
};
NaiveEstimate naive_estimate();

double concat_effective_error(double p, uint64_t f, unsigned h);
double concat_iterated(double p, uint64_t f, unsigned h);
/// Smallest h with n (f p)^(2^h) < q.
unsigned levels_needed(double n, double q, double p, uint64_t f);
double monotone_bound(double C, uint64_t f, double p, unsigned k);

struct ConcatPlan {
    double p = 0;
    uint64_t f = 0;
    unsigned h = 0;
    double n = 0;
    double q = 0;
    double log2_K = 10;
    double overhead = 1;            // K^h
    std::vector<double> closed;     // per level 0..h
    std::vector<double> iterated;
    bool feasible = false;
};
ConcatPlan concat_plan(double n, double q, double p, uint64_t f, double log2_K = 10);

nlohmann::json report_to_json(const PairCountReport &pairs, const ThresholdReport &t);

struct GoldenRow {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Compares every count and threshold the engine produces with the golden file.
std::vector<GoldenRow> golden_comparison(const Calibration &cal, const nlohmann::json &golden);
std::string golden_csv(const std::vector<GoldenRow> &rows);
std::string default_golden_path();

}  // namespace ftlab::failure

#endif
