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

#ifndef FTLAB_CALIBRATION_H
#define FTLAB_CALIBRATION_H

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ftlab {

struct Tally {
    uint64_t operational = 0;
    uint64_t memory = 0;
    uint64_t total(bool with_memory) const {
        return operational + (with_memory ? memory : 0);
    }
    bool operator==(const Tally &) const = default;
};

/// Region sizes of the pi/8 preparation that do not belong to a recovery.
/// L: second extraction of a first attempt; k1, k2: first cat attempts of the
/// two measurement rounds; m1, m2: controlled-H rounds including the inputs.
struct Pi8Regions {
    uint64_t L = 0;
    uint64_t k1 = 0;
    uint64_t k2 = 0;
    uint64_t m1 = 0;
    uint64_t m2 = 0;
    std::string status;
    bool operator==(const Pi8Regions &) const = default;
};

struct Calibration {
    std::string version = "1";
    std::string schedule;
    Tally bit_extraction{19, 10};
    Tally hadamard_layer{7, 0};
    Tally extraction{121, 60};
    Tally prep_bit_count{7, 0};  // operational = syndrome bits measured by a preparation recovery
    Tally prep_extraction{140, 70};
    Tally correction_step{7, 0};
    Tally encoded_operation{7, 0};
    Pi8Regions pi8_ops{121, 114, 120, 212, 212, "fitted"};
    Pi8Regions pi8_memory{181, 195, 195, 364, 364, "fitted"};
    bool operator==(const Calibration &) const = default;

    uint64_t L(bool with_memory) const {
        return extraction.total(with_memory);
    }
    uint64_t L_prep(bool with_memory) const {
        return prep_extraction.total(with_memory);
    }
    const Pi8Regions &pi8(bool with_memory) const {
        return with_memory ? pi8_memory : pi8_ops;
    }
};

Calibration default_calibration();
/// Unknown keys are rejected with std::invalid_argument.
Calibration calibration_from_json(const nlohmann::json &j);
nlohmann::json calibration_to_json(const Calibration &c);
Calibration load_calibration(const std::string &path);
/// Path of the shipped calibration file.
std::string default_calibration_path();

/// Internal consistency of the tallies; one message per diverging tally.
std::vector<std::string> calibration_mismatches(const Calibration &c);

struct BuiltTally {
    std::string name;
    Tally calibrated;
    Tally built;
};

/// Calibrated tallies next to the counts of the shipped builders.
std::vector<BuiltTally> compare_with_builders(const Calibration &c);

}  // namespace ftlab

#endif
