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

#include "ftlab/calibration.h"

#include <fstream>
#include <set>
#include <stdexcept>

#include "ftlab/builders.h"

#ifndef FTLAB_DATA_DIR
#define FTLAB_DATA_DIR "data"
#endif

namespace ftlab {

namespace {

using nlohmann::json;

void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) {
        throw std::invalid_argument(where + ": expected an object");
    }
    for (const auto &item : j.items()) {
        if (!allowed.count(item.key())) {
            throw std::invalid_argument(where + ": unknown field '" + item.key() + "'");
        }
    }
}

uint64_t get_count(const json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw std::invalid_argument(where + ": missing field '" + key + "'");
    }
    const auto &v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
        throw std::invalid_argument(where + "." + key + ": expected a non-negative integer");
    }
    return v.get<uint64_t>();
}

Tally tally_from(const json &j, const std::string &where) {
    reject_unknown(j, {"operational", "memory"}, where);
    return {get_count(j, "operational", where), get_count(j, "memory", where)};
}

json tally_to(const Tally &t) {
    return {{"operational", t.operational}, {"memory", t.memory}};
}

Pi8Regions regions_from(const json &j, const std::string &where) {
    reject_unknown(j, {"L", "k1", "k2", "m1", "m2", "status"}, where);
    Pi8Regions r;
    r.L = get_count(j, "L", where);
    r.k1 = get_count(j, "k1", where);
    r.k2 = get_count(j, "k2", where);
    r.m1 = get_count(j, "m1", where);
    r.m2 = get_count(j, "m2", where);
    r.status = j.value("status", "");
    return r;
}

json regions_to(const Pi8Regions &r) {
    return {{"L", r.L}, {"k1", r.k1}, {"k2", r.k2}, {"m1", r.m1}, {"m2", r.m2}, {"status", r.status}};
}

Tally count_of(const Network &net) {
    auto [ops, mem] = count_locations(net);
    return {ops, mem};
}

}  // namespace

Calibration default_calibration() {
    Calibration c;
    c.schedule = "pipelined: data qubits carry no memory locations; ancillas idle between preparation and measurement";
    return c;
}

Calibration calibration_from_json(const json &j) {
    reject_unknown(j,
                   {"version", "schedule", "bit_extraction", "hadamard_layer", "extraction", "prep_bit_count",
                    "prep_extraction", "correction_step", "encoded_operation", "pi8_ops", "pi8_memory"},
                   "calibration");
    Calibration c = default_calibration();
    if (j.contains("version")) {
        c.version = j.at("version").get<std::string>();
    }
    if (j.contains("schedule")) {
        c.schedule = j.at("schedule").get<std::string>();
    }
    auto tally = [&](const char *key, Tally &dst) {
        if (j.contains(key)) {
            dst = tally_from(j.at(key), key);
        }
    };
    tally("bit_extraction", c.bit_extraction);
    tally("hadamard_layer", c.hadamard_layer);
    tally("extraction", c.extraction);
    tally("prep_bit_count", c.prep_bit_count);
    tally("prep_extraction", c.prep_extraction);
    tally("correction_step", c.correction_step);
    tally("encoded_operation", c.encoded_operation);
    if (j.contains("pi8_ops")) {
        c.pi8_ops = regions_from(j.at("pi8_ops"), "pi8_ops");
    }
    if (j.contains("pi8_memory")) {
        c.pi8_memory = regions_from(j.at("pi8_memory"), "pi8_memory");
    }
    return c;
}

json calibration_to_json(const Calibration &c) {
    json j;
    j["version"] = c.version;
    j["schedule"] = c.schedule;
    j["bit_extraction"] = tally_to(c.bit_extraction);
    j["hadamard_layer"] = tally_to(c.hadamard_layer);
    j["extraction"] = tally_to(c.extraction);
    j["prep_bit_count"] = tally_to(c.prep_bit_count);
    j["prep_extraction"] = tally_to(c.prep_extraction);
    j["correction_step"] = tally_to(c.correction_step);
    j["encoded_operation"] = tally_to(c.encoded_operation);
    j["pi8_ops"] = regions_to(c.pi8_ops);
    j["pi8_memory"] = regions_to(c.pi8_memory);
    return j;
}

Calibration load_calibration(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open calibration file: " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("calibration file " + path + ": " + e.what());
    }
    return calibration_from_json(j);
}

std::string default_calibration_path() {
    return std::string(FTLAB_DATA_DIR) + "/calibration.json";
}

std::vector<std::string> calibration_mismatches(const Calibration &c) {
    std::vector<std::string> out;
    auto expect = [&](const std::string &name, const Tally &got, const Tally &want) {
        if (got != want) {
            out.push_back(name + " is (" + std::to_string(got.operational) + ", " + std::to_string(got.memory) +
                          "), the per-bit tallies give (" + std::to_string(want.operational) + ", " +
                          std::to_string(want.memory) + ")");
        }
    };
    expect("extraction", c.extraction,
           {6 * c.bit_extraction.operational + c.hadamard_layer.operational,
            6 * c.bit_extraction.memory + c.hadamard_layer.memory});
    uint64_t bits = c.prep_bit_count.operational;
    expect("prep_extraction", c.prep_extraction,
           {bits * c.bit_extraction.operational + c.hadamard_layer.operational,
            bits * c.bit_extraction.memory + c.hadamard_layer.memory});
    for (bool mem : {false, true}) {
        const auto &r = c.pi8(mem);
        if (r.L != c.L(mem)) {
            out.push_back(std::string(mem ? "pi8_memory" : "pi8_ops") + ".L is " + std::to_string(r.L) +
                          ", the extraction tally gives " + std::to_string(c.L(mem)));
        }
    }
    return out;
}

std::vector<BuiltTally> compare_with_builders(const Calibration &c) {
    std::vector<BuiltTally> out;
    out.push_back({"bit_extraction", c.bit_extraction, count_of(build_syndrome_bit_extraction(1))});
    out.push_back({"extraction", c.extraction, count_of(build_syndrome_extraction())});
    // A preparation recovery holds four extractions, a correction step and the preparations.
    Tally zero = count_of(build_encoded_zero_prep());
    Tally per{(zero.operational - 7 - c.correction_step.operational) / 4,
              (zero.memory - c.correction_step.memory) / 4};
    out.push_back({"prep_extraction", c.prep_extraction, per});
    out.push_back({"encoded_operation", c.encoded_operation, count_of(build_transversal_gate(GateKind::ControlledNot))});
    return out;
}

}  // namespace ftlab
