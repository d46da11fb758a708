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

#include "ftlab/montecarlo.h"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <thread>

#include "ftlab/builders.h"

namespace ftlab::mc {

namespace {

constexpr uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

void check_mix(const std::vector<double> &mix, size_t size, const char *name) {
    if (mix.empty()) {
        return;
    }
    if (mix.size() != size) {
        throw std::invalid_argument(std::string(name) + " must have " + std::to_string(size) + " weights");
    }
    double total = 0;
    for (double w : mix) {
        if (!(w >= 0)) {
            throw std::invalid_argument(std::string(name) + " has a negative weight");
        }
        total += w;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument(std::string(name) + " does not sum to 1");
    }
}

uint8_t pick_from(Stream &rng, size_t arity, const std::vector<double> &mix) {
    size_t choices = arity == 1 ? 3 : 15;
    if (mix.empty()) {
        return (uint8_t)(1 + rng.below(choices));
    }
    double u = rng.uniform();
    double acc = 0;
    for (size_t k = 0; k < choices; k++) {
        acc += mix[k];
        if (u < acc) {
            return (uint8_t)(k + 1);
        }
    }
    return (uint8_t)choices;
}

void split_code(uint8_t code, size_t arity, uint8_t &x, uint8_t &z) {
    x = 0;
    z = 0;
    for (size_t j = 0; j < arity; j++) {
        x |= (uint8_t)(((code >> (2 * j)) & 1) << j);
        z |= (uint8_t)(((code >> (2 * j + 1)) & 1) << j);
    }
}

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

}  // namespace

uint64_t mix64(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Stream::Stream(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t s = mix64(seed + GOLDEN);
    s = mix64(s ^ (a + 1) * GOLDEN);
    s = mix64(s ^ (b + 1) * 0xD1B54A32D192ED03ull);
    s = mix64(s ^ (c + 1) * 0x8CB92BA72F3D8DD7ull);
    state_ = s;
}

uint64_t Stream::next() {
    state_ += GOLDEN;
    return mix64(state_);
}

double Stream::uniform() {
    return (double)(next() >> 11) * 0x1.0p-53;
}

uint64_t Stream::below(uint64_t n) {
    return (uint64_t)(((unsigned __int128)next() * n) >> 64);
}

void ErrorModelConfig::validate() const {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    check_mix(mix1, 3, "mix1");
    check_mix(mix2, 15, "mix2");
}

Assignment sample_instance(const Network &net, const ErrorModelConfig &config, uint64_t trial) {
    config.validate();
    Assignment out;
    for (uint32_t i = 0; i < net.locations.size(); i++) {
        Stream rng(config.seed, trial, i, 0);
        if (!(rng.uniform() < config.p)) {
            continue;
        }
        size_t arity = net.locations[i].qubits.size();
        uint8_t code = pick_from(rng, arity, arity == 1 ? config.mix1 : config.mix2);
        uint8_t x, z;
        split_code(code, arity, x, z);
        out[i] = PauliOperator::from_masks(arity, x, z);
    }
    return out;
}

StochasticSource::StochasticSource(const ErrorModelConfig &config, uint64_t batch)
    : config_(config), batch_(batch), log_q_(std::log1p(-config.p)) {
}

uint8_t StochasticSource::pick(Stream &rng, size_t arity) const {
    return pick_from(rng, arity, arity == 1 ? config_.mix1 : config_.mix2);
}

void StochasticSource::inject(const Network &net, uint32_t location, uint32_t pass, const frame::Plane &exec,
                              frame::FrameState &state) {
    if (config_.p <= 0) {
        return;
    }
    Stream rng(config_.seed, batch_, location, pass);
    size_t arity = net.locations[location].qubits.size();
    // Geometric gaps between failing lanes.
    size_t lane = 0;
    while (true) {
        if (config_.p < 1) {
            double u = 1 - rng.uniform();
            double gap = std::floor(std::log(u) / log_q_);
            if (gap >= (double)(frame::LANES - lane)) {
                return;
            }
            lane += (size_t)gap;
        }
        if (lane >= frame::LANES) {
            return;
        }
        uint8_t code = pick(rng, arity);
        if (frame::lane_bit(exec, lane)) {
            uint8_t x, z;
            split_code(code, arity, x, z);
            frame::apply_error(net, location, lane, x, z, state);
        }
        lane++;
    }
}

void AssignmentSource::add(size_t lane, uint32_t location, uint32_t pass, uint8_t x, uint8_t z) {
    entries_[location].push_back({lane, pass, x, z});
}

void AssignmentSource::inject(const Network &net, uint32_t location, uint32_t pass, const frame::Plane &exec,
                              frame::FrameState &state) {
    auto it = entries_.find(location);
    if (it == entries_.end()) {
        return;
    }
    for (const auto &e : it->second) {
        if (e.pass == pass && frame::lane_bit(exec, e.lane)) {
            frame::apply_error(net, location, e.lane, e.x, e.z, state);
        }
    }
}

TrialResult execute_pauli_frame(const Network &net, const Assignment &assignment) {
    AssignmentSource source;
    for (const auto &[loc, op] : assignment) {
        if (loc >= net.locations.size() || op.num_qubits() != net.locations[loc].qubits.size()) {
            throw std::invalid_argument("assignment does not match location " + std::to_string(loc));
        }
        source.add(0, loc, 0, (uint8_t)op.x_mask(), (uint8_t)op.z_mask());
    }
    frame::FrameSimulator sim(net);
    auto batch = sim.run(source);
    TrialResult out;
    out.accepted = !frame::lane_bit(batch.rejected, 0);
    out.failed = frame::lane_bit(batch.failed, 0) || frame::lane_bit(batch.retry_exhausted, 0);
    for (const auto &planes : batch.logical) {
        out.logical.push_back(PauliOperator::from_masks(1, frame::lane_bit(planes[0], 0), frame::lane_bit(planes[1], 0)));
    }
    for (const auto &h : batch.recoveries) {
        out.syndromes.push_back(h.syndrome[0]);
        out.second_attempt.push_back(frame::lane_bit(h.second_attempt, 0));
    }
    out.retries = batch.retries;
    return out;
}

Network mc_network(failure::GateClass gate_class, bool with_memory) {
    if (gate_class != failure::GateClass::TwoQubit) {
        throw frame::UnsupportedNetwork("sampling supports the two_qubit gate class only");
    }
    Network net = build_gate_network(GateKind::ControlledNot);
    if (!with_memory) {
        std::erase_if(net.locations, [](const ErrorLocation &loc) {
            return loc.kind == LocationKind::Memory;
        });
    }
    return net;
}

std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials) {
    if (trials == 0) {
        return {0, 1};
    }
    const double z = 1.959963984540054;
    double n = (double)trials;
    double phat = (double)failures / n;
    double denom = 1 + z * z / n;
    double center = (phat + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
    // Exact endpoints at the extremes; rounding leaves ~1e-19 otherwise.
    double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = failures == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

Estimate estimate_on(const Network &net, failure::GateClass gate_class, double p, uint64_t trials, uint64_t seed,
                     const Options &options, const Calibration &cal) {
    if (trials == 0) {
        throw std::invalid_argument("trials must be at least 1");
    }
    ErrorModelConfig config;
    config.p = p;
    config.seed = seed;
    config.validate();
    frame::FrameSimulator sim(net, options.retry_cap);
    uint64_t batches = (trials + frame::LANES - 1) / frame::LANES;

    struct Tally {
        uint64_t failures = 0;
        uint64_t rejected = 0;
        uint64_t retries = 0;
    };
    size_t workers = std::max<size_t>(1, std::min<uint64_t>(options.workers, batches));
    std::vector<Tally> tallies(workers);
    std::atomic<uint64_t> next{0};
    auto work = [&](size_t w) {
        Tally &t = tallies[w];
        for (uint64_t b = next++; b < batches; b = next++) {
            StochasticSource source(config, b);
            auto res = sim.run(source);
            uint64_t live = std::min<uint64_t>(frame::LANES, trials - b * frame::LANES);
            for (size_t k = 0; k < frame::WORDS; k++) {
                uint64_t valid = live >= (k + 1) * 64 ? ~uint64_t{0}
                                 : live > k * 64      ? (uint64_t{1} << (live - k * 64)) - 1
                                                      : 0;
                uint64_t rej = res.rejected[k] & valid;
                uint64_t bad = (res.failed[k] | res.retry_exhausted[k]) & valid & ~rej;
                t.failures += (uint64_t)std::popcount(bad);
                t.rejected += (uint64_t)std::popcount(rej);
            }
            t.retries += res.retries;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (size_t w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
        for (auto &th : threads) {
            th.join();
        }
    }
    Estimate e;
    e.gate_class = failure::gate_class_name(gate_class);
    e.p = p;
    e.seed = seed;
    for (const auto &t : tallies) {
        e.failures += t.failures;
        e.rejected += t.rejected;
        e.retries += t.retries;
    }
    e.trials = trials - e.rejected;
    e.rate = e.trials ? (double)e.failures / (double)e.trials : 0;
    std::tie(e.ci_low, e.ci_high) = wilson_interval(e.failures, e.trials);
    e.analytic_bound = (double)failure::total_f(gate_class, options.with_memory, cal) * p * p;
    return e;
}

Estimate estimate_logical_error(failure::GateClass gate_class, double p, uint64_t trials, uint64_t seed,
                                const Options &options, const Calibration &cal) {
    Network net = mc_network(gate_class, options.with_memory);
    return estimate_on(net, gate_class, p, trials, seed, options, cal);
}

SweepConfig sweep_config_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("sweep config: expected a JSON object");
    }
    static const std::set<std::string> allowed = {"p_values", "trials", "gate_class", "seed", "memory"};
    for (const auto &item : j.items()) {
        if (!allowed.count(item.key())) {
            throw std::invalid_argument("sweep config: unknown field '" + item.key() + "'");
        }
    }
    SweepConfig c;
    if (!j.contains("p_values") || !j["p_values"].is_array() || j["p_values"].empty()) {
        throw std::invalid_argument("sweep config: field 'p_values' must be a non-empty array");
    }
    for (size_t k = 0; k < j["p_values"].size(); k++) {
        const auto &v = j["p_values"][k];
        if (!v.is_number() || v.get<double>() < 0 || v.get<double>() > 1) {
            throw std::invalid_argument("sweep config: p_values[" + std::to_string(k) + "] must be a number in [0, 1]");
        }
        c.p_values.push_back(v.get<double>());
    }
    if (!j.contains("trials") || !j["trials"].is_number_integer() || j["trials"].get<int64_t>() < 1) {
        throw std::invalid_argument("sweep config: field 'trials' must be a positive integer");
    }
    c.trials = j["trials"].get<uint64_t>();
    if (j.contains("gate_class")) {
        if (!j["gate_class"].is_string()) {
            throw std::invalid_argument("sweep config: field 'gate_class' must be a string");
        }
        c.gate_class = j["gate_class"].get<std::string>();
        failure::gate_class_from_name(c.gate_class);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) {
            throw std::invalid_argument("sweep config: field 'seed' must be an integer");
        }
        c.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("memory")) {
        if (!j["memory"].is_boolean()) {
            throw std::invalid_argument("sweep config: field 'memory' must be a boolean");
        }
        c.with_memory = j["memory"].get<bool>();
    }
    return c;
}

std::vector<Estimate> run_sweep(const SweepConfig &config, const Options &options, const Calibration &cal) {
    auto cls = failure::gate_class_from_name(config.gate_class);
    Options opts = options;
    opts.with_memory = config.with_memory || options.with_memory;
    Network net = mc_network(cls, opts.with_memory);
    std::vector<Estimate> out;
    for (double p : config.p_values) {
        out.push_back(estimate_on(net, cls, p, config.trials, config.seed, opts, cal));
    }
    return out;
}

std::string sweep_csv(const std::vector<Estimate> &rows) {
    std::string out = "gate_class,p,trials,failures,rate,ci_low,ci_high,analytic_bound,seed\n";
    for (const auto &e : rows) {
        out += e.gate_class + "," + fmt("%.6g", e.p) + "," + std::to_string(e.trials) + "," +
               std::to_string(e.failures) + "," + fmt("%.9e", e.rate) + "," + fmt("%.9e", e.ci_low) + "," +
               fmt("%.9e", e.ci_high) + "," + fmt("%.9e", e.analytic_bound) + "," + std::to_string(e.seed) + "\n";
    }
    return out;
}

double loglog_slope(const std::vector<double> &p, const std::vector<double> &rate) {
    if (p.size() != rate.size() || p.size() < 2) {
        throw std::invalid_argument("slope needs at least two points");
    }
    std::vector<double> x, y;
    for (size_t k = 0; k < p.size(); k++) {
        if (!(p[k] > 0 && rate[k] > 0)) {
            throw std::invalid_argument("slope needs positive p and rate");
        }
        x.push_back(std::log(p[k]));
        y.push_back(std::log(rate[k]));
    }
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / (double)x.size();
    double my = std::accumulate(y.begin(), y.end(), 0.0) / (double)y.size();
    double sxy = 0, sxx = 0;
    for (size_t k = 0; k < x.size(); k++) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    return sxy / sxx;
}

}  // namespace ftlab::mc
