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

#include "ftlab/failure.h"

#include "ftlab/builders.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>

#ifndef FTLAB_DATA_DIR
#define FTLAB_DATA_DIR "data"
#endif

namespace ftlab::failure {

namespace {

bool in_recovery_tag(TagKind kind) {
    switch (kind) {
        case TagKind::CatPrep:
        case TagKind::SyndromeBitExtraction:
        case TagKind::EncodedHadamardLayer:
        case TagKind::CorrectionStep:
        case TagKind::RecoveryAttempt:
            return true;
        default:
            return false;
    }
}

// Definition evaluation over precomputed regions; `failed` is tiny.
struct Evaluator {
    const Network &net;
    const std::vector<Region> &regions;

    // Bit e-1 set when extraction e of `recovery` holds a counted failure.
    unsigned failed_extractions(Failed failed, int recovery) const {
        unsigned mask = 0;
        for (auto i : failed) {
            const auto &r = regions[i];
            if (r.recovery == recovery && r.extraction > 0 && !r.second_cat) {
                mask |= 1u << (r.extraction - 1);
            }
        }
        return mask;
    }

    bool recovery_failed(Failed failed, int recovery) const {
        unsigned f = failed_extractions(failed, recovery);
        bool first = f & 3;
        bool second = f & 12;
        return (f & 3) == 3 || (first && second);
    }

    bool gate_failed(Failed failed, int gate, std::span<const Status> statuses) const {
        const auto &g = net.gates.at(gate);
        for (int r : g.recoveries) {
            if (recovery_failed(failed, r)) {
                return true;
            }
        }
        if (g.boundary) {
            return false;
        }
        size_t pre = 0;
        for (auto i : failed) {
            const auto &r = regions[i];
            if (r.operation == gate) {
                pre++;
                continue;
            }
            if (r.recovery < 0 || r.second_cat) {
                continue;
            }
            if (std::find(g.recoveries.begin(), g.recoveries.end(), r.recovery) == g.recoveries.end()) {
                continue;
            }
            if (r.correction || r.extraction == 2) {
                pre++;
            }
        }
        if (pre >= 2) {
            return true;
        }
        for (size_t k = 0; k < g.blocks.size(); k++) {
            int next = k < g.following.size() ? g.following[k] : -1;
            if (next < 0) {
                continue;
            }
            if (statuses[next] == Status::Unknown) {
                throw OrderingError("gate " + std::to_string(gate) + " evaluated before its following gate " +
                                    std::to_string(next));
            }
            if (statuses[next] == Status::Failed) {
                continue;
            }
            size_t post = 0;
            for (auto i : failed) {
                const auto &r = regions[i];
                if (r.recovery < 0 || r.second_cat || (r.extraction != 1 && r.extraction != 2)) {
                    continue;
                }
                const auto &rec = net.recoveries[r.recovery];
                if (rec.gate == next && rec.block == g.blocks[k]) {
                    post++;
                }
            }
            if (pre + post >= 2) {
                return true;
            }
        }
        return false;
    }

    void evaluate(Failed failed, std::span<Status> statuses, const std::vector<int> &order) const {
        std::fill(statuses.begin(), statuses.end(), Status::Unknown);
        for (int g : order) {
            statuses[g] = gate_failed(failed, g, statuses) ? Status::Failed : Status::Ok;
        }
    }
};

// Following gates before the gates that feed them.
std::vector<int> backward_order(const Network &net) {
    std::vector<int> order;
    std::vector<int8_t> state(net.gates.size(), 0);
    std::function<void(int)> visit = [&](int g) {
        if (state[g] == 2) {
            return;
        }
        if (state[g] == 1) {
            throw std::invalid_argument("cycle in the gate graph");
        }
        state[g] = 1;
        for (int next : net.gates[g].following) {
            if (next >= 0) {
                visit(next);
            }
        }
        state[g] = 2;
        order.push_back(g);
    };
    for (size_t g = 0; g < net.gates.size(); g++) {
        visit((int)g);
    }
    return order;
}

template <typename Fn>
void parallel_for(size_t n, size_t workers, Fn fn) {
    workers = std::max<size_t>(1, std::min(workers, n));
    if (workers == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; w++) {
        threads.emplace_back([&, w] {
            fn(w, n * w / workers, n * (w + 1) / workers);
        });
    }
    for (auto &t : threads) {
        t.join();
    }
}

std::string fmt_double(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

}  // namespace

Region region_of(const ErrorLocation &loc) {
    Region r;
    const auto &t = loc.tag;
    if (in_recovery_tag(t.kind) && t.recovery >= 0) {
        r.recovery = t.recovery;
        r.extraction = t.kind == TagKind::CorrectionStep ? 0 : t.extraction;
        r.correction = t.kind == TagKind::CorrectionStep;
    }
    r.second_cat = t.kind == TagKind::CatPrep && t.cat_attempt == 2;
    if (t.kind == TagKind::EncodedOperation) {
        r.operation = t.gate;
    }
    return r;
}

std::vector<Region> regions_of(const Network &net) {
    std::vector<Region> out;
    out.reserve(net.locations.size());
    for (const auto &loc : net.locations) {
        out.push_back(region_of(loc));
    }
    return out;
}

bool syndrome_extraction_failed(const Network &net, Failed failed, int recovery, int extraction) {
    auto regions = regions_of(net);
    Evaluator ev{net, regions};
    return (ev.failed_extractions(failed, recovery) >> (extraction - 1)) & 1;
}

bool recovery_failed(const Network &net, Failed failed, int recovery) {
    auto regions = regions_of(net);
    return Evaluator{net, regions}.recovery_failed(failed, recovery);
}

bool encoded_gate_failed(const Network &net, Failed failed, int gate, std::span<const Status> statuses) {
    auto regions = regions_of(net);
    return Evaluator{net, regions}.gate_failed(failed, gate, statuses);
}

std::vector<Status> evaluate_gates(const Network &net, Failed failed) {
    auto regions = regions_of(net);
    std::vector<Status> statuses(net.gates.size(), Status::Unknown);
    Evaluator{net, regions}.evaluate(failed, statuses, backward_order(net));
    return statuses;
}

uint64_t choose2(uint64_t n) {
    return n < 2 ? 0 : n * (n - 1) / 2;
}

uint64_t recovery_pairs(uint64_t L) {
    return L * L + (2 * L) * (2 * L);
}

uint64_t count_recovery_pairs(const Calibration &cal, bool with_memory, bool prep) {
    return recovery_pairs(prep ? cal.L_prep(with_memory) : cal.L(with_memory));
}

uint64_t count_post_recovery_pairs(const Calibration &cal, bool with_memory) {
    uint64_t L = cal.L(with_memory);
    uint64_t fixed = 2 * cal.correction_step.total(with_memory) + cal.encoded_operation.total(with_memory);
    return choose2(6 * L + fixed) - 6 * L * L;
}

uint64_t pi8_other_pairs(const Pi8Regions &r) {
    return choose2(r.m1 + r.L) + choose2(r.m2 + 3 * r.L) - r.L * r.L + (r.k1 + r.m1) * (r.k2 + r.m2);
}

const char *gate_class_name(GateClass c) {
    return c == GateClass::TwoQubit ? "two_qubit" : "pi8";
}

GateClass gate_class_from_name(const std::string &name) {
    if (name == "two_qubit") {
        return GateClass::TwoQubit;
    }
    if (name == "pi8") {
        return GateClass::Pi8;
    }
    throw std::invalid_argument("unknown gate class: " + name);
}

PairCountReport pair_counts(GateClass gate_class, bool with_memory, const Calibration &cal) {
    PairCountReport r;
    r.gate_class = gate_class;
    r.with_memory = with_memory;
    if (gate_class == GateClass::TwoQubit) {
        r.recovery_pairs = 2 * count_recovery_pairs(cal, with_memory, false);
        r.post_recovery_pairs = count_post_recovery_pairs(cal, with_memory);
    } else {
        r.recovery_pairs = 2 * recovery_pairs(cal.pi8(with_memory).L);
        r.post_recovery_pairs = pi8_other_pairs(cal.pi8(with_memory));
    }
    r.f = r.recovery_pairs + r.post_recovery_pairs;
    return r;
}

uint64_t total_f(GateClass gate_class, bool with_memory, const Calibration &cal) {
    return pair_counts(gate_class, with_memory, cal).f;
}

EnumerationResult enumerate_pairs(const Network &net, bool with_memory, size_t workers) {
    auto all_regions = regions_of(net);
    std::vector<uint32_t> universe;
    for (size_t i = 0; i < net.locations.size(); i++) {
        const auto &loc = net.locations[i];
        if (!counted_location(loc)) {
            continue;
        }
        if (loc.kind == LocationKind::Memory && !with_memory) {
            continue;
        }
        universe.push_back((uint32_t)i);
    }
    auto order = backward_order(net);
    std::vector<int> primary;
    for (size_t g = 0; g < net.gates.size(); g++) {
        if (!net.gates[g].boundary) {
            primary.push_back((int)g);
        }
    }
    size_t n = universe.size();
    std::vector<EnumerationResult> partial(std::max<size_t>(1, workers));
    parallel_for(n, workers, [&](size_t w, size_t begin, size_t end) {
        Evaluator ev{net, all_regions};
        std::vector<Status> statuses(net.gates.size());
        EnumerationResult &acc = partial[w];
        for (size_t a = begin; a < end; a++) {
            for (size_t b = a + 1; b < n; b++) {
                uint32_t pair[2] = {universe[a], universe[b]};
                acc.pairs_examined++;
                ev.evaluate(pair, statuses, order);
                bool gate_fail = false;
                bool rec_fail = false;
                for (int g : primary) {
                    if (statuses[g] != Status::Failed) {
                        continue;
                    }
                    gate_fail = true;
                    for (int r : net.gates[g].recoveries) {
                        rec_fail |= ev.recovery_failed(pair, r);
                    }
                }
                if (rec_fail) {
                    acc.recovery_pairs++;
                } else if (gate_fail) {
                    acc.other_pairs++;
                }
            }
        }
    });
    EnumerationResult total;
    total.locations = n;
    for (const auto &p : partial) {
        total.pairs_examined += p.pairs_examined;
        total.recovery_pairs += p.recovery_pairs;
        total.other_pairs += p.other_pairs;
    }
    return total;
}

uint64_t enumerate_pi8_pairs(const Pi8Regions &r, size_t workers) {
    enum Kind : uint8_t { Cat1, Cat2, Ch1, Ch2, Mid, Fin, Next1, Next2 };
    std::vector<uint8_t> items;
    auto add = [&](Kind k, uint64_t count) {
        items.insert(items.end(), count, (uint8_t)k);
    };
    add(Cat1, r.k1);
    add(Cat2, r.k2);
    add(Ch1, r.m1);
    add(Ch2, r.m2);
    add(Mid, r.L);
    add(Fin, r.L);
    add(Next1, r.L);
    add(Next2, r.L);
    auto phase1 = [](uint8_t k) {
        return k == Ch1 || k == Mid;
    };
    auto phase2 = [](uint8_t k) {
        return k == Ch2 || k == Fin || k == Next1 || k == Next2;
    };
    auto round1 = [](uint8_t k) {
        return k == Cat1 || k == Ch1;
    };
    auto round2 = [](uint8_t k) {
        return k == Cat2 || k == Ch2;
    };
    auto fails = [&](uint8_t a, uint8_t b) {
        if (phase1(a) && phase1(b)) {
            return true;
        }
        if (phase2(a) && phase2(b)) {
            bool split = (a == Next1 && b == Next2) || (a == Next2 && b == Next1);
            return !split;
        }
        return (round1(a) && round2(b)) || (round2(a) && round1(b));
    };
    size_t n = items.size();
    std::vector<uint64_t> partial(std::max<size_t>(1, workers), 0);
    parallel_for(n, workers, [&](size_t w, size_t begin, size_t end) {
        uint64_t count = 0;
        for (size_t a = begin; a < end; a++) {
            for (size_t b = a + 1; b < n; b++) {
                count += fails(items[a], items[b]);
            }
        }
        partial[w] = count;
    });
    uint64_t total = 0;
    for (auto c : partial) {
        total += c;
    }
    return total;
}

ThresholdReport threshold(uint64_t f) {
    if (f == 0) {
        throw std::domain_error("threshold undefined for f = 0");
    }
    ThresholdReport t;
    t.f = f;
    t.exact = 1.0 / (double)f;
    // Integer rounding of 1e7/f to the nearest tenth of a unit of 1e-6.
    uint64_t tenths = (20000000 + f) / (2 * f);
    t.rounded = (double)tenths / 1e7;
    t.rounded_str = std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "e-6";
    t.two_sf = fmt_double("%.1e", t.exact);
    return t;
}

NaiveEstimate naive_estimate() {
    NaiveEstimate e;
    e.per_qubit = 7 * 6 * 2 + 2;
    e.operations = 14 * e.per_qubit;
    e.threshold = 1e-6;
    return e;
}

double concat_effective_error(double p, uint64_t f, unsigned h) {
    // f^(2^h - 1) p^(2^h) written as (f p)^(2^h) / f; the factored form overflows for large h.
    // Long double keeps the intermediate power finite near the top of the double range.
    long double levels = std::ldexp(1.0L, (int)h);
    return (double)(std::pow((long double)f * p, levels) / (long double)f);
}

double concat_iterated(double p, uint64_t f, unsigned h) {
    for (unsigned k = 0; k < h; k++) {
        p = (double)f * p * p;
    }
    return p;
}

unsigned levels_needed(double n, double q, double p, uint64_t f) {
    if (!(q > 0)) {
        throw std::invalid_argument("target failure q must be positive");
    }
    double fp = (double)f * p;
    if (fp >= 1) {
        throw InfeasibleError("f*p >= 1: concatenation does not reduce the error");
    }
    for (unsigned h = 0; h < 64; h++) {
        if (n * std::pow(fp, std::ldexp(1.0, (int)h)) < q) {
            return h;
        }
    }
    throw InfeasibleError("no level count below 64 reaches the target");
}

double monotone_bound(double C, uint64_t f, double p, unsigned k) {
    if (C < 1) {
        throw std::invalid_argument("monotone constant must be at least 1");
    }
    return C * std::pow((double)f * p * p, (double)k);
}

ConcatPlan concat_plan(double n, double q, double p, uint64_t f, double log2_K) {
    ConcatPlan plan;
    plan.n = n;
    plan.q = q;
    plan.p = p;
    plan.f = f;
    plan.log2_K = log2_K;
    plan.h = levels_needed(n, q, p, f);
    plan.feasible = true;
    plan.overhead = std::pow(2.0, log2_K * plan.h);
    for (unsigned h = 0; h <= plan.h; h++) {
        plan.closed.push_back(concat_effective_error(p, f, h));
        plan.iterated.push_back(concat_iterated(p, f, h));
    }
    return plan;
}

nlohmann::json report_to_json(const PairCountReport &pairs, const ThresholdReport &t) {
    nlohmann::json j;
    j["gate_class"] = gate_class_name(pairs.gate_class);
    j["with_memory"] = pairs.with_memory;
    j["components"] = {{"recovery_pairs", pairs.recovery_pairs}, {"post_recovery_pairs", pairs.post_recovery_pairs}};
    j["f"] = pairs.f;
    j["threshold_exact"] = t.exact;
    j["threshold_rational"] = "1/" + std::to_string(t.f);
    j["threshold_rounded"] = t.rounded_str;
    j["threshold_2sf"] = t.two_sf;
    j["model"] = t.model;
    return j;
}

std::vector<GoldenRow> golden_comparison(const Calibration &cal, const nlohmann::json &golden) {
    std::vector<GoldenRow> rows;
    const auto &counts = golden.at("counts");
    auto check = [&](const std::string &name, uint64_t actual) {
        uint64_t want = counts.at(name).get<uint64_t>();
        rows.push_back({name, std::to_string(want), std::to_string(actual), want == actual});
    };
    auto bit = count_locations(build_syndrome_bit_extraction(1));
    auto ext = count_locations(build_syndrome_extraction());
    check("bit_extraction_operational", bit.first);
    check("bit_extraction_memory", bit.second);
    check("extraction_operational", ext.first);
    check("extraction_memory", ext.second);
    check("recovery_pairs_ops", count_recovery_pairs(cal, false, false));
    check("recovery_pairs_memory", count_recovery_pairs(cal, true, false));
    check("prep_recovery_pairs_ops", count_recovery_pairs(cal, false, true));
    check("prep_recovery_pairs_memory", count_recovery_pairs(cal, true, true));
    check("post_recovery_pairs_ops", count_post_recovery_pairs(cal, false));
    check("post_recovery_pairs_memory", count_post_recovery_pairs(cal, true));
    check("two_qubit_f_ops", total_f(GateClass::TwoQubit, false, cal));
    check("two_qubit_f_memory", total_f(GateClass::TwoQubit, true, cal));
    check("pi8_recovery_pairs_ops", pair_counts(GateClass::Pi8, false, cal).recovery_pairs);
    check("pi8_recovery_pairs_memory", pair_counts(GateClass::Pi8, true, cal).recovery_pairs);
    check("pi8_other_pairs_ops", pair_counts(GateClass::Pi8, false, cal).post_recovery_pairs);
    check("pi8_other_pairs_memory", pair_counts(GateClass::Pi8, true, cal).post_recovery_pairs);

    const auto &th = golden.at("thresholds");
    auto check_threshold = [&](const std::string &name, GateClass c, bool mem) {
        double want = th.at(name).get<double>();
        auto t = threshold(total_f(c, mem, cal));
        uint64_t want_tenths = (uint64_t)std::llround(want * 1e7);
        uint64_t got_tenths = (uint64_t)std::llround(t.rounded * 1e7);
        rows.push_back({"threshold_" + name, fmt_double("%.1e", want), t.rounded_str + " (" + t.two_sf + ")",
                        want_tenths == got_tenths});
    };
    check_threshold("two_qubit_ops", GateClass::TwoQubit, false);
    check_threshold("two_qubit_memory", GateClass::TwoQubit, true);
    check_threshold("pi8_ops", GateClass::Pi8, false);
    check_threshold("pi8_memory", GateClass::Pi8, true);

    if (golden.contains("naive")) {
        auto n = naive_estimate();
        uint64_t want = golden["naive"].at("operations").get<uint64_t>();
        rows.push_back({"naive_operations", std::to_string(want), std::to_string(n.operations), want == n.operations});
    }
    return rows;
}

std::string golden_csv(const std::vector<GoldenRow> &rows) {
    std::string out = "name,expected,actual,pass\n";
    for (const auto &r : rows) {
        out += r.name + "," + r.expected + "," + r.actual + "," + (r.pass ? "pass" : "fail") + "\n";
    }
    return out;
}

std::string default_golden_path() {
    return std::string(FTLAB_DATA_DIR) + "/golden.json";
}

}  // namespace ftlab::failure
