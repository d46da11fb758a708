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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ftlab/builders.h"
#include "ftlab/calibration.h"
#include "ftlab/failure.h"
#include "ftlab/frame_kernels.h"
#include "ftlab/montecarlo.h"
#include "ftlab/verify.h"

using namespace ftlab;
using nlohmann::json;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_MISMATCH = 1;
constexpr int EXIT_USAGE = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string calibration;
    std::string format = "json";
    std::string output;
    uint64_t seed = 0;
    size_t workers = 1;
    std::string kernels = "auto";
};

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

Calibration load(const Globals &g) {
    try {
        return load_calibration(g.calibration.empty() ? default_calibration_path() : g.calibration);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
}

void emit(const Globals &g, const std::string &text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write " + g.output);
    }
    out << text;
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

int cmd_verify(const Globals &g) {
    auto report = verify::run_all();
    if (g.format == "csv") {
        std::string out = "kind,name,printed,computed,verdict\n";
        for (const auto &r : report.identities) {
            PauliOperator printed = PauliOperator::from_str("+" + r.printed_image);
            printed.set_log_i(r.printed_log_i);
            out += std::string("identity,") + r.error + " through " + gate_name(r.gate) + "," + printed.str() + "," +
                   r.computed.str() + "," + verify::verdict_name(r.verdict) + "\n";
        }
        for (const auto &c : report.checks) {
            out += "check," + c.name + ",," + c.detail + "," + (c.pass ? "pass" : "fail") + "\n";
        }
        emit(g, out);
    } else {
        emit(g, dump(report.to_json()));
    }
    return report.ok() ? EXIT_OK : EXIT_MISMATCH;
}

json tally_json(const Tally &t) {
    return {{"operational", t.operational}, {"memory", t.memory}};
}

int cmd_count(const Globals &g, const std::string &network, const std::string &network_file, bool enumerate,
              bool memory) {
    Calibration cal = load(g);
    std::vector<std::pair<std::string, Network>> nets;
    if (!network_file.empty()) {
        std::ifstream in(network_file);
        if (!in) {
            throw UsageError("cannot open " + network_file);
        }
        try {
            nets.emplace_back(network_file, network_from_json(json::parse(in)));
        } catch (const std::exception &e) {
            throw UsageError(network_file + ": " + e.what());
        }
    } else if (!network.empty()) {
        try {
            nets.emplace_back(network, build_named(network));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    } else {
        for (const auto &name : builder_names()) {
            nets.emplace_back(name, build_named(name));
        }
    }
    json j;
    j["networks"] = json::array();
    std::string csv = "network,operational,memory,qubits,slices\n";
    for (const auto &[name, net] : nets) {
        auto [ops, mem] = count_locations(net);
        j["networks"].push_back({{"name", name},
                                 {"operational", ops},
                                 {"memory", mem},
                                 {"qubits", net.num_qubits()},
                                 {"slices", net.slices.size()}});
        csv += name + "," + std::to_string(ops) + "," + std::to_string(mem) + "," + std::to_string(net.num_qubits()) +
               "," + std::to_string(net.slices.size()) + "\n";
    }
    j["calibration"] = json::array();
    for (const auto &row : compare_with_builders(cal)) {
        j["calibration"].push_back(
            {{"tally", row.name}, {"calibrated", tally_json(row.calibrated)}, {"built", tally_json(row.built)}});
    }
    int status = EXIT_OK;
    if (enumerate) {
        Network ctx = build_gate_context(GateKind::ControlledNot);
        auto r = failure::enumerate_pairs(ctx, memory, g.workers);
        auto closed = failure::pair_counts(failure::GateClass::TwoQubit, memory, cal);
        bool agree = r.recovery_pairs == closed.recovery_pairs && r.other_pairs == closed.post_recovery_pairs;
        j["enumeration"] = {{"with_memory", memory},
                            {"locations", r.locations},
                            {"pairs_examined", r.pairs_examined},
                            {"recovery_pairs", r.recovery_pairs},
                            {"post_recovery_pairs", r.other_pairs},
                            {"f", r.total()},
                            {"closed_form_f", closed.f},
                            {"agree", agree}};
        csv += "enumeration_f," + std::to_string(r.total()) + ",closed_form," + std::to_string(closed.f) + "," +
               (agree ? "agree" : "differ") + "\n";
        if (!agree) {
            status = EXIT_MISMATCH;
        }
    }
    emit(g, g.format == "csv" ? csv : dump(j));
    return status;
}

int cmd_network(const Globals &g, const std::string &name) {
    try {
        emit(g, dump(network_to_json(build_named(name))));
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return EXIT_OK;
}

int cmd_threshold(const Globals &g, const std::string &gate, bool memory, bool golden, const std::string &golden_path) {
    Calibration cal = load(g);
    auto problems = calibration_mismatches(cal);
    if (!problems.empty()) {
        for (const auto &p : problems) {
            std::cerr << "calibration mismatch: " << p << "\n";
        }
        return EXIT_MISMATCH;
    }
    if (golden) {
        std::string path = golden_path.empty() ? failure::default_golden_path() : golden_path;
        std::ifstream in(path);
        if (!in) {
            throw UsageError("cannot open golden file " + path);
        }
        json gold;
        try {
            gold = json::parse(in);
        } catch (const json::parse_error &e) {
            throw UsageError(path + ": " + e.what());
        }
        auto rows = failure::golden_comparison(cal, gold);
        bool ok = true;
        json j = json::array();
        for (const auto &r : rows) {
            ok = ok && r.pass;
            j.push_back({{"name", r.name}, {"expected", r.expected}, {"actual", r.actual}, {"pass", r.pass}});
        }
        emit(g, g.format == "csv" ? failure::golden_csv(rows) : dump({{"golden", j}, {"pass", ok}}));
        return ok ? EXIT_OK : EXIT_MISMATCH;
    }
    failure::GateClass cls;
    try {
        cls = failure::gate_class_from_name(gate);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    auto pairs = failure::pair_counts(cls, memory, cal);
    auto t = failure::threshold(pairs.f);
    json j = failure::report_to_json(pairs, t);
    if (cls == failure::GateClass::TwoQubit && memory) {
        uint64_t L = cal.L(true);
        j["recovery_pairs_readings"] = {{"squared_first_term", failure::recovery_pairs(L)},
                                        {"linear_first_term", L + 4 * L * L}};
    }
    if (cls == failure::GateClass::Pi8) {
        j["regions"] = calibration_to_json(cal)[memory ? "pi8_memory" : "pi8_ops"];
    }
    if (g.format == "csv") {
        std::string csv = "gate_class,with_memory,recovery_pairs,post_recovery_pairs,f,threshold_exact,threshold_rounded,"
                          "threshold_2sf,model\n";
        csv += std::string(failure::gate_class_name(cls)) + "," + (memory ? "true" : "false") + "," +
               std::to_string(pairs.recovery_pairs) + "," + std::to_string(pairs.post_recovery_pairs) + "," +
               std::to_string(pairs.f) + "," + fmt("%.9e", t.exact) + "," + t.rounded_str + "," + t.two_sf + "," +
               t.model + "\n";
        emit(g, csv);
    } else {
        emit(g, dump(j));
    }
    return EXIT_OK;
}

int cmd_concat(const Globals &g, double n, double q, double p, uint64_t f, const std::string &gate, bool memory,
               double log2k) {
    if (f == 0) {
        f = failure::total_f(failure::gate_class_from_name(gate), memory, load(g));
    }
    json j = {{"n", n}, {"q", q}, {"p", p}, {"f", f}, {"log2_K", log2k}};
    std::string csv = "level,closed_form,iterated,overhead\n";
    int status = EXIT_OK;
    try {
        auto plan = failure::concat_plan(n, q, p, f, log2k);
        j["feasible"] = true;
        j["h"] = plan.h;
        j["overhead"] = plan.overhead;
        j["levels"] = json::array();
        for (unsigned h = 0; h <= plan.h; h++) {
            double overhead = std::pow(2.0, log2k * h);
            j["levels"].push_back({{"level", h},
                                   {"closed_form", plan.closed[h]},
                                   {"iterated", plan.iterated[h]},
                                   {"overhead", overhead}});
            csv += std::to_string(h) + "," + fmt("%.12e", plan.closed[h]) + "," + fmt("%.12e", plan.iterated[h]) +
                   "," + fmt("%.6e", overhead) + "\n";
        }
    } catch (const failure::InfeasibleError &e) {
        j["feasible"] = false;
        j["error"] = e.what();
        csv += "infeasible," + std::string(e.what()) + ",,\n";
        status = EXIT_MISMATCH;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    auto naive = failure::naive_estimate();
    j["naive_estimate"] = {{"operations", naive.operations}, {"threshold", naive.threshold}};
    emit(g, g.format == "csv" ? csv : dump(j));
    return status;
}

int cmd_mc(const Globals &g, const std::string &config_path, bool seed_given, bool memory) {
    std::ifstream in(config_path);
    if (!in) {
        throw UsageError("cannot open sweep config " + config_path);
    }
    mc::SweepConfig config;
    try {
        config = mc::sweep_config_from_json(json::parse(in));
    } catch (const json::parse_error &e) {
        throw UsageError(config_path + ": " + e.what());
    } catch (const std::invalid_argument &e) {
        throw UsageError(config_path + ": " + e.what());
    }
    if (seed_given) {
        config.seed = g.seed;
    }
    mc::Options opts;
    opts.with_memory = memory;
    opts.workers = g.workers;
    std::vector<mc::Estimate> rows;
    try {
        rows = mc::run_sweep(config, opts, load(g));
    } catch (const frame::UnsupportedNetwork &e) {
        throw UsageError(e.what());
    }
    if (g.format == "json") {
        json j = json::array();
        for (const auto &e : rows) {
            j.push_back({{"gate_class", e.gate_class},
                         {"p", e.p},
                         {"trials", e.trials},
                         {"failures", e.failures},
                         {"rate", e.rate},
                         {"ci_low", e.ci_low},
                         {"ci_high", e.ci_high},
                         {"analytic_bound", e.analytic_bound},
                         {"seed", e.seed},
                         {"retries", e.retries}});
        }
        emit(g, dump(j));
    } else {
        emit(g, mc::sweep_csv(rows));
    }
    return EXIT_OK;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ftlab: fault-tolerance laboratory for the concatenated 7-qubit code"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--calibration", g.calibration, "Calibration JSON (default: shipped file)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", g.output, "Write to a file instead of stdout");
    app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1, 1024));
    app.add_option("--kernels", g.kernels, "Bit-plane kernels")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    auto *seed_opt = app.add_option("--seed", g.seed, "Random seed");
    app.fallthrough();

    auto *verify = app.add_subcommand("verify", "Run every oracle-backed check");

    auto *count = app.add_subcommand("count", "Location tallies of the builders");
    std::string network, network_file;
    bool enumerate = false, memory = false;
    count->add_option("--network", network, "Builder name");
    count->add_option("--network-file", network_file, "Network JSON to count");
    count->add_flag("--enumerate", enumerate, "Enumerate failing location pairs of the two-qubit gate context");
    count->add_flag("--memory", memory, "Include memory locations in the enumeration");

    auto *net_cmd = app.add_subcommand("network", "Emit a built network as JSON");
    net_cmd->add_option("name", network, "Builder name")->required();

    auto *threshold = app.add_subcommand("threshold", "Pair counts and threshold");
    std::string gate = "two_qubit", golden_path;
    bool golden = false;
    threshold->add_option("--gate", gate, "two_qubit or pi8");
    threshold->add_flag("--memory", memory, "Count memory locations");
    threshold->add_flag("--golden", golden, "Compare every published value with the golden file");
    threshold->add_option("--golden-file", golden_path, "Golden values JSON");

    auto *concat = app.add_subcommand("concat", "Concatenation plan");
    double n = 1e9, q = 1e-3, p = 1e-7, log2k = 10;
    uint64_t f = 0;
    concat->add_option("--n", n, "Computational gates");
    concat->add_option("--q", q, "Target failure probability");
    concat->add_option("--p", p, "Physical error probability")->required();
    concat->add_option("--f", f, "Pair count (default: from --gate and --memory)");
    concat->add_option("--gate", gate, "two_qubit or pi8");
    concat->add_flag("--memory", memory, "Use the memory pair count");
    concat->add_option("--log2k", log2k, "log2 of the per-level resource factor");

    auto *mc_cmd = app.add_subcommand("mc", "Monte Carlo sweep");
    std::string config_path;
    mc_cmd->add_option("--config", config_path, "Sweep JSON {p_values, trials, gate_class, seed}")->required();
    mc_cmd->add_flag("--memory", memory, "Sample memory locations too");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }
    try {
        simd::select_kernels(g.kernels);
        if (verify->parsed()) {
            return cmd_verify(g);
        }
        if (count->parsed()) {
            return cmd_count(g, network, network_file, enumerate, memory);
        }
        if (net_cmd->parsed()) {
            return cmd_network(g, network);
        }
        if (threshold->parsed()) {
            return cmd_threshold(g, gate, memory, golden, golden_path);
        }
        if (concat->parsed()) {
            return cmd_concat(g, n, q, p, f, gate, memory, log2k);
        }
        if (mc_cmd->parsed()) {
            return cmd_mc(g, config_path, seed_opt->count() > 0, memory);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
    return EXIT_USAGE;
}
