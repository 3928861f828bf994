// Copyright 2026 The qcomm Authors
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

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>

#include "qcomm/errors.h"
#include "qcomm/harness.h"
#include "qcomm/shadows.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void emit(const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    out << text;
    if (!out) {
        throw qcomm::FormatError("could not write " + path);
    }
}

int cmd_verify(std::size_t max_qubits, const std::string &out) {
    qcomm::VerifyOptions opts;
    opts.max_qubits = max_qubits;
    auto rep = qcomm::verify_suite(opts);
    for (const auto &c : rep.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
        if (!c.detail.empty()) {
            std::cerr << ": " << c.detail;
        }
        std::cerr << "\n";
    }
    if (!out.empty()) {
        emit(qcomm::to_json(rep).dump(2) + "\n", out);
    }
    return rep.passed() ? kExitOk : kExitFail;
}

struct RunArgs {
    std::string protocol = "pauli-state";
    std::size_t qubits = 12;
    double epsilon = 0.3;
    double c = qcomm::kDefaultMajorityBias;
    double d = qcomm::kDefaultAdditiveSlack;
    std::string oracle = "exact";
    double accuracy = -1;
    bool at_epsilon = false;
    double failure_prob = 0;
    std::string sampling = "odd-weight";
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string out;
    std::string csv;
    double floor = 0.80;
};

int cmd_run(const RunArgs &a) {
    qcomm::ExperimentConfig cfg;
    cfg.protocol = qcomm::parse_protocol(a.protocol);
    cfg.qubits = a.qubits;
    cfg.epsilon = a.epsilon;
    cfg.c = a.c;
    cfg.d = a.d;
    cfg.oracle = qcomm::parse_oracle_model(a.oracle);
    if (a.at_epsilon) {
        cfg.oracle_accuracy = a.epsilon;
    }
    if (a.accuracy >= 0) {
        cfg.oracle_accuracy = a.accuracy;
    }
    cfg.failure_prob = a.failure_prob;
    cfg.sampling = qcomm::parse_sampling(a.sampling);
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    cfg.keep_records = !a.csv.empty();
    auto rep = qcomm::run_experiment(cfg);
    emit(qcomm::report_json(rep), a.out);
    if (!a.csv.empty()) {
        emit(qcomm::records_csv(rep), a.csv);
    }
    std::cerr << qcomm::protocol_name(cfg.protocol) << ": " << rep.successes << "/" << rep.trials
              << " recovered (rate " << rep.success_rate << ", wilson95 [" << rep.wilson.lo << ", " << rep.wilson.hi
              << "])\n";
    for (const auto &e : rep.errors) {
        std::cerr << "  " << e << "\n";
    }
    return rep.success_rate >= a.floor ? kExitOk : kExitFail;
}

int cmd_gap(double epsilon, double c, std::size_t trials, std::uint64_t seed, const std::string &sampling,
            double floor, const std::string &out) {
    qcomm::GapConfig cfg;
    cfg.epsilon = epsilon;
    cfg.c = c;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.sampling = qcomm::parse_sampling(sampling);
    auto rep = qcomm::run_ghd_gap(cfg);
    emit(qcomm::to_json(rep).dump(2) + "\n", out);
    std::cerr << "x_i=0: " << rep.zero_hits << "/" << rep.zero_trials << " above N/2 - sqrt(N) (" << rep.zero_rate()
              << ")\n"
              << "x_i=1: " << rep.one_hits << "/" << rep.one_trials << " below N/2 - 2 sqrt(N) (" << rep.one_rate()
              << ")\n";
    return rep.zero_rate() >= floor && rep.one_rate() >= floor ? kExitOk : kExitFail;
}

int cmd_shadows(std::size_t qubits, std::size_t copies, std::uint64_t seed, const std::string &out) {
    if (qubits < 1 || qubits > 6) {
        throw qcomm::ConfigError("shadows-demo supports 1 to 6 qubits");
    }
    qcomm::RandomStream rng(qcomm::SharedRandomness(seed).derive(0x73686164));
    std::size_t dim = std::size_t{1} << qubits;
    std::vector<qcomm::complex> amps(dim);
    double norm = 0;
    for (auto &z : amps) {
        double u1 = std::max(rng.next_unit(), 0x1.0p-60);
        double u2 = rng.next_unit();
        double r = std::sqrt(-2 * std::log(u1));
        z = std::polar(r, 2 * M_PI * u2);
        norm += std::norm(z);
    }
    for (auto &z : amps) {
        z /= std::sqrt(norm);
    }
    auto rho = qcomm::ClassicalDensityMatrix::pure(std::span<const qcomm::complex>(amps));
    auto proto = qcomm::to_one_way_protocol(qcomm::reference_shadow_pair(copies, seed));
    auto msg = proto.alice(rho);
    auto shadow = qcomm::ShadowProtocol::shadow_of(msg);

    nlohmann::json obs = nlohmann::json::array();
    std::size_t total = 1;
    for (std::size_t t = 0; t < qubits; ++t) {
        total *= 3;
    }
    for (std::size_t code = 1; code < total; ++code) {
        qcomm::BitVector z(qubits);
        qcomm::BitVector x(qubits);
        std::size_t rest = code;
        for (std::size_t t = 0; t < qubits; ++t) {
            z.assign(t, rest % 3 == 1);
            x.assign(t, rest % 3 == 2);
            rest /= 3;
        }
        qcomm::PauliMask p(z, x);
        double exact = qcomm::pauli_expectation(rho, p);
        double est = proto.bob(msg, qcomm::Observable(p));
        obs.push_back({{"pauli", p.to_string()}, {"exact", exact}, {"estimate", est}});
    }
    bool bits_match = msg.main_bits == shadow.size() && msg.side_bits == 0;
    nlohmann::json j = {
        {"schema", "qcomm.shadows-demo/1"},
        {"qubits", qubits},
        {"copies", copies},
        {"seed", seed},
        {"shadow_bits", shadow.size()},
        {"message_bits", msg.total_bits()},
        {"observables", obs},
    };
    emit(j.dump(2) + "\n", out);
    return bits_match ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Indexing reductions for quantum expectation estimation"};
    app.require_subcommand(1);

    std::size_t verify_qubits = 8;
    std::string verify_out;
    auto *verify = app.add_subcommand("verify", "Exact algebraic identities and dense cross-checks");
    verify->add_option("--max-qubits", verify_qubits, "Largest qubit count to check (1-12)")->check(CLI::Range(1, 12));
    verify->add_option("--out", verify_out, "Write a JSON summary here");

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Monte Carlo run of one reduction");
    run->add_option("--protocol", run_args.protocol,
                    "general-state | pauli-state | observable-general | observable-pauli | inner-product")
        ->required();
    run->add_option("--qubits", run_args.qubits, "n (classical n for observable-pauli)")->required();
    run->add_option("--epsilon", run_args.epsilon, "Relative accuracy epsilon")->required();
    run->add_option("--trials", run_args.trials, "Number of trials")->required();
    run->add_option("--oracle", run_args.oracle, "exact | relative-uniform | relative-adversarial | additive")
        ->required();
    run->add_option("--oracle-accuracy", run_args.accuracy, "Oracle accuracy (default: the protocol budget)");
    run->add_flag("--oracle-at-epsilon", run_args.at_epsilon, "Run the oracle at accuracy epsilon");
    run->add_option("--failure-prob", run_args.failure_prob, "Oracle failure probability");
    run->add_option("--sampling", run_args.sampling, "odd-weight | unrestricted");
    run->add_option("--seed", run_args.seed, "Root seed")->required();
    run->add_option("--out", run_args.out, "Report path ('-' for stdout)")->required();
    run->add_option("--csv", run_args.csv, "Also write per-trial records as CSV");
    run->add_option("--threads", run_args.threads, "Worker threads (0 = hardware)");
    run->add_option("--c", run_args.c, "Majority bias constant c");
    run->add_option("--d", run_args.d, "Additive slack d");
    run->add_option("--floor", run_args.floor, "Exit 1 below this success rate");

    double gap_eps = 0.3;
    double gap_c = qcomm::kDefaultMajorityBias;
    std::size_t gap_trials = 2000;
    std::uint64_t gap_seed = 1;
    std::string gap_sampling = "odd-weight";
    double gap_floor = 0.80;
    std::string gap_out;
    auto *gap = app.add_subcommand("ghd-gap", "Gap-Hamming frequencies of the gadget alone");
    gap->add_option("--epsilon", gap_eps)->required();
    gap->add_option("--trials", gap_trials)->required();
    gap->add_option("--seed", gap_seed)->required();
    gap->add_option("--c", gap_c);
    gap->add_option("--sampling", gap_sampling);
    gap->add_option("--floor", gap_floor);
    gap->add_option("--out", gap_out);

    std::size_t sh_qubits = 3;
    std::size_t sh_copies = 10000;
    std::uint64_t sh_seed = 1;
    std::string sh_out;
    auto *shadows = app.add_subcommand("shadows-demo", "Reference shadow pair as a one-way protocol");
    shadows->add_option("--qubits", sh_qubits)->required();
    shadows->add_option("--copies", sh_copies)->required();
    shadows->add_option("--seed", sh_seed)->required();
    shadows->add_option("--out", sh_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*verify) {
            return cmd_verify(verify_qubits, verify_out);
        }
        if (*run) {
            return cmd_run(run_args);
        }
        if (*gap) {
            return cmd_gap(gap_eps, gap_c, gap_trials, gap_seed, gap_sampling, gap_floor, gap_out);
        }
        if (*shadows) {
            return cmd_shadows(sh_qubits, sh_copies, sh_seed, sh_out);
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitConfig;
}
