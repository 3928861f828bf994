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

#include "qcomm/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "qcomm/errors.h"

namespace qcomm {

namespace {

constexpr double kWilsonZ = 1.959963984540054;
constexpr std::size_t kMaxLoggedErrors = 10;

SharedRandomness trial_stream(std::uint64_t seed, std::size_t t) {
    return SharedRandomness(seed).derive(kTrialStream).derive(t);
}

BitStats bit_stats(const std::vector<TrialRecord> &records, std::uint64_t TrialRecord::*field) {
    BitStats s;
    std::uint64_t total = 0;
    std::size_t count = 0;
    s.min = std::numeric_limits<std::uint64_t>::max();
    for (const auto &r : records) {
        if (!r.error.empty()) {
            continue;
        }
        std::uint64_t v = r.*field;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        total += v;
        ++count;
    }
    if (count == 0) {
        s.min = 0;
        return s;
    }
    s.mean = static_cast<double>(total) / static_cast<double>(count);
    return s;
}

nlohmann::json stats_json(const BitStats &s) { return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}}; }

nlohmann::json interval_json(const Interval &i) { return nlohmann::json::array({i.lo, i.hi}); }

}  // namespace

std::string_view sampling_name(SamplingMode mode) noexcept {
    return mode == SamplingMode::OddWeight ? "odd-weight" : "unrestricted";
}

SamplingMode parse_sampling(std::string_view name) {
    if (name == "odd-weight") {
        return SamplingMode::OddWeight;
    }
    if (name == "unrestricted") {
        return SamplingMode::Unrestricted;
    }
    throw ConfigError("unknown sampling mode '" + std::string(name) + "'");
}

BitVector sample_x(std::size_t len, std::size_t block, SamplingMode mode, RandomStream &rng) {
    BitVector x = rng.next_bits(len);
    if (mode == SamplingMode::OddWeight && block > 0) {
        // Force odd weight by flipping the last bit of each even block.
        for (std::size_t start = 0; start + block <= len; start += block) {
            if (x.slice(start, block).nnz() % 2 == 0) {
                x.assign(start + block - 1, !x.test(start + block - 1));
            }
        }
    }
    return x;
}

Interval wilson95(std::size_t successes, std::size_t trials) {
    if (trials == 0) {
        return {0, 1};
    }
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = kWilsonZ * kWilsonZ;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = kWilsonZ * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> &task) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            task(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) {
                task(k);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

ProtocolConfig ExperimentConfig::protocol_config() const {
    if (trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    return ProtocolConfig::make(protocol, qubits, epsilon, c, d);
}

double ExperimentConfig::resolved_accuracy() const {
    if (oracle_accuracy) {
        if (!(*oracle_accuracy >= 0)) {
            throw ConfigError("oracle accuracy must be >= 0");
        }
        return *oracle_accuracy;
    }
    return protocol_config().budget_accuracy();
}

TrialRecord run_trial(const ExperimentConfig &cfg, const ProtocolConfig &pcfg, double accuracy, std::size_t t) {
    TrialRecord rec;
    rec.trial = t;
    auto root = trial_stream(cfg.seed, t);
    auto pub = root.derive(kPublicStream);
    RandomStream inst_rng(root.derive(kInstanceStream));
    try {
        BitVector x = sample_x(pcfg.capacity, pcfg.gamma(), cfg.sampling, inst_rng);
        rec.l = static_cast<std::size_t>(inst_rng.next_below(pcfg.capacity)) + 1;
        IndexingInstance inst(x, rec.l);
        rec.truth = inst.answer() ? 1 : 0;

        auto sent = alice_encode(inst, pcfg, pub);
        auto msg = ProtocolMessage::deserialize(sent.serialize());
        rec.main_bits = msg.main_bits;
        rec.side_bits = msg.side_bits;

        OracleSpec oracle;
        oracle.model = cfg.oracle;
        oracle.accuracy = accuracy;
        oracle.failure_prob = cfg.failure_prob;
        oracle.rng = root.derive(kOracleStream);
        auto out = bob_decode(msg, rec.l, pcfg, pub, oracle);
        rec.bit = out.bit;
        rec.target = out.target;
        rec.estimate = out.estimate;
        rec.delta_estimate = out.delta_estimate;
        rec.oracle_failed = out.oracle_failed;

        auto enc = partition_and_encode(x, pcfg, pub);
        auto [j, i] = split_index(rec.l, pcfg.gamma());
        rec.delta_true = static_cast<double>(hamming(enc.a_hat[j - 1], enc.b_hat[i - 1]));
        rec.success = rec.bit == rec.truth;
    } catch (const std::exception &e) {
        rec.error = e.what();
        rec.success = false;
    }
    return rec;
}

ExperimentReport run_experiment(const ExperimentConfig &cfg) {
    ExperimentReport rep;
    rep.config = cfg;
    rep.protocol = cfg.protocol_config();
    rep.oracle_accuracy = cfg.resolved_accuracy();
    OracleSpec probe;
    probe.accuracy = rep.oracle_accuracy;
    probe.failure_prob = cfg.failure_prob;
    probe.validate();
    rep.delta_bound = rep.protocol.ghd.additive_tolerance();

    std::vector<TrialRecord> records(cfg.trials);
    parallel_for(cfg.trials, cfg.threads,
                 [&](std::size_t t) { records[t] = run_trial(cfg, rep.protocol, rep.oracle_accuracy, t); });

    rep.trials = cfg.trials;
    for (const auto &r : records) {
        rep.successes += r.success ? 1 : 0;
        if (!r.error.empty()) {
            ++rep.trial_errors;
            if (rep.errors.size() < kMaxLoggedErrors) {
                rep.errors.push_back("trial " + std::to_string(r.trial) + ": " + r.error);
            }
            continue;
        }
        if (r.oracle_failed) {
            ++rep.oracle_failures;
            continue;
        }
        double err = std::abs(r.delta_estimate - r.delta_true);
        rep.max_delta_error = std::max(rep.max_delta_error, err);
        if (err > rep.delta_bound) {
            ++rep.bound_violations;
        }
    }
    rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
    rep.wilson = wilson95(rep.successes, rep.trials);
    rep.main_bits = bit_stats(records, &TrialRecord::main_bits);
    rep.side_bits = bit_stats(records, &TrialRecord::side_bits);
    if (cfg.keep_records) {
        rep.records = std::move(records);
    }
    return rep;
}

nlohmann::json to_json(const ExperimentReport &r) {
    const auto &c = r.config;
    const auto &p = r.protocol;
    nlohmann::json oracle = {
        {"model", std::string(oracle_model_name(c.oracle))},
        {"accuracy", r.oracle_accuracy},
        {"accuracy_source", c.oracle_accuracy ? "override" : "budget"},
        {"failure_prob", c.failure_prob},
    };
    nlohmann::json j = {
        {"schema", "qcomm.experiment/1"},
        {"config",
         {
             {"protocol", std::string(protocol_name(c.protocol))},
             {"qubits", c.qubits},
             {"epsilon", c.epsilon},
             {"c", c.c},
             {"d", c.d},
             {"oracle", oracle},
             {"trials", c.trials},
             {"seed", c.seed},
             {"sampling", std::string(sampling_name(c.sampling))},
         }},
        {"derived",
         {
             {"gamma", p.ghd.gamma},
             {"C", p.ghd.C},
             {"N", p.ghd.N},
             {"q", p.q},
             {"blocks", p.blocks},
             {"capacity", p.capacity},
             {"message_qubits", p.message_qubits()},
             {"threshold", p.ghd.threshold()},
             {"sqrt_N", p.ghd.sqrt_n()},
             {"delta_bound", r.delta_bound},
             {"kappa", p.oracle_slack},
             {"delta_target", p.ghd.delta_target},
         }},
        {"results",
         {
             {"trials", r.trials},
             {"successes", r.successes},
             {"success_rate", r.success_rate},
             {"wilson95", interval_json(r.wilson)},
             {"oracle_failures", r.oracle_failures},
             {"trial_errors", r.trial_errors},
             {"bound_violations", r.bound_violations},
             {"max_delta_error", r.max_delta_error},
         }},
        {"bits", {{"main", stats_json(r.main_bits)}, {"side", stats_json(r.side_bits)}}},
        {"errors", r.errors},
    };
    if (!r.records.empty()) {
        auto &out = j["records"] = nlohmann::json::array();
        for (const auto &t : r.records) {
            out.push_back({
                {"trial", t.trial},
                {"l", t.l},
                {"truth", t.truth},
                {"bit", t.bit},
                {"success", t.success},
                {"target", t.target},
                {"estimate", t.estimate},
                {"delta_true", t.delta_true},
                {"delta_estimate", t.delta_estimate},
                {"oracle_failed", t.oracle_failed},
                {"main_bits", t.main_bits},
                {"side_bits", t.side_bits},
                {"error", t.error},
            });
        }
    }
    return j;
}

std::string report_json(const ExperimentReport &report) { return to_json(report).dump(2) + "\n"; }

std::string records_csv(const ExperimentReport &report) {
    std::ostringstream out;
    out.precision(17);
    out << "trial,l,truth,bit,success,target,estimate,delta_true,delta_estimate,oracle_failed,main_bits,side_bits\n";
    for (const auto &t : report.records) {
        out << t.trial << ',' << t.l << ',' << t.truth << ',' << t.bit << ',' << (t.success ? 1 : 0) << ','
            << t.target << ',' << t.estimate << ',' << t.delta_true << ',' << t.delta_estimate << ','
            << (t.oracle_failed ? 1 : 0) << ',' << t.main_bits << ',' << t.side_bits << '\n';
    }
    return out.str();
}

GapReport run_ghd_gap(const GapConfig &cfg) {
    if (cfg.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    GapReport rep;
    rep.config = cfg;
    rep.params = GhdParams::make(cfg.epsilon, cfg.c, cfg.d);
    const GhdParams &p = rep.params;
    struct Outcome {
        bool x_i;
        bool hit;
        bool decoded;
    };
    std::vector<Outcome> outcomes(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        auto root = trial_stream(cfg.seed, t);
        RandomStream rng(root.derive(kInstanceStream));
        BitVector x = sample_x(p.gamma, p.gamma, cfg.sampling, rng);
        std::size_t i = static_cast<std::size_t>(rng.next_below(p.gamma)) + 1;
        auto enc = encode_pair(x, i, p, root.derive(kPublicStream));
        double delta = static_cast<double>(hamming(enc.a, enc.b));
        bool xi = x.at(i);
        bool hit = xi ? delta <= p.one_case_ceiling() : delta >= p.zero_case_floor();
        outcomes[t] = {xi, hit, decode_bit(delta, p) == static_cast<int>(xi)};
    });
    for (const auto &o : outcomes) {
        if (o.x_i) {
            ++rep.one_trials;
            rep.one_hits += o.hit;
        } else {
            ++rep.zero_trials;
            rep.zero_hits += o.hit;
        }
        rep.decoded += o.decoded;
    }
    return rep;
}

nlohmann::json to_json(const GapReport &r) {
    const auto &p = r.params;
    return {
        {"schema", "qcomm.ghd-gap/1"},
        {"config",
         {{"epsilon", r.config.epsilon},
          {"c", r.config.c},
          {"trials", r.config.trials},
          {"seed", r.config.seed},
          {"sampling", std::string(sampling_name(r.config.sampling))}}},
        {"derived",
         {{"gamma", p.gamma},
          {"C", p.C},
          {"N", p.N},
          {"zero_case_floor", p.zero_case_floor()},
          {"one_case_ceiling", p.one_case_ceiling()},
          {"threshold", p.threshold()},
          {"delta_target", p.delta_target}}},
        {"results",
         {{"zero", {{"trials", r.zero_trials}, {"hits", r.zero_hits}, {"rate", r.zero_rate()},
                    {"wilson95", interval_json(wilson95(r.zero_hits, r.zero_trials))}}},
          {"one", {{"trials", r.one_trials}, {"hits", r.one_hits}, {"rate", r.one_rate()},
                   {"wilson95", interval_json(wilson95(r.one_hits, r.one_trials))}}},
          {"decode_rate", static_cast<double>(r.decoded) / static_cast<double>(r.config.trials)}}},
    };
}

}  // namespace qcomm
