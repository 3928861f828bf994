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

/**
 * @file
 * Monte Carlo experiments over the reductions.
 *
 * Trial t reads only SharedRandomness(seed).derive(kTrialStream).derive(t)
 * and its children, so a report depends on the config alone and not on
 * how many workers ran it.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcomm/bits.h"
#include "qcomm/ghd.h"
#include "qcomm/oracle.h"
#include "qcomm/protocols.h"

namespace qcomm {

inline constexpr std::uint64_t kTrialStream = 0x747269616c;
inline constexpr std::uint64_t kPublicStream = 1;
inline constexpr std::uint64_t kInstanceStream = 2;
inline constexpr std::uint64_t kOracleStream = 3;

enum class SamplingMode { OddWeight, Unrestricted };

std::string_view sampling_name(SamplingMode mode) noexcept;
/// "odd-weight" or "unrestricted" (ConfigError otherwise).
SamplingMode parse_sampling(std::string_view name);

/// Uniform bits; in odd-weight mode every gamma-bit block is conditioned to odd weight.
BitVector sample_x(std::size_t len, std::size_t block, SamplingMode mode, RandomStream &rng);

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Wilson score interval at 95%.
Interval wilson95(std::size_t successes, std::size_t trials);

/// Runs task(0..count-1) on up to `threads` workers (0 picks the hardware count).
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> &task);

struct ExperimentConfig {
    ProtocolKind protocol = ProtocolKind::PauliState;
    std::size_t qubits = 12;
    double epsilon = 0.3;
    double c = kDefaultMajorityBias;
    double d = kDefaultAdditiveSlack;
    OracleModel oracle = OracleModel::Exact;
    /// Relative accuracy handed to the oracle; the protocol budget when unset.
    std::optional<double> oracle_accuracy;
    double failure_prob = 0;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    SamplingMode sampling = SamplingMode::OddWeight;
    std::size_t threads = 0;
    bool keep_records = false;

    /// Builds and validates the protocol configuration (ConfigError, CapacityError).
    ProtocolConfig protocol_config() const;
    double resolved_accuracy() const;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::size_t l = 0;
    int truth = 0;
    int bit = 0;
    bool success = false;
    double target = 0;
    double estimate = 0;
    double delta_true = 0;
    double delta_estimate = 0;
    bool oracle_failed = false;
    std::uint64_t main_bits = 0;
    std::uint64_t side_bits = 0;
    std::string error;
};

struct BitStats {
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    double mean = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    ProtocolConfig protocol;
    double oracle_accuracy = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0;
    Interval wilson;
    BitStats main_bits;
    BitStats side_bits;
    std::size_t oracle_failures = 0;
    std::size_t trial_errors = 0;
    /// Non-failed trials whose |Delta_hat - Delta| exceeded d sqrt(C gamma).
    std::size_t bound_violations = 0;
    double max_delta_error = 0;
    double delta_bound = 0;
    std::vector<std::string> errors;
    std::vector<TrialRecord> records;
};

/// One trial, as run_experiment performs it.
TrialRecord run_trial(const ExperimentConfig &cfg, const ProtocolConfig &pcfg, double accuracy, std::size_t t);

ExperimentReport run_experiment(const ExperimentConfig &cfg);

nlohmann::json to_json(const ExperimentReport &report);
std::string report_json(const ExperimentReport &report);
/// One row per trial; requires keep_records.
std::string records_csv(const ExperimentReport &report);

struct GapConfig {
    double epsilon = 0.3;
    double c = kDefaultMajorityBias;
    double d = kDefaultAdditiveSlack;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    SamplingMode sampling = SamplingMode::OddWeight;
    std::size_t threads = 0;
};

struct GapReport {
    GapConfig config;
    GhdParams params;
    std::size_t zero_trials = 0;
    std::size_t zero_hits = 0;  // Delta >= N/2 - sqrt(N) given x_i = 0
    std::size_t one_trials = 0;
    std::size_t one_hits = 0;  // Delta <= N/2 - 2 sqrt(N) given x_i = 1
    std::size_t decoded = 0;  // threshold decoder on the exact Delta
    double zero_rate() const { return zero_trials ? static_cast<double>(zero_hits) / zero_trials : 0; }
    double one_rate() const { return one_trials ? static_cast<double>(one_hits) / one_trials : 0; }
};

GapReport run_ghd_gap(const GapConfig &cfg);
nlohmann::json to_json(const GapReport &report);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;
};

struct VerifyOptions {
    std::size_t max_qubits = 8;
    std::uint64_t seed = 1;
    /// Replaces the transform under test, for mutation checks.
    std::function<std::vector<std::int64_t>(std::span<const std::int64_t>)> transform;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

VerifyReport verify_suite(const VerifyOptions &options);
nlohmann::json to_json(const VerifyReport &report);

}  // namespace qcomm
