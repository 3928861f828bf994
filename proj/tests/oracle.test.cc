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

#include <gtest/gtest.h>

#include <cmath>

#include "qcomm/errors.h"
#include "qcomm/oracle.h"

using namespace qcomm;

namespace {

OracleSpec spec_for(OracleModel model, double accuracy, std::uint64_t seed, double failure = 0) {
    OracleSpec s;
    s.model = model;
    s.accuracy = accuracy;
    s.failure_prob = failure;
    s.rng = SharedRandomness(seed);
    return s;
}

}  // namespace

TEST(oracle, exact_returns_value) {
    auto draw = estimate(0.5, spec_for(OracleModel::Exact, 0.3, 1));
    ASSERT_EQ(draw.value, 0.5);
    ASSERT_FALSE(draw.failed);
    ASSERT_EQ(estimate(Rational(1, 4), spec_for(OracleModel::Exact, 0, 1)).value, 0.25);
}

TEST(oracle, adversarial_fixes_zero) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        ASSERT_EQ(estimate(0.0, spec_for(OracleModel::RelativeAdversarial, 0.2, s)).value, 0.0);
        ASSERT_EQ(estimate(0.0, spec_for(OracleModel::RelativeUniform, 0.2, s)).value, 0.0);
    }
}

TEST(oracle, adversarial_follows_hint) {
    auto spec = spec_for(OracleModel::RelativeAdversarial, 0.1, 3);
    ASSERT_DOUBLE_EQ(estimate(-2.0, spec, PushHint::Up).value, -1.8);
    ASSERT_DOUBLE_EQ(estimate(-2.0, spec, PushHint::Down).value, -2.2);
    ASSERT_DOUBLE_EQ(estimate(4.0, spec, PushHint::Up).value, 4.4);
    int ups = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        ups += estimate(1.0, spec_for(OracleModel::RelativeAdversarial, 0.1, s)).value > 1.0;
    }
    ASSERT_GT(ups, 400);
    ASSERT_LT(ups, 600);
}

TEST(oracle, uniform_stays_within_relative_band) {
    double worst = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        double v = estimate(0.7, spec_for(OracleModel::RelativeUniform, 0.2, s)).value;
        double rel = std::abs(v - 0.7) / 0.7;
        ASSERT_LE(rel, 0.2 + 1e-12);
        worst = std::max(worst, rel);
    }
    ASSERT_GE(worst, 0.19);
}

TEST(oracle, additive_shifts_by_accuracy) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        double v = estimate(0.3, spec_for(OracleModel::Additive, 0.05, s)).value;
        ASSERT_NEAR(std::abs(v - 0.3), 0.05, 1e-12);
    }
}

TEST(oracle, failure) {
    auto always = spec_for(OracleModel::RelativeUniform, 0.1, 9, 1.0);
    auto draw = estimate(2.0, always);
    ASSERT_TRUE(draw.failed);
    ASSERT_DOUBLE_EQ(draw.value, 4.0);
    int failures = 0;
    for (std::uint64_t s = 0; s < 3000; ++s) {
        failures += estimate(1.0, spec_for(OracleModel::Exact, 0, s, 1.0 / 3)).failed;
    }
    ASSERT_NEAR(failures / 3000.0, 1.0 / 3, 0.03);
}

TEST(oracle, deterministic_per_stream) {
    auto a = spec_for(OracleModel::RelativeUniform, 0.2, 11);
    ASSERT_EQ(estimate(0.9, a).value, estimate(0.9, a).value);
    auto b = spec_for(OracleModel::RelativeUniform, 0.2, 12);
    ASSERT_NE(estimate(0.9, a).value, estimate(0.9, b).value);
}

TEST(oracle, names_and_validation) {
    for (auto m : {OracleModel::Exact, OracleModel::RelativeUniform, OracleModel::RelativeAdversarial,
                   OracleModel::Additive}) {
        ASSERT_EQ(parse_oracle_model(oracle_model_name(m)), m);
    }
    ASSERT_THROW(parse_oracle_model("median"), ConfigError);
    ASSERT_THROW(spec_for(OracleModel::Exact, -0.1, 0).validate(), ConfigError);
    ASSERT_THROW(spec_for(OracleModel::Exact, 0.1, 0, 1.5).validate(), ConfigError);
    ASSERT_THROW(spec_for(OracleModel::Exact, NAN, 0).validate(), ConfigError);
    spec_for(OracleModel::Additive, 0.1, 0, 1).validate();
}
