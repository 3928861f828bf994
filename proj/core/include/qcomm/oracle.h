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
 * Simulated estimators for <psi|M|psi>. The simulator already knows the
 * exact value; an oracle only decides how wrong to be.
 */

#pragma once

#include <string>
#include <string_view>

#include "qcomm/bits.h"
#include "qcomm/rational.h"

namespace qcomm {

enum class OracleModel {
    Exact,
    RelativeUniform,
    RelativeAdversarial,
    Additive,
};

std::string_view oracle_model_name(OracleModel model) noexcept;
/// "exact", "relative-uniform", "relative-adversarial" or "additive" (ConfigError otherwise).
OracleModel parse_oracle_model(std::string_view name);

/// Which way the adversary should move the estimate.
enum class PushHint {
    None,
    Up,
    Down,
};

struct OracleSpec {
    OracleModel model = OracleModel::Exact;
    double accuracy = 0;
    double failure_prob = 0;
    SharedRandomness rng{0};

    /// ConfigError unless accuracy >= 0 and failure_prob lies in [0, 1].
    void validate() const;
};

struct OracleDraw {
    double value = 0;
    bool failed = false;
};

/**
 * One draw. Word 0 of the stream decides failure (value * (1 + 10 accuracy)),
 * word 1 feeds the uniform model, word 2 the additive sign. The
 * adversarial model follows the hint and falls back to word 2 without one.
 */
OracleDraw estimate(double true_value, const OracleSpec &spec, PushHint hint = PushHint::None);
OracleDraw estimate(const Rational &true_value, const OracleSpec &spec, PushHint hint = PushHint::None);

}  // namespace qcomm
