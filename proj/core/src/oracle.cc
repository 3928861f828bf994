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

#include "qcomm/oracle.h"

#include <cmath>

#include "qcomm/errors.h"

namespace qcomm {

namespace {

double unit(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view oracle_model_name(OracleModel model) noexcept {
    switch (model) {
        case OracleModel::Exact:
            return "exact";
        case OracleModel::RelativeUniform:
            return "relative-uniform";
        case OracleModel::RelativeAdversarial:
            return "relative-adversarial";
        case OracleModel::Additive:
            return "additive";
    }
    return "exact";
}

OracleModel parse_oracle_model(std::string_view name) {
    for (auto m : {OracleModel::Exact, OracleModel::RelativeUniform, OracleModel::RelativeAdversarial,
                   OracleModel::Additive}) {
        if (oracle_model_name(m) == name) {
            return m;
        }
    }
    throw ConfigError("unknown oracle model '" + std::string(name) + "'");
}

void OracleSpec::validate() const {
    if (!(accuracy >= 0) || !std::isfinite(accuracy)) {
        throw ConfigError("oracle accuracy must be a finite value >= 0");
    }
    if (!(failure_prob >= 0 && failure_prob <= 1)) {
        throw ConfigError("oracle failure probability must lie in [0, 1]");
    }
}

OracleDraw estimate(double true_value, const OracleSpec &spec, PushHint hint) {
    OracleDraw out;
    if (spec.failure_prob > 0 && unit(spec.rng.word(0)) < spec.failure_prob) {
        out.value = true_value * (1 + 10 * spec.accuracy);
        out.failed = true;
        return out;
    }
    double eps = spec.accuracy;
    bool coin = spec.rng.word(2) & 1;
    switch (spec.model) {
        case OracleModel::Exact:
            out.value = true_value;
            break;
        case OracleModel::RelativeUniform: {
            double u = (2 * unit(spec.rng.word(1)) - 1) * eps;
            out.value = true_value * (1 + u);
            break;
        }
        case OracleModel::RelativeAdversarial: {
            bool up = hint == PushHint::Up || (hint == PushHint::None && coin);
            double shift = eps * std::abs(true_value);
            out.value = up ? true_value + shift : true_value - shift;
            break;
        }
        case OracleModel::Additive:
            out.value = coin ? true_value + eps : true_value - eps;
            break;
    }
    return out;
}

OracleDraw estimate(const Rational &true_value, const OracleSpec &spec, PushHint hint) {
    return estimate(true_value.to_double(), spec, hint);
}

}  // namespace qcomm
