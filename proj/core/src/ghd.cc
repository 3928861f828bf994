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

#include "qcomm/ghd.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qcomm/errors.h"

namespace qcomm {

namespace {

// Ceiling that forgives the last-ulp error in 1/eps^2 style quotients.
std::size_t tolerant_ceil(double v) { return static_cast<std::size_t>(std::ceil(v - 1e-9)); }

void require_strings(std::span<const BitVector> strings, const GhdParams &params) {
    if (strings.size() != params.N) {
        throw DimensionError("expected " + std::to_string(params.N) + " public strings, got " +
                             std::to_string(strings.size()));
    }
    for (const auto &r : strings) {
        if (r.size() != params.gamma) {
            throw DimensionError("public string length " + std::to_string(r.size()) + " != gamma " +
                                 std::to_string(params.gamma));
        }
    }
}

}  // namespace

GhdParams GhdParams::make(double epsilon, double c, double d) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    if (!(c > 0 && c < std::sqrt(2 / std::numbers::pi))) {
        throw ConfigError("c must lie in (0, sqrt(2/pi))");
    }
    if (!(d >= 0 && d < 0.5)) {
        throw ConfigError("d must lie in [0, 1/2)");
    }
    GhdParams p;
    p.epsilon = epsilon;
    p.c = c;
    p.d = d;
    p.gamma = tolerant_ceil(1 / (epsilon * epsilon));
    p.C = tolerant_ceil(9 / (c * c));
    p.N = p.C * p.gamma;
    p.delta_target = 0.5 - std::exp(-2.0);
    return p;
}

double GhdParams::sqrt_n() const { return std::sqrt(static_cast<double>(N)); }
double GhdParams::threshold() const { return N / 2.0 - 1.5 * sqrt_n(); }
double GhdParams::zero_case_floor() const { return N / 2.0 - sqrt_n(); }
double GhdParams::one_case_ceiling() const { return N / 2.0 - 2 * sqrt_n(); }
double GhdParams::additive_tolerance() const { return d * sqrt_n(); }

PublicStrings ghd_public_strings(const GhdParams &params, const SharedRandomness &sr) {
    return derive_public_strings(sr, params.N, params.gamma);
}

BitVector encode_alice(const BitVector &x, const GhdParams &params, std::span<const BitVector> strings) {
    if (x.size() != params.gamma) {
        throw DimensionError("encode_alice: x has length " + std::to_string(x.size()) + ", gamma is " +
                             std::to_string(params.gamma));
    }
    require_strings(strings, params);
    std::size_t selected = x.nnz();
    BitVector a(params.N);
    for (std::size_t j = 0; j < params.N; ++j) {
        // Strict majority of the selected bits; ties and the empty set give 0.
        std::size_t ones = inner_product(strings[j], x);
        a.assign(j, 2 * ones > selected);
    }
    return a;
}

BitVector encode_alice(const BitVector &x, const GhdParams &params, const SharedRandomness &sr) {
    return encode_alice(x, params, ghd_public_strings(params, sr));
}

BitVector encode_bob(std::size_t i, const GhdParams &params, std::span<const BitVector> strings) {
    if (i < 1 || i > params.gamma) {
        throw IndexError("encode_bob: index " + std::to_string(i) + " outside [1, " + std::to_string(params.gamma) +
                         "]");
    }
    require_strings(strings, params);
    BitVector b(params.N);
    for (std::size_t j = 0; j < params.N; ++j) {
        b.assign(j, strings[j].test(i - 1));
    }
    return b;
}

BitVector encode_bob(std::size_t i, const GhdParams &params, const SharedRandomness &sr) {
    return encode_bob(i, params, ghd_public_strings(params, sr));
}

GhdEncoding encode_pair(const BitVector &x, std::size_t i, const GhdParams &params, const SharedRandomness &sr) {
    auto strings = ghd_public_strings(params, sr);
    GhdEncoding out;
    out.a = encode_alice(x, params, strings);
    out.b = encode_bob(i, params, strings);
    out.nnz_a = out.a.nnz();
    out.nnz_b = out.b.nnz();
    return out;
}

int decode_bit(double delta_estimate, const GhdParams &params) {
    return delta_estimate >= params.threshold() ? 0 : 1;
}

double delta_from_sum_norm(double sum_norm_sq, std::int64_t nnz_a, std::int64_t nnz_b) {
    return 2.0 * static_cast<double>(nnz_a) + 2.0 * static_cast<double>(nnz_b) - sum_norm_sq;
}

}  // namespace qcomm
