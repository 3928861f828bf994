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
 * Indexing -> Gap-Hamming gadget.
 *
 * Alice holds x of length gamma, Bob holds i in [gamma]. Both read C*gamma
 * public strings r^1..r^{C gamma} of length gamma. Alice's string is
 * a_j = majority{ r^j_k : x_k = 1 } and Bob's is b_j = r^j_i. The Hamming
 * distance Delta(a, b) sits above N/2 - sqrt(N) when x_i = 0 and below
 * N/2 - 2 sqrt(N) when x_i = 1 (each with probability >= 1 - e^-2 under
 * the analysis constants), so comparing an estimate against
 * N/2 - 1.5 sqrt(N) recovers x_i from any d*sqrt(N)-additive estimate.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcomm/bits.h"

namespace qcomm {

inline constexpr double kDefaultMajorityBias = 0.75;  // c; gives C = 16
inline constexpr double kDefaultAdditiveSlack = 0.49;  // d

struct GhdParams {
    double epsilon = 0;
    std::size_t gamma = 0;  // ceil(epsilon^-2)
    double c = kDefaultMajorityBias;
    std::size_t C = 0;  // ceil(9 / c^2)
    double d = kDefaultAdditiveSlack;
    std::size_t N = 0;  // C * gamma
    /// Analysis constant delta; recorded in reports, never enforced.
    double delta_target = 0;

    /// Validates 0 < epsilon < 1, 0 < c < sqrt(2/pi), 0 <= d < 1/2 (ConfigError).
    static GhdParams make(double epsilon, double c = kDefaultMajorityBias, double d = kDefaultAdditiveSlack);

    double sqrt_n() const;
    /// N/2 - 1.5 sqrt(N).
    double threshold() const;
    /// Lower edge of the x_i = 0 event, N/2 - sqrt(N).
    double zero_case_floor() const;
    /// Upper edge of the x_i = 1 event, N/2 - 2 sqrt(N).
    double one_case_ceiling() const;
    /// d * sqrt(N), the additive error the decoder tolerates.
    double additive_tolerance() const;
};

/// r^1..r^{C gamma}, each of length gamma.
using PublicStrings = std::vector<BitVector>;

PublicStrings ghd_public_strings(const GhdParams &params, const SharedRandomness &sr);

struct GhdEncoding {
    BitVector a;
    BitVector b;
    std::size_t nnz_a = 0;
    std::size_t nnz_b = 0;
};

/// a_j = majority of { r^j_k : x_k = 1 }. An empty selection and ties both give 0.
BitVector encode_alice(const BitVector &x, const GhdParams &params, std::span<const BitVector> strings);
BitVector encode_alice(const BitVector &x, const GhdParams &params, const SharedRandomness &sr);

/// b_j = r^j_i for a 1-based i in [gamma] (IndexError otherwise).
BitVector encode_bob(std::size_t i, const GhdParams &params, std::span<const BitVector> strings);
BitVector encode_bob(std::size_t i, const GhdParams &params, const SharedRandomness &sr);

GhdEncoding encode_pair(const BitVector &x, std::size_t i, const GhdParams &params, const SharedRandomness &sr);

/// 0 if the estimate is at or above the threshold, else 1.
int decode_bit(double delta_estimate, const GhdParams &params);

/// Delta = 2 nnz_a + 2 nnz_b - ||a + b||^2 (both polarization and the
/// Hamming identity, with <a, b> eliminated).
double delta_from_sum_norm(double sum_norm_sq, std::int64_t nnz_a, std::int64_t nnz_b);

}  // namespace qcomm
