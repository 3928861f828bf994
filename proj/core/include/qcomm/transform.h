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
 * The I/Z character transform. Row k of the 2^n x 2^n matrix is the
 * diagonal of the Pauli whose Z mask is k (qubit t = bit t of k), so
 * entry (k, y) is (-1)^popcount(k & y). The matrix is symmetric and
 * squares to 2^n times the identity.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcomm/rational.h"

namespace qcomm {

/// log2 of a power-of-two length; DimensionError otherwise.
std::size_t exact_log2(std::size_t length);

/// In-place Walsh-Hadamard butterfly. NumericError if any intermediate
/// value could overflow 64 bits (checked against the input magnitude).
void fwht_in_place(std::span<std::int64_t> values);

/// Returns the transform of `values` without touching the input.
std::vector<std::int64_t> fwht_apply(std::span<const std::int64_t> values);

/// Same transform on doubles, for dense cross-checks.
void fwht_in_place(std::span<double> values);

/// Vector of rationals sharing the denominator 2^log2_den.
struct DyadicVector {
    std::vector<std::int64_t> numerators;
    std::size_t log2_den = 0;

    std::size_t size() const noexcept { return numerators.size(); }
    Rational at(std::size_t k) const;
    std::vector<Rational> to_rationals() const;
};

/// v with transform(v) = stacked, i.e. v = 2^-n transform(stacked).
DyadicVector solve_v(std::span<const std::int64_t> stacked);

/// The transform applied to v, exactly, over the same denominator.
DyadicVector apply_transform(const DyadicVector &v);

}  // namespace qcomm
