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

#include "qcomm/transform.h"

#include <algorithm>
#include <bit>
#include <string>

#include "qcomm/errors.h"

namespace qcomm {

std::size_t exact_log2(std::size_t length) {
    if (length == 0 || !std::has_single_bit(length)) {
        throw DimensionError("length " + std::to_string(length) + " is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(length));
}

void fwht_in_place(std::span<std::int64_t> values) {
    std::size_t n = exact_log2(values.size());
    std::uint64_t peak = 0;
    for (auto v : values) {
        peak = std::max<std::uint64_t>(peak, v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v));
    }
    if (static_cast<std::size_t>(std::bit_width(peak)) + n > 63) {
        throw NumericError("transform of " + std::to_string(values.size()) + " entries would overflow 64 bits");
    }
    for (std::size_t h = 1; h < values.size(); h <<= 1) {
        for (std::size_t i = 0; i < values.size(); i += h << 1) {
            for (std::size_t k = i; k < i + h; ++k) {
                std::int64_t a = values[k];
                std::int64_t b = values[k + h];
                values[k] = a + b;
                values[k + h] = a - b;
            }
        }
    }
}

std::vector<std::int64_t> fwht_apply(std::span<const std::int64_t> values) {
    std::vector<std::int64_t> out(values.begin(), values.end());
    fwht_in_place(std::span<std::int64_t>(out));
    return out;
}

void fwht_in_place(std::span<double> values) {
    exact_log2(values.size());
    for (std::size_t h = 1; h < values.size(); h <<= 1) {
        for (std::size_t i = 0; i < values.size(); i += h << 1) {
            for (std::size_t k = i; k < i + h; ++k) {
                double a = values[k];
                double b = values[k + h];
                values[k] = a + b;
                values[k + h] = a - b;
            }
        }
    }
}

Rational DyadicVector::at(std::size_t k) const {
    return Rational::from_wide(numerators.at(k), static_cast<wide_int>(1) << log2_den);
}

std::vector<Rational> DyadicVector::to_rationals() const {
    std::vector<Rational> out;
    out.reserve(numerators.size());
    for (std::size_t k = 0; k < numerators.size(); ++k) {
        out.push_back(at(k));
    }
    return out;
}

DyadicVector solve_v(std::span<const std::int64_t> stacked) {
    DyadicVector v;
    v.log2_den = exact_log2(stacked.size());
    v.numerators = fwht_apply(stacked);
    return v;
}

DyadicVector apply_transform(const DyadicVector &v) {
    DyadicVector out;
    out.log2_den = v.log2_den;
    out.numerators = fwht_apply(v.numerators);
    return out;
}

}  // namespace qcomm
