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

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qcomm {

__extension__ typedef __int128 wide_int;

/// Reduced fraction with a positive denominator. Arithmetic is carried out
/// in 128 bits and the reduced result must fit back into 64 (NumericError).
class Rational {
   public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    static Rational from_wide(wide_int num, wide_int den);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    Rational operator-() const { return from_wide(-static_cast<wide_int>(num_), den_); }
    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator-(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend Rational operator/(const Rational &a, const Rational &b);

    friend bool operator==(const Rational &a, const Rational &b) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) noexcept;

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace qcomm
