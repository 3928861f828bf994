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

#include "qcomm/rational.h"

#include <limits>

#include "qcomm/errors.h"

namespace qcomm {

namespace {

wide_int wide_abs(wide_int v) { return v < 0 ? -v : v; }

wide_int wide_gcd(wide_int a, wide_int b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        wide_int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(wide_int v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

Rational Rational::from_wide(wide_int num, wide_int den) {
    if (den == 0) {
        throw NumericError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide_int g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) {
        den = 1;
    }
    if (!fits64(num) || !fits64(den)) {
        throw NumericError("rational overflows 64-bit numerator/denominator");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::string Rational::to_string() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational &a, const Rational &b) {
    return Rational::from_wide(static_cast<wide_int>(a.num_) * b.den_ + static_cast<wide_int>(b.num_) * a.den_,
                               static_cast<wide_int>(a.den_) * b.den_);
}

Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

Rational operator*(const Rational &a, const Rational &b) {
    return Rational::from_wide(static_cast<wide_int>(a.num_) * b.num_, static_cast<wide_int>(a.den_) * b.den_);
}

Rational operator/(const Rational &a, const Rational &b) {
    return Rational::from_wide(static_cast<wide_int>(a.num_) * b.den_, static_cast<wide_int>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) noexcept {
    wide_int lhs = static_cast<wide_int>(a.num_) * b.den_;
    wide_int rhs = static_cast<wide_int>(b.num_) * a.den_;
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

}  // namespace qcomm
