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

#include "qcomm/pauli.h"

#include <algorithm>
#include <bit>
#include <string>

#include "qcomm/errors.h"
#include "qcomm/exact_state.h"
#include "qcomm/wire.h"

namespace qcomm {

namespace {

int parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1 : 1; }

int masked_sign(const BitVector &mask, const BitVector &y) {
    auto a = mask.words();
    auto b = y.words();
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) {
        acc ^= a[w] & b[w];
    }
    return parity_sign(acc);
}

template <typename Point>
void require_distinct(const BitVector &z_mask, std::span<const Point> support) {
    std::vector<const BitVector *> order;
    order.reserve(support.size());
    for (const auto &p : support) {
        if (p.index.size() != z_mask.size()) {
            throw DimensionError("support index has " + std::to_string(p.index.size()) + " qubits, mask has " +
                                 std::to_string(z_mask.size()));
        }
        order.push_back(&p.index);
    }
    std::sort(order.begin(), order.end(), [](const BitVector *a, const BitVector *b) { return *a < *b; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (*order[k] == *order[k - 1]) {
            throw InconsistentInputsError("duplicate support index " + order[k]->to_string());
        }
    }
}

}  // namespace

PauliMask::PauliMask(BitVector z_mask, BitVector x_mask) : z_(std::move(z_mask)), x_(std::move(x_mask)) {
    if (z_.size() != x_.size()) {
        throw DimensionError("Pauli masks have different lengths");
    }
    if ((z_ & x_).any()) {
        throw InconsistentInputsError("Pauli masks overlap (Y factors are not supported)");
    }
}

PauliMask PauliMask::identity(std::size_t qubits) { return PauliMask(BitVector(qubits), BitVector(qubits)); }

PauliMask PauliMask::diagonal(BitVector z_mask) {
    BitVector x(z_mask.size());
    return PauliMask(std::move(z_mask), std::move(x));
}

PauliMask PauliMask::canonical_diagonal(std::uint64_t k, std::size_t qubits) {
    if (qubits > 63) {
        throw DimensionError("canonical ordering is limited to 63 qubits");
    }
    if (k < 1 || k > (std::uint64_t{1} << qubits)) {
        throw IndexError("Pauli index " + std::to_string(k) + " outside [1, 2^" + std::to_string(qubits) + "]");
    }
    return diagonal(BitVector::from_word(k - 1, qubits));
}

int PauliMask::entry(std::uint64_t row, std::uint64_t col) const {
    std::uint64_t z = z_.to_word();
    std::uint64_t x = x_.to_word();
    if ((row ^ x) != col) {
        return 0;
    }
    return parity_sign(z & row);
}

int PauliMask::diagonal_sign(const BitVector &y) const {
    if (y.size() != qubits()) {
        throw DimensionError("basis string length does not match the Pauli");
    }
    return masked_sign(z_, y);
}

void PauliMask::append_to(ByteWriter &out) const {
    z_.append_to(out);
    x_.append_to(out);
}

PauliMask PauliMask::read_from(ByteReader &in) {
    BitVector z = BitVector::read_from(in);
    BitVector x = BitVector::read_from(in);
    if (z.size() != x.size() || (z & x).any()) {
        throw FormatError("malformed Pauli masks");
    }
    return PauliMask(std::move(z), std::move(x));
}

std::string PauliMask::to_string() const {
    std::string out;
    out.reserve(qubits());
    for (std::size_t t = 0; t < qubits(); ++t) {
        out.push_back(z_.test(t) ? 'Z' : x_.test(t) ? 'X' : 'I');
    }
    return out;
}

Rational expectation(const ExactState &state, const PauliMask &pauli) {
    if (state.qubits() != pauli.qubits()) {
        throw DimensionError("state has " + std::to_string(state.qubits()) + " qubits, observable has " +
                             std::to_string(pauli.qubits()));
    }
    std::uint64_t z = pauli.z_mask().to_word();
    std::uint64_t x = pauli.x_mask().to_word();
    wide_int total = 0;
    state.for_each_nonzero([&](std::uint64_t y, std::int64_t value) {
        std::int64_t partner = x == 0 ? value : state.numerator(y ^ x);
        total += static_cast<wide_int>(value) * partner * parity_sign(z & y);
    });
    return Rational::from_wide(total, state.norm_sq());
}

Rational subset_state_expectation(const BitVector &z_mask, std::span<const SupportPoint> support,
                                  std::int64_t norm_sq) {
    require_distinct(z_mask, support);
    wide_int total = 0;
    wide_int norm = 0;
    for (const auto &p : support) {
        wide_int sq = static_cast<wide_int>(p.amplitude) * p.amplitude;
        norm += sq;
        total += sq * masked_sign(z_mask, p.index);
    }
    if (norm != norm_sq || norm_sq <= 0) {
        throw InconsistentInputsError("support amplitudes do not square-sum to norm_sq");
    }
    return Rational::from_wide(total, norm_sq);
}

Rational weighted_subset_expectation(const BitVector &z_mask, std::span<const WeightedPoint> support,
                                     std::int64_t norm_sq) {
    require_distinct(z_mask, support);
    wide_int total = 0;
    wide_int norm = 0;
    for (const auto &p : support) {
        if (p.weight < 0) {
            throw InconsistentInputsError("negative support weight");
        }
        norm += p.weight;
        total += static_cast<wide_int>(p.weight) * masked_sign(z_mask, p.index);
    }
    if (norm != norm_sq || norm_sq <= 0) {
        throw InconsistentInputsError("support weights do not sum to norm_sq");
    }
    return Rational::from_wide(total, norm_sq);
}

}  // namespace qcomm
