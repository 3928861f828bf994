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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcomm/bits.h"
#include "qcomm/rational.h"

namespace qcomm {

class ByteReader;
class ByteWriter;
class ExactState;

/**
 * A real Pauli operator built from I, Z and X factors (no Y). Qubit t is
 * bit t of a basis index. Entry (y, y ^ x) is (-1)^popcount(z & y) and
 * every other entry is zero.
 */
class PauliMask {
   public:
    PauliMask() = default;
    /// DimensionError on length mismatch; InconsistentInputsError if z & x != 0.
    PauliMask(BitVector z_mask, BitVector x_mask);

    static PauliMask identity(std::size_t qubits);
    static PauliMask diagonal(BitVector z_mask);
    /// P^k for a 1-based k in [2^n]: the Z mask is the binary expansion of k - 1.
    static PauliMask canonical_diagonal(std::uint64_t k, std::size_t qubits);

    std::size_t qubits() const noexcept { return z_.size(); }
    const BitVector &z_mask() const noexcept { return z_; }
    const BitVector &x_mask() const noexcept { return x_; }
    bool is_diagonal() const noexcept { return !x_.any(); }
    bool is_identity() const noexcept { return !x_.any() && !z_.any(); }

    /// Matrix entry; requires qubits() <= 64.
    int entry(std::uint64_t row, std::uint64_t col) const;
    /// (-1)^popcount(z & y) for a basis string y.
    int diagonal_sign(const BitVector &y) const;

    /// z mask then x mask, each as a serialized BitVector.
    void append_to(ByteWriter &out) const;
    static PauliMask read_from(ByteReader &in);
    std::size_t serialized_bits() const noexcept { return z_.serialized_bits() + x_.serialized_bits(); }

    std::string to_string() const;

    bool operator==(const PauliMask &other) const = default;

   private:
    BitVector z_;
    BitVector x_;
};

/// <psi|P|psi> exactly, as numerator / D.
Rational expectation(const ExactState &state, const PauliMask &pauli);

struct SupportPoint {
    BitVector index;
    std::int64_t amplitude;
};

/// sum_k amp_k^2 (-1)^popcount(z & index_k) / norm_sq, in O(|support|).
/// InconsistentInputsError on duplicate indices or if norm_sq != sum amp_k^2.
Rational subset_state_expectation(const BitVector &z_mask, std::span<const SupportPoint> support,
                                  std::int64_t norm_sq);

/// Support points whose squared amplitudes are weight / norm_sq. Covers
/// states with irrational amplitude ratios such as 1 : sqrt(m).
struct WeightedPoint {
    BitVector index;
    std::int64_t weight;
};

Rational weighted_subset_expectation(const BitVector &z_mask, std::span<const WeightedPoint> support,
                                     std::int64_t norm_sq);

}  // namespace qcomm
