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

namespace qcomm {

class ByteReader;
class ByteWriter;

/**
 * A real quantum state with integer numerators: amplitude k is
 * numerators[k] / sqrt(D) with D = sum of numerators^2, held exactly.
 *
 * Basis index bit t is qubit t, so appending a qubit on top of an n-qubit
 * vector v gives the layout [v (qubit n = 0); w (qubit n = 1)].
 */
class ExactState {
   public:
    struct Entry {
        std::uint64_t index;
        std::int64_t value;
        bool operator==(const Entry &) const = default;
    };

    static constexpr std::size_t kMaxDenseQubits = 24;
    static constexpr std::size_t kMaxQubits = 63;

    /// DimensionError unless numerators.size() == 2^qubits; NumericError for
    /// the zero vector or if D overflows 64 bits.
    static ExactState dense(std::size_t qubits, std::vector<std::int64_t> numerators);
    /// Entries are sorted by index; duplicates are rejected, zeros dropped.
    static ExactState sparse(std::size_t qubits, std::vector<Entry> entries);

    std::size_t qubits() const noexcept { return qubits_; }
    std::uint64_t dimension() const noexcept { return std::uint64_t{1} << qubits_; }
    std::int64_t norm_sq() const noexcept { return norm_sq_; }
    bool is_dense() const noexcept { return dense_; }

    std::int64_t numerator(std::uint64_t index) const;
    double amplitude(std::uint64_t index) const;

    /// DimensionError (wrong layout) if called on the other representation.
    std::span<const std::int64_t> dense_numerators() const;
    std::span<const Entry> sparse_entries() const;

    /// Calls f(index, value) for every nonzero numerator in increasing index order.
    template <typename F>
    void for_each_nonzero(F &&f) const {
        if (dense_) {
            for (std::uint64_t k = 0; k < numerators_.size(); ++k) {
                if (numerators_[k] != 0) {
                    f(k, numerators_[k]);
                }
            }
        } else {
            for (const auto &e : entries_) {
                f(e.index, e.value);
            }
        }
    }

    std::vector<double> to_dense_amplitudes() const;
    std::size_t nonzero_count() const;

    /// Layout tag (0 dense, 1 sparse), u32 qubits, u64 D, then either 2^n
    /// signed 64-bit numerators, or a u64 count and (u64 index, i64 value) pairs.
    void append_to(ByteWriter &out) const;
    static ExactState read_from(ByteReader &in);
    std::size_t serialized_bits() const noexcept;

    bool operator==(const ExactState &other) const;

   private:
    ExactState() = default;

    std::size_t qubits_ = 0;
    std::int64_t norm_sq_ = 0;
    bool dense_ = true;
    std::vector<std::int64_t> numerators_;
    std::vector<Entry> entries_;
};

/// sum_k a[k] * b[k] over numerators; the overlap is this divided by sqrt(D_a D_b).
std::int64_t overlap_numerator(const ExactState &a, const ExactState &b);

}  // namespace qcomm
