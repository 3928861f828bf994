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

#include "qcomm/exact_state.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcomm/errors.h"
#include "qcomm/rational.h"
#include "qcomm/wire.h"

namespace qcomm {

namespace {

constexpr std::uint8_t kDenseTag = 0;
constexpr std::uint8_t kSparseTag = 1;

std::int64_t checked_norm(wide_int total) {
    if (total <= 0) {
        throw NumericError("state has zero norm");
    }
    if (total > std::numeric_limits<std::int64_t>::max()) {
        throw NumericError("state norm overflows 64 bits");
    }
    return static_cast<std::int64_t>(total);
}

wide_int square(std::int64_t v) { return static_cast<wide_int>(v) * v; }

}  // namespace

ExactState ExactState::dense(std::size_t qubits, std::vector<std::int64_t> numerators) {
    if (qubits > kMaxDenseQubits) {
        throw DimensionError("dense states are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    if (numerators.size() != (std::size_t{1} << qubits)) {
        throw DimensionError("dense state on " + std::to_string(qubits) + " qubits needs " +
                             std::to_string(std::size_t{1} << qubits) + " numerators, got " +
                             std::to_string(numerators.size()));
    }
    wide_int total = 0;
    for (auto v : numerators) {
        total += square(v);
    }
    ExactState s;
    s.qubits_ = qubits;
    s.norm_sq_ = checked_norm(total);
    s.dense_ = true;
    s.numerators_ = std::move(numerators);
    return s;
}

ExactState ExactState::sparse(std::size_t qubits, std::vector<Entry> entries) {
    if (qubits > kMaxQubits) {
        throw DimensionError("states are limited to " + std::to_string(kMaxQubits) + " qubits");
    }
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) { return a.index < b.index; });
    std::erase_if(entries, [](const Entry &e) { return e.value == 0; });
    wide_int total = 0;
    std::uint64_t dim = std::uint64_t{1} << qubits;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].index >= dim) {
            throw DimensionError("sparse entry index " + std::to_string(entries[k].index) + " outside a " +
                                 std::to_string(qubits) + "-qubit space");
        }
        if (k > 0 && entries[k].index == entries[k - 1].index) {
            throw InconsistentInputsError("duplicate sparse index " + std::to_string(entries[k].index));
        }
        total += square(entries[k].value);
    }
    ExactState s;
    s.qubits_ = qubits;
    s.norm_sq_ = checked_norm(total);
    s.dense_ = false;
    s.entries_ = std::move(entries);
    return s;
}

std::int64_t ExactState::numerator(std::uint64_t index) const {
    if (index >= dimension()) {
        throw DimensionError("basis index outside the state space");
    }
    if (dense_) {
        return numerators_[index];
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry &e, std::uint64_t k) { return e.index < k; });
    return (it != entries_.end() && it->index == index) ? it->value : 0;
}

double ExactState::amplitude(std::uint64_t index) const {
    return static_cast<double>(numerator(index)) / std::sqrt(static_cast<double>(norm_sq_));
}

std::span<const std::int64_t> ExactState::dense_numerators() const {
    if (!dense_) {
        throw DimensionError("state is stored sparsely");
    }
    return numerators_;
}

std::span<const ExactState::Entry> ExactState::sparse_entries() const {
    if (dense_) {
        throw DimensionError("state is stored densely");
    }
    return entries_;
}

std::vector<double> ExactState::to_dense_amplitudes() const {
    if (qubits_ > kMaxDenseQubits) {
        throw DimensionError("too many qubits to materialize densely");
    }
    std::vector<double> out(static_cast<std::size_t>(dimension()), 0.0);
    double scale = 1 / std::sqrt(static_cast<double>(norm_sq_));
    for_each_nonzero([&](std::uint64_t k, std::int64_t v) { out[k] = static_cast<double>(v) * scale; });
    return out;
}

std::size_t ExactState::nonzero_count() const {
    if (!dense_) {
        return entries_.size();
    }
    return static_cast<std::size_t>(std::count_if(numerators_.begin(), numerators_.end(),
                                                  [](std::int64_t v) { return v != 0; }));
}

void ExactState::append_to(ByteWriter &out) const {
    out.put_u8(dense_ ? kDenseTag : kSparseTag);
    out.put_u32(static_cast<std::uint32_t>(qubits_));
    out.put_u64(static_cast<std::uint64_t>(norm_sq_));
    if (dense_) {
        for (auto v : numerators_) {
            out.put_i64(v);
        }
    } else {
        out.put_u64(entries_.size());
        for (const auto &e : entries_) {
            out.put_u64(e.index);
            out.put_i64(e.value);
        }
    }
}

ExactState ExactState::read_from(ByteReader &in) {
    std::uint8_t tag = in.get_u8();
    std::size_t qubits = in.get_u32();
    auto claimed = static_cast<std::int64_t>(in.get_u64());
    ExactState s;
    if (tag == kDenseTag) {
        if (qubits > kMaxDenseQubits) {
            throw FormatError("dense state with too many qubits");
        }
        std::size_t dim = std::size_t{1} << qubits;
        if (in.remaining() / 8 < dim) {
            throw FormatError("dense state payload truncated");
        }
        std::vector<std::int64_t> nums(dim);
        for (auto &v : nums) {
            v = in.get_i64();
        }
        s = dense(qubits, std::move(nums));
    } else if (tag == kSparseTag) {
        std::uint64_t count = in.get_u64();
        if (in.remaining() / 16 < count) {
            throw FormatError("sparse state payload truncated");
        }
        std::vector<Entry> entries(static_cast<std::size_t>(count));
        for (auto &e : entries) {
            e.index = in.get_u64();
            e.value = in.get_i64();
        }
        s = sparse(qubits, std::move(entries));
    } else {
        throw FormatError("unknown state layout tag " + std::to_string(tag));
    }
    if (s.norm_sq_ != claimed) {
        throw FormatError("state normSq field " + std::to_string(claimed) + " disagrees with numerators (" +
                          std::to_string(s.norm_sq_) + ")");
    }
    return s;
}

std::size_t ExactState::serialized_bits() const noexcept {
    std::size_t bytes = 1 + 4 + 8;
    bytes += dense_ ? 8 * numerators_.size() : 8 + 16 * entries_.size();
    return 8 * bytes;
}

bool ExactState::operator==(const ExactState &other) const {
    if (qubits_ != other.qubits_ || norm_sq_ != other.norm_sq_) {
        return false;
    }
    if (dense_ && other.dense_) {
        return numerators_ == other.numerators_;
    }
    bool same = true;
    for_each_nonzero([&](std::uint64_t k, std::int64_t v) { same = same && other.numerator(k) == v; });
    return same && nonzero_count() == other.nonzero_count();
}

std::int64_t overlap_numerator(const ExactState &a, const ExactState &b) {
    if (a.qubits() != b.qubits()) {
        throw DimensionError("overlap of states on different qubit counts");
    }
    const ExactState &outer = a.nonzero_count() <= b.nonzero_count() ? a : b;
    const ExactState &inner = &outer == &a ? b : a;
    wide_int total = 0;
    outer.for_each_nonzero([&](std::uint64_t k, std::int64_t v) { total += static_cast<wide_int>(v) * inner.numerator(k); });
    if (total > std::numeric_limits<std::int64_t>::max() || total < std::numeric_limits<std::int64_t>::min()) {
        throw NumericError("overlap numerator overflows 64 bits");
    }
    return static_cast<std::int64_t>(total);
}

}  // namespace qcomm
