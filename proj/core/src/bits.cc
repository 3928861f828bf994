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

#include "qcomm/bits.h"

#include <algorithm>
#include <bit>

#include "qcomm/errors.h"
#include "qcomm/wire.h"

namespace qcomm {

namespace {

std::size_t words_for(std::size_t len) { return (len + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            out.assign(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return out;
}

bool BitVector::at(std::size_t position) const {
    if (position < 1 || position > len_) {
        throw IndexError("bit position " + std::to_string(position) + " outside [1, " + std::to_string(len_) + "]");
    }
    return test(position - 1);
}

void BitVector::set_at(std::size_t position, bool value) {
    if (position < 1 || position > len_) {
        throw IndexError("bit position " + std::to_string(position) + " outside [1, " + std::to_string(len_) + "]");
    }
    assign(position - 1, value);
}

std::size_t BitVector::nnz() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

bool BitVector::any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

void BitVector::clear_tail() noexcept {
    if (len_ % 64 != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << (len_ % 64)) - 1;
    }
}

std::uint64_t BitVector::to_word() const {
    if (len_ > 64) {
        throw DimensionError("bit vector of length " + std::to_string(len_) + " does not fit in a word");
    }
    return words_.empty() ? 0 : words_[0];
}

BitVector BitVector::from_word(std::uint64_t bits, std::size_t len) {
    if (len > 64) {
        throw DimensionError("from_word supports at most 64 bits");
    }
    BitVector out(len);
    if (len > 0) {
        out.words_[0] = bits;
        out.clear_tail();
    }
    return out;
}

BitVector BitVector::slice(std::size_t start, std::size_t len) const {
    if (start + len > len_) {
        throw DimensionError("slice [" + std::to_string(start) + ", " + std::to_string(start + len) +
                             ") exceeds length " + std::to_string(len_));
    }
    BitVector out(len);
    for (std::size_t i = 0; i < len; ++i) {
        out.assign(i, test(start + i));
    }
    return out;
}

void BitVector::append(const BitVector &other) {
    std::size_t base = len_;
    len_ += other.len_;
    words_.resize(words_for(len_), 0);
    for (std::size_t i = 0; i < other.len_; ++i) {
        assign(base + i, other.test(i));
    }
}

void BitVector::require_same_size(const BitVector &other, const char *op) const {
    if (len_ != other.len_) {
        throw DimensionError(std::string(op) + ": length mismatch " + std::to_string(len_) + " vs " +
                             std::to_string(other.len_));
    }
}

BitVector BitVector::operator&(const BitVector &other) const {
    require_same_size(other, "and");
    BitVector out(*this);
    for (std::size_t k = 0; k < words_.size(); ++k) {
        out.words_[k] &= other.words_[k];
    }
    return out;
}

BitVector BitVector::operator|(const BitVector &other) const {
    require_same_size(other, "or");
    BitVector out(*this);
    for (std::size_t k = 0; k < words_.size(); ++k) {
        out.words_[k] |= other.words_[k];
    }
    return out;
}

BitVector BitVector::operator^(const BitVector &other) const {
    require_same_size(other, "xor");
    BitVector out(*this);
    for (std::size_t k = 0; k < words_.size(); ++k) {
        out.words_[k] ^= other.words_[k];
    }
    return out;
}

std::strong_ordering BitVector::operator<=>(const BitVector &other) const {
    if (auto c = len_ <=> other.len_; c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(words_.begin(), words_.end(), other.words_.begin(),
                                                  other.words_.end());
}

std::string BitVector::to_string() const {
    std::string out(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (test(i)) {
            out[i] = '1';
        }
    }
    return out;
}

std::vector<std::uint8_t> BitVector::packed_bytes() const {
    std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
    for (std::size_t b = 0; b < out.size(); ++b) {
        out[b] = static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8)));
    }
    return out;
}

BitVector BitVector::from_packed_bytes(std::span<const std::uint8_t> bytes, std::size_t len) {
    if (bytes.size() != (len + 7) / 8) {
        throw FormatError("packed bit payload has " + std::to_string(bytes.size()) + " bytes, expected " +
                          std::to_string((len + 7) / 8));
    }
    BitVector out(len);
    for (std::size_t b = 0; b < bytes.size(); ++b) {
        out.words_[b / 8] |= static_cast<std::uint64_t>(bytes[b]) << (8 * (b % 8));
    }
    std::uint64_t last = out.words_.empty() ? 0 : out.words_.back();
    out.clear_tail();
    if (!out.words_.empty() && out.words_.back() != last) {
        throw FormatError("nonzero padding bits in packed bit payload");
    }
    return out;
}

void BitVector::append_to(ByteWriter &out) const {
    out.put_u64(len_);
    out.put_bytes(packed_bytes());
}

BitVector BitVector::read_from(ByteReader &in) {
    std::uint64_t len = in.get_u64();
    if (len / 8 > in.remaining()) {
        throw FormatError("bit vector length " + std::to_string(len) + " exceeds payload");
    }
    auto bytes = in.get_bytes(static_cast<std::size_t>((len + 7) / 8));
    return from_packed_bytes(bytes, static_cast<std::size_t>(len));
}

std::size_t hamming(const BitVector &x, const BitVector &y) {
    if (x.size() != y.size()) {
        throw DimensionError("hamming: length mismatch " + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
    }
    std::size_t total = 0;
    auto a = x.words();
    auto b = y.words();
    for (std::size_t k = 0; k < a.size(); ++k) {
        total += static_cast<std::size_t>(std::popcount(a[k] ^ b[k]));
    }
    return total;
}

std::size_t inner_product(const BitVector &x, const BitVector &y) {
    if (x.size() != y.size()) {
        throw DimensionError("inner_product: length mismatch " + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
    }
    std::size_t total = 0;
    auto a = x.words();
    auto b = y.words();
    for (std::size_t k = 0; k < a.size(); ++k) {
        total += static_cast<std::size_t>(std::popcount(a[k] & b[k]));
    }
    return total;
}

std::int64_t hamming_via_identity(std::int64_t nnz_x, std::int64_t nnz_y, std::int64_t ip) {
    if (nnz_x < 0 || nnz_y < 0 || ip < 0) {
        throw InconsistentInputsError("hamming_via_identity: negative input");
    }
    if (ip > std::min(nnz_x, nnz_y)) {
        throw InconsistentInputsError("hamming_via_identity: inner product exceeds min(nnz_x, nnz_y)");
    }
    std::int64_t result = nnz_x + nnz_y - 2 * ip;
    if (result < 0) {
        throw InconsistentInputsError("hamming_via_identity: negative distance");
    }
    return result;
}

__extension__ typedef unsigned __int128 wide_uint;

std::uint64_t RandomStream::next_below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection; exact and portable.
    std::uint64_t x = next_word();
    wide_uint m = static_cast<wide_uint>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = next_word();
            m = static_cast<wide_uint>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

BitVector RandomStream::next_bits(std::size_t len) noexcept {
    BitVector out(len);
    for (auto &w : out.mutable_words()) {
        w = next_word();
    }
    out.clear_tail();
    return out;
}

std::vector<BitVector> derive_public_strings(const SharedRandomness &sr, std::size_t count, std::size_t len) {
    if (count < 1 || len < 1) {
        throw std::invalid_argument("derive_public_strings: count and len must be positive");
    }
    std::size_t per = words_for(len);
    std::vector<BitVector> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        BitVector s(len);
        auto w = s.mutable_words();
        for (std::size_t t = 0; t < per; ++t) {
            w[t] = sr.word(k * per + t);
        }
        s.clear_tail();
        out.push_back(std::move(s));
    }
    return out;
}

IndexingInstance::IndexingInstance(BitVector x, std::size_t index) : x_(std::move(x)), index_(index) {
    if (index_ < 1 || index_ > x_.size()) {
        throw IndexError("indexing instance: index " + std::to_string(index_) + " outside [1, " +
                         std::to_string(x_.size()) + "]");
    }
}

}  // namespace qcomm
