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
 * Packed bit vectors, Hamming arithmetic, indexing instances and the
 * counter-based shared randomness every reduction draws from.
 *
 * Index convention: positions handed in by callers (`at`, `set_at`,
 * IndexingInstance::index, protocol indices) are 1-based. Everything
 * named `test`/`assign` or taking a `std::uint64_t` offset is 0-based.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcomm {

class ByteReader;
class ByteWriter;

class BitVector {
   public:
    BitVector() = default;
    /// All-zero vector of `len` bits.
    explicit BitVector(std::size_t len);

    /// Parses '0'/'1' characters; the first character is position 1.
    static BitVector from_string(std::string_view bits);

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }

    /// 1-based, range checked (IndexError).
    bool at(std::size_t position) const;
    void set_at(std::size_t position, bool value);

    /// 0-based, unchecked.
    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
    void assign(std::size_t i, bool value) noexcept {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }

    std::size_t nnz() const noexcept;
    bool any() const noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    /// Callers writing whole words must call clear_tail() afterwards.
    std::span<std::uint64_t> mutable_words() noexcept { return words_; }
    void clear_tail() noexcept;

    /// Low 64 bits as an integer; DimensionError if size() > 64.
    std::uint64_t to_word() const;
    static BitVector from_word(std::uint64_t bits, std::size_t len);

    BitVector slice(std::size_t start, std::size_t len) const;
    void append(const BitVector &other);

    BitVector operator&(const BitVector &other) const;
    BitVector operator|(const BitVector &other) const;
    BitVector operator^(const BitVector &other) const;

    bool operator==(const BitVector &other) const = default;
    std::strong_ordering operator<=>(const BitVector &other) const;

    std::string to_string() const;

    /// 64-bit little-endian length, then ceil(len/8) bytes, LSB-first per byte.
    void append_to(ByteWriter &out) const;
    static BitVector read_from(ByteReader &in);
    std::size_t serialized_bits() const noexcept { return 64 + 8 * ((len_ + 7) / 8); }

    /// Packed bytes alone (no length prefix), LSB-first per byte.
    std::vector<std::uint8_t> packed_bytes() const;
    static BitVector from_packed_bytes(std::span<const std::uint8_t> bytes, std::size_t len);

   private:
    void require_same_size(const BitVector &other, const char *op) const;

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of positions where x and y differ. DimensionError on length mismatch.
std::size_t hamming(const BitVector &x, const BitVector &y);

/// Standard inner product <x, y> over the integers.
std::size_t inner_product(const BitVector &x, const BitVector &y);

/// nnz(x) + nnz(y) - 2<x, y>; InconsistentInputsError when the inputs
/// cannot describe two real bit strings.
std::int64_t hamming_via_identity(std::int64_t nnz_x, std::int64_t nnz_y, std::int64_t ip);

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * Public-coin randomness keyed by (root seed, stream id).
 *
 * Word k of a stream is a pure function of (root, stream, k), so two
 * parties that agree on labels read identical bits without coordination,
 * and trials can run on any thread in any order.
 */
class SharedRandomness {
   public:
    explicit SharedRandomness(std::uint64_t root_seed, std::uint64_t stream_id = 0) noexcept
        : root_seed_(root_seed), stream_id_(stream_id), key_(mix64(root_seed ^ mix64(stream_id ^ kStreamSalt))) {}

    std::uint64_t root_seed() const noexcept { return root_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Child stream labelled `label`; distinct labels give unrelated streams.
    SharedRandomness derive(std::uint64_t label) const noexcept {
        return SharedRandomness(root_seed_, mix64(stream_id_ * 0xD1B54A32D192ED03ULL + mix64(label)));
    }

    std::uint64_t word(std::uint64_t counter) const noexcept {
        return mix64(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    }
    bool bit(std::uint64_t position) const noexcept { return (word(position >> 6) >> (position & 63)) & 1; }

    bool operator==(const SharedRandomness &other) const noexcept {
        return root_seed_ == other.root_seed_ && stream_id_ == other.stream_id_;
    }

   private:
    static constexpr std::uint64_t kStreamSalt = 0x5851F42D4C957F2DULL;

    std::uint64_t root_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
};

/// Sequential cursor over a SharedRandomness stream. Satisfies
/// UniformRandomBitGenerator, but the helpers below are preferred since
/// their output does not depend on the standard library implementation.
class RandomStream {
   public:
    using result_type = std::uint64_t;

    explicit RandomStream(SharedRandomness source, std::uint64_t start = 0) noexcept
        : source_(source), counter_(start) {}

    std::uint64_t next_word() noexcept { return source_.word(counter_++); }
    /// 53-bit uniform double in [0, 1).
    double next_unit() noexcept { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) noexcept;
    bool next_bit() noexcept { return next_word() & 1; }
    BitVector next_bits(std::size_t len) noexcept;

    std::uint64_t position() const noexcept { return counter_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept { return next_word(); }

   private:
    SharedRandomness source_;
    std::uint64_t counter_;
};

/// `count` strings of `len` bits each, deterministic in (sr, count, len).
std::vector<BitVector> derive_public_strings(const SharedRandomness &sr, std::size_t count, std::size_t len);

/// Alice holds x, Bob holds a 1-based index into it.
class IndexingInstance {
   public:
    IndexingInstance(BitVector x, std::size_t index);

    const BitVector &x() const noexcept { return x_; }
    std::size_t index() const noexcept { return index_; }
    bool answer() const { return x_.at(index_); }

   private:
    BitVector x_;
    std::size_t index_;
};

}  // namespace qcomm
