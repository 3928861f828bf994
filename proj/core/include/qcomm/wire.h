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

/// Little-endian byte sink used by every serializer in the library.
class ByteWriter {
   public:
    void put_u8(std::uint8_t v);
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_i64(std::int64_t v);
    void put_f64(double v);
    /// Unsigned LEB128: 7 payload bits per byte, high bit marks continuation.
    void put_varint(std::uint64_t v);
    void put_bytes(std::span<const std::uint8_t> bytes);

    std::size_t size() const noexcept { return bytes_.size(); }
    const std::vector<std::uint8_t> &bytes() const noexcept { return bytes_; }
    std::vector<std::uint8_t> take() && { return std::move(bytes_); }

   private:
    std::vector<std::uint8_t> bytes_;
};

/// Bounds-checked reader over a byte span; throws FormatError on truncation.
class ByteReader {
   public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t get_u8();
    std::uint32_t get_u32();
    std::uint64_t get_u64();
    std::int64_t get_i64();
    double get_f64();
    std::uint64_t get_varint();
    std::span<const std::uint8_t> get_bytes(std::size_t count);

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    bool done() const noexcept { return pos_ == bytes_.size(); }
    /// Throws FormatError unless every byte was consumed.
    void expect_done() const;

   private:
    void require(std::size_t count) const;

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace qcomm
