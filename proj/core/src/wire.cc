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

#include "qcomm/wire.h"

#include <bit>
#include <string>

#include "qcomm/errors.h"

namespace qcomm {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t> &out, T v) {
    for (std::size_t k = 0; k < sizeof(T); ++k) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    }
}

}  // namespace

void ByteWriter::put_u8(std::uint8_t v) { bytes_.push_back(v); }
void ByteWriter::put_u32(std::uint32_t v) { put_le(bytes_, v); }
void ByteWriter::put_u64(std::uint64_t v) { put_le(bytes_, v); }
void ByteWriter::put_i64(std::int64_t v) { put_le(bytes_, static_cast<std::uint64_t>(v)); }
void ByteWriter::put_f64(double v) { put_le(bytes_, std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::put_varint(std::uint64_t v) {
    while (v >= 0x80) {
        bytes_.push_back(static_cast<std::uint8_t>(v | 0x80));
        v >>= 7;
    }
    bytes_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> bytes) {
    bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
}

void ByteReader::require(std::size_t count) const {
    if (remaining() < count) {
        throw FormatError(
            "truncated input: need " + std::to_string(count) + " bytes at offset " + std::to_string(pos_) +
            ", have " + std::to_string(remaining()));
    }
}

std::uint8_t ByteReader::get_u8() {
    require(1);
    return bytes_[pos_++];
}

std::uint32_t ByteReader::get_u32() {
    require(4);
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        v |= static_cast<std::uint32_t>(bytes_[pos_ + k]) << (8 * k);
    }
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::get_u64() {
    require(8);
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        v |= static_cast<std::uint64_t>(bytes_[pos_ + k]) << (8 * k);
    }
    pos_ += 8;
    return v;
}

std::int64_t ByteReader::get_i64() { return static_cast<std::int64_t>(get_u64()); }
double ByteReader::get_f64() { return std::bit_cast<double>(get_u64()); }

std::uint64_t ByteReader::get_varint() {
    std::uint64_t v = 0;
    for (unsigned shift = 0; shift < 64; shift += 7) {
        std::uint8_t b = get_u8();
        v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if ((b & 0x80) == 0) {
            return v;
        }
    }
    throw FormatError("varint longer than 10 bytes");
}

std::span<const std::uint8_t> ByteReader::get_bytes(std::size_t count) {
    require(count);
    auto out = bytes_.subspan(pos_, count);
    pos_ += count;
    return out;
}

void ByteReader::expect_done() const {
    if (!done()) {
        throw FormatError(std::to_string(remaining()) + " trailing bytes");
    }
}

}  // namespace qcomm
