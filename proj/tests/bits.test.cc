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

#include <gtest/gtest.h>

#include <set>

#include "qcomm/bits.h"
#include "qcomm/errors.h"
#include "qcomm/wire.h"

using namespace qcomm;

TEST(bit_vector, from_string_positions) {
    auto v = BitVector::from_string("1001");
    ASSERT_EQ(v.size(), 4u);
    ASSERT_TRUE(v.at(1));
    ASSERT_FALSE(v.at(2));
    ASSERT_TRUE(v.at(4));
    ASSERT_EQ(v.nnz(), 2u);
    ASSERT_EQ(v.to_string(), "1001");
    ASSERT_THROW(v.at(0), IndexError);
    ASSERT_THROW(v.at(5), IndexError);
    ASSERT_THROW(BitVector::from_string("10a"), std::invalid_argument);
}

TEST(bit_vector, operators_and_slices) {
    auto a = BitVector::from_string("1100110011");
    auto b = BitVector::from_string("1010101010");
    ASSERT_EQ((a & b).to_string(), "1000100010");
    ASSERT_EQ((a | b).to_string(), "1110111011");
    ASSERT_EQ((a ^ b).to_string(), "0110011001");
    ASSERT_EQ(a.slice(2, 4).to_string(), "0011");
    auto c = a.slice(0, 3);
    c.append(b.slice(7, 3));
    ASSERT_EQ(c.to_string(), "110010");
    ASSERT_THROW(a & BitVector(3), DimensionError);
}

TEST(bit_vector, words_and_long_vectors) {
    SharedRandomness sr(5);
    RandomStream rng(sr);
    for (std::size_t len : {1, 63, 64, 65, 127, 200, 1000}) {
        auto v = rng.next_bits(len);
        std::size_t count = 0;
        std::string s = v.to_string();
        for (char ch : s) {
            count += ch == '1';
        }
        ASSERT_EQ(v.nnz(), count) << len;
        ASSERT_EQ(BitVector::from_string(s), v);
    }
    ASSERT_EQ(BitVector::from_word(5, 4).to_string(), "1010");
    ASSERT_EQ(BitVector::from_string("1010").to_word(), 5u);
    ASSERT_THROW(BitVector(65).to_word(), DimensionError);
}

TEST(bit_vector, serialization_round_trip) {
    RandomStream rng{SharedRandomness(9)};
    for (std::size_t len : {0, 1, 7, 8, 9, 64, 100}) {
        auto v = rng.next_bits(len);
        ByteWriter out;
        v.append_to(out);
        ASSERT_EQ(out.size() * 8, v.serialized_bits());
        ByteReader in(out.bytes());
        ASSERT_EQ(BitVector::read_from(in), v);
        ASSERT_TRUE(in.done());
        ASSERT_EQ(BitVector::from_packed_bytes(v.packed_bytes(), len), v);
    }
    std::vector<std::uint8_t> bad{0xFF};
    ASSERT_THROW(BitVector::from_packed_bytes(bad, 3), FormatError);
}

TEST(bit_vector, lsb_first_packing) {
    auto v = BitVector::from_string("100000001");
    auto bytes = v.packed_bytes();
    ASSERT_EQ(bytes.size(), 2u);
    ASSERT_EQ(bytes[0], 0x01);
    ASSERT_EQ(bytes[1], 0x01);
}

TEST(hamming, brute_force) {
    RandomStream rng{SharedRandomness(11)};
    for (int t = 0; t < 200; ++t) {
        std::size_t len = 1 + rng.next_below(150);
        auto x = rng.next_bits(len);
        auto y = rng.next_bits(len);
        std::size_t diff = 0;
        std::size_t both = 0;
        for (std::size_t k = 0; k < len; ++k) {
            diff += x.test(k) != y.test(k);
            both += x.test(k) && y.test(k);
        }
        ASSERT_EQ(hamming(x, y), diff);
        ASSERT_EQ(inner_product(x, y), both);
        ASSERT_EQ(hamming_via_identity(x.nnz(), y.nnz(), both), static_cast<std::int64_t>(diff));
    }
    ASSERT_THROW(hamming(BitVector(3), BitVector(4)), DimensionError);
    ASSERT_THROW(inner_product(BitVector(3), BitVector(4)), DimensionError);
}

TEST(hamming, identity_rejects_impossible_inputs) {
    ASSERT_THROW(hamming_via_identity(2, 3, 4), InconsistentInputsError);
    ASSERT_THROW(hamming_via_identity(-1, 3, 0), InconsistentInputsError);
    ASSERT_EQ(hamming_via_identity(3, 3, 3), 0);
}

TEST(shared_randomness, deterministic_and_labelled) {
    SharedRandomness a(42);
    SharedRandomness b(42);
    ASSERT_EQ(a.word(17), b.word(17));
    ASSERT_NE(a.word(0), a.word(1));
    ASSERT_NE(SharedRandomness(43).word(0), a.word(0));
    ASSERT_EQ(a.derive(3), b.derive(3));
    ASSERT_FALSE(a.derive(3) == a.derive(4));
    ASSERT_NE(a.derive(3).word(0), a.derive(4).word(0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        seen.insert(a.derive(t).word(0));
    }
    ASSERT_EQ(seen.size(), 1000u);
}

TEST(random_stream, next_below_is_in_range_and_balanced) {
    RandomStream rng{SharedRandomness(3)};
    std::vector<int> counts(7, 0);
    for (int t = 0; t < 70000; ++t) {
        auto v = rng.next_below(7);
        ASSERT_LT(v, 7u);
        ++counts[v];
    }
    for (int c : counts) {
        ASSERT_NEAR(c, 10000, 500);
    }
    double u = rng.next_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
}

TEST(public_strings, shape_and_determinism) {
    SharedRandomness sr(8);
    auto s = derive_public_strings(sr, 20, 70);
    ASSERT_EQ(s.size(), 20u);
    for (const auto &r : s) {
        ASSERT_EQ(r.size(), 70u);
    }
    ASSERT_EQ(s, derive_public_strings(sr, 20, 70));
    ASSERT_NE(s[0], s[1]);
}

TEST(indexing_instance, bounds) {
    auto x = BitVector::from_string("0110");
    IndexingInstance inst(x, 2);
    ASSERT_TRUE(inst.answer());
    ASSERT_FALSE(IndexingInstance(x, 4).answer());
    ASSERT_THROW(IndexingInstance(x, 0), IndexError);
    ASSERT_THROW(IndexingInstance(x, 5), IndexError);
}

TEST(wire, varint_and_truncation) {
    ByteWriter out;
    out.put_varint(0);
    out.put_varint(127);
    out.put_varint(128);
    out.put_varint(~std::uint64_t{0});
    out.put_f64(0.25);
    ByteReader in(out.bytes());
    ASSERT_EQ(in.get_varint(), 0u);
    ASSERT_EQ(in.get_varint(), 127u);
    ASSERT_EQ(in.get_varint(), 128u);
    ASSERT_EQ(in.get_varint(), ~std::uint64_t{0});
    ASSERT_EQ(in.get_f64(), 0.25);
    in.expect_done();
    ASSERT_THROW(in.get_u8(), FormatError);
}
