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
 * The five one-way reductions from Indexing to expectation estimation.
 *
 * Every protocol splits x (length N' = (B - gamma) gamma) into B - gamma
 * blocks of gamma bits, Gap-Hamming encodes each block into a^j of length
 * C gamma, and lets Bob derive b^1..b^gamma from the public strings. Bob
 * asks an oracle for one number, turns it into an estimate of
 * Delta(a^j, b^i) with an affine map, and thresholds.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcomm/bits.h"
#include "qcomm/dense_observable.h"
#include "qcomm/exact_state.h"
#include "qcomm/ghd.h"
#include "qcomm/oracle.h"
#include "qcomm/pauli.h"
#include "qcomm/rational.h"

namespace qcomm {

enum class ProtocolKind : std::uint32_t {
    GeneralState = 1,
    PauliState = 2,
    ObservableGeneral = 3,
    ObservablePauli = 4,
    InnerProduct = 5,
};

inline constexpr std::uint32_t kShadowMessageTag = 6;

inline constexpr ProtocolKind kAllProtocols[] = {
    ProtocolKind::GeneralState,      ProtocolKind::PauliState,   ProtocolKind::ObservableGeneral,
    ProtocolKind::ObservablePauli,   ProtocolKind::InnerProduct,
};

std::string_view protocol_name(ProtocolKind kind) noexcept;
/// "general-state", "pauli-state", "observable-general", "observable-pauli", "inner-product".
ProtocolKind parse_protocol(std::string_view name);

/// Accuracy-budget divisor: the relative error ||a + b||^2 style targets can
/// absorb before Delta moves by d sqrt(C gamma).
double default_oracle_slack(ProtocolKind kind) noexcept;

struct ProtocolConfig {
    ProtocolKind kind = ProtocolKind::GeneralState;
    std::size_t qubits = 0;
    GhdParams ghd;
    std::size_t q = 0;  // ceil(log2 C)
    double oracle_slack = 4;
    std::size_t blocks = 0;  // B
    std::size_t capacity = 0;  // N' = (B - gamma) gamma

    /// ConfigError outside the protocol's epsilon interval or qubit range,
    /// CapacityError when fewer than gamma + 1 blocks fit.
    static ProtocolConfig make(ProtocolKind kind, std::size_t qubits, double epsilon,
                               double c = kDefaultMajorityBias, double d = kDefaultAdditiveSlack);

    std::size_t gamma() const noexcept { return ghd.gamma; }
    std::size_t block_len() const noexcept { return ghd.N; }
    std::size_t alice_blocks() const noexcept { return blocks - ghd.gamma; }
    /// Qubits of the state or observable Alice transmits.
    std::size_t message_qubits() const noexcept;
    /// Relative accuracy at which Bob's Delta estimate stays within d sqrt(C gamma).
    double budget_accuracy() const noexcept;
};

/// Lower end of the open epsilon interval for (kind, qubits).
double epsilon_floor(ProtocolKind kind, std::size_t qubits);
/// B for (kind, qubits).
std::size_t block_count(ProtocolKind kind, std::size_t qubits);

struct BlockIndex {
    std::size_t j;  // block of x, 1-based
    std::size_t i;  // position inside the block, 1-based
};

/// l = i + (j - 1) gamma.
BlockIndex split_index(std::size_t l, std::size_t gamma);
std::size_t join_index(BlockIndex index, std::size_t gamma);

struct BlockEncoding {
    PublicStrings strings;
    std::vector<BitVector> a_hat;  // B - gamma strings of length C gamma
    std::vector<BitVector> b_hat;  // gamma strings of length C gamma
};

/// x of length N' split into blocks and GHD-encoded. DimensionError on a length mismatch.
BlockEncoding partition_and_encode(const BitVector &x, const ProtocolConfig &cfg, const SharedRandomness &sr);
/// Bob's half alone; needs only the public strings.
std::vector<BitVector> bob_strings(const ProtocolConfig &cfg, const SharedRandomness &sr);

/**
 * One-way message. Wire form: u32 tag, u64 main bit count, u64 side bit
 * count, then ceil(bits / 8) bytes of each payload.
 */
struct ProtocolMessage {
    std::uint32_t tag = 0;
    std::vector<std::uint8_t> main_payload;
    std::vector<std::uint8_t> side_info;
    std::uint64_t main_bits = 0;
    std::uint64_t side_bits = 0;

    std::uint64_t total_bits() const noexcept { return main_bits + side_bits; }
    std::vector<std::uint8_t> serialize() const;
    /// FormatError unless payload sizes agree with the bit counts.
    static ProtocolMessage deserialize(std::span<const std::uint8_t> bytes);

    bool operator==(const ProtocolMessage &other) const = default;
};

/// What Bob evaluates: value is <psi|M|psi> (or the overlap). exact holds it
/// as a fraction whenever it is rational; exact_square holds value^2 when
/// only the square is.
struct TargetValue {
    double value = 0;
    std::optional<Rational> exact;
    std::optional<Rational> exact_square;
};

/// Bob's view of a query: the target and the affine map
/// Delta_hat = offset + slope * E from an estimate E of it.
struct BobQuery {
    TargetValue target;
    double offset = 0;
    double slope = 0;

    double delta_from(double estimate) const noexcept { return offset + slope * estimate; }
};

struct BobOutcome {
    int bit = 0;
    double target = 0;
    double estimate = 0;
    double delta_estimate = 0;
    /// Delta implied by the exact target.
    double delta_exact = 0;
    bool oracle_failed = false;
};

ProtocolMessage general_state_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                    const SharedRandomness &sr);
ProtocolMessage pauli_state_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                  const SharedRandomness &sr);
ProtocolMessage observable_general_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                         const SharedRandomness &sr);
ProtocolMessage observable_pauli_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                       const SharedRandomness &sr);
ProtocolMessage inner_product_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                    const SharedRandomness &sr);

BobQuery general_state_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                             const SharedRandomness &sr);
BobQuery pauli_state_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                           const SharedRandomness &sr);
BobQuery observable_general_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                                  const SharedRandomness &sr);
BobQuery observable_pauli_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                                const SharedRandomness &sr);
BobQuery inner_product_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                             const SharedRandomness &sr);

/// Dispatch on cfg.kind.
ProtocolMessage alice_encode(const IndexingInstance &inst, const ProtocolConfig &cfg, const SharedRandomness &sr);
BobQuery bob_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg, const SharedRandomness &sr);

/// Queries the oracle (adversarial draws push Delta toward the threshold)
/// and decodes. A failed oracle draw still produces a bit.
BobOutcome bob_decode(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                      const SharedRandomness &sr, const OracleSpec &oracle);
BobOutcome bob_answer(const BobQuery &query, const ProtocolConfig &cfg, const OracleSpec &oracle);

/// Objects Alice's message decodes to, for inspection and dense cross-checks.
ExactState message_state(const ProtocolMessage &msg);
DenseObservable message_observable(const ProtocolMessage &msg);
PauliMask message_pauli(const ProtocolMessage &msg, const ProtocolConfig &cfg);

/// M_l for the general-state protocol: row k is (e_{ja + k} + e_{ib + k}) * scale,
/// with ja, ib the starts of blocks a^j and b^i and scale = 1/sqrt(2).
struct MeasurementRows {
    std::size_t qubits = 0;
    double scale = 0;
    std::vector<std::vector<std::uint64_t>> rows;
};

MeasurementRows general_state_measurement(std::size_t l, const ProtocolConfig &cfg);

/// Bob's probe in the observable protocols and the inner-product protocol.
ExactState observable_general_probe(std::size_t l, const ProtocolConfig &cfg);
std::vector<WeightedPoint> observable_pauli_probe(std::size_t l, const ProtocolConfig &cfg);
/// nullopt when b^i is all zeros.
std::optional<ExactState> inner_product_probe(std::size_t l, const ProtocolConfig &cfg, const SharedRandomness &sr);

/// Width of the Z string in the observable-pauli protocol.
std::size_t observable_pauli_width(const ProtocolConfig &cfg) noexcept;

}  // namespace qcomm
