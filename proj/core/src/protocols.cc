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

#include "qcomm/protocols.h"

#include <bit>
#include <cmath>
#include <string>

#include "qcomm/errors.h"
#include "qcomm/transform.h"
#include "qcomm/wire.h"

namespace qcomm {

namespace {

constexpr double kObservableScale = 0x1.0p60;
constexpr double kNormScale = 0x1.0p32;
constexpr std::size_t kMaxObservableGeneralQubits = 10;

std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) {
        --r;
    }
    while ((r + 1) * (r + 1) <= v) {
        ++r;
    }
    return r;
}

void require_kind(const ProtocolConfig &cfg, ProtocolKind kind) {
    if (cfg.kind != kind) {
        throw ConfigError("configuration is for " + std::string(protocol_name(cfg.kind)) + ", not " +
                          std::string(protocol_name(kind)));
    }
}

void require_tag(const ProtocolMessage &msg, ProtocolKind kind) {
    if (msg.tag != static_cast<std::uint32_t>(kind)) {
        throw FormatError("message tag " + std::to_string(msg.tag) + " is not " + std::string(protocol_name(kind)));
    }
}

void require_instance(const IndexingInstance &inst, const ProtocolConfig &cfg) {
    if (inst.x().size() != cfg.capacity) {
        throw DimensionError("instance has " + std::to_string(inst.x().size()) + " bits, " +
                             std::string(protocol_name(cfg.kind)) + " carries " + std::to_string(cfg.capacity));
    }
}

void require_l(std::size_t l, const ProtocolConfig &cfg) {
    if (l < 1 || l > cfg.capacity) {
        throw IndexError("query index " + std::to_string(l) + " outside [1, " + std::to_string(cfg.capacity) + "]");
    }
}

ProtocolMessage make_message(ProtocolKind kind, ByteWriter main, ByteWriter side) {
    ProtocolMessage msg;
    msg.tag = static_cast<std::uint32_t>(kind);
    msg.main_bits = 8 * main.size();
    msg.side_bits = 8 * side.size();
    msg.main_payload = std::move(main).take();
    msg.side_info = std::move(side).take();
    return msg;
}

/// Start of the a^j block (j 1-based) in the stacked layout.
std::uint64_t alice_offset(std::size_t j, const ProtocolConfig &cfg) { return (j - 1) * cfg.block_len(); }
/// Start of the b^i block.
std::uint64_t bob_offset(std::size_t i, const ProtocolConfig &cfg) {
    return (cfg.alice_blocks() + i - 1) * cfg.block_len();
}

void push_block(std::vector<ExactState::Entry> &entries, const BitVector &bits, std::uint64_t offset) {
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits.test(k)) {
            entries.push_back({offset + k, 1});
        }
    }
}

std::vector<std::int64_t> read_counts(ByteReader &in, std::size_t count) {
    std::vector<std::int64_t> out(count);
    for (auto &v : out) {
        v = static_cast<std::int64_t>(in.get_varint());
    }
    return out;
}

BitVector bob_block(std::size_t i, const ProtocolConfig &cfg, const SharedRandomness &sr) {
    return encode_bob(i, cfg.ghd, ghd_public_strings(cfg.ghd, sr));
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) noexcept {
    switch (kind) {
        case ProtocolKind::GeneralState:
            return "general-state";
        case ProtocolKind::PauliState:
            return "pauli-state";
        case ProtocolKind::ObservableGeneral:
            return "observable-general";
        case ProtocolKind::ObservablePauli:
            return "observable-pauli";
        case ProtocolKind::InnerProduct:
            return "inner-product";
    }
    return "general-state";
}

ProtocolKind parse_protocol(std::string_view name) {
    for (auto k : kAllProtocols) {
        if (protocol_name(k) == name) {
            return k;
        }
    }
    throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

double default_oracle_slack(ProtocolKind kind) noexcept {
    switch (kind) {
        case ProtocolKind::ObservablePauli:
            return 1;
        case ProtocolKind::InnerProduct:
            return 2;
        default:
            return 4;
    }
}

double epsilon_floor(ProtocolKind kind, std::size_t qubits) {
    double n = static_cast<double>(qubits);
    switch (kind) {
        case ProtocolKind::ObservableGeneral:
            return std::exp2(-n / 2);
        case ProtocolKind::ObservablePauli:
            return std::pow(n, -0.25);
        default:
            return std::exp2(-n / 4);
    }
}

std::size_t block_count(ProtocolKind kind, std::size_t qubits) {
    switch (kind) {
        case ProtocolKind::ObservableGeneral:
            return std::size_t{1} << qubits;
        case ProtocolKind::ObservablePauli:
            return isqrt(qubits);
        default:
            return isqrt(std::uint64_t{1} << qubits);
    }
}

ProtocolConfig ProtocolConfig::make(ProtocolKind kind, std::size_t qubits, double epsilon, double c, double d) {
    if (qubits < 1) {
        throw ConfigError("qubits must be positive");
    }
    std::string name(protocol_name(kind));
    std::size_t limit = 0;
    switch (kind) {
        case ProtocolKind::GeneralState:
        case ProtocolKind::InnerProduct:
            limit = 58;
            break;
        case ProtocolKind::PauliState:
            limit = ExactState::kMaxDenseQubits - 1;
            break;
        case ProtocolKind::ObservableGeneral:
            limit = kMaxObservableGeneralQubits;
            break;
        case ProtocolKind::ObservablePauli:
            limit = std::size_t{1} << 20;
            break;
    }
    if (qubits > limit) {
        throw ConfigError(name + " supports at most " + std::to_string(limit) + " qubits");
    }
    ProtocolConfig cfg;
    cfg.kind = kind;
    cfg.qubits = qubits;
    cfg.ghd = GhdParams::make(epsilon, c, d);
    double lo = epsilon_floor(kind, qubits);
    if (!(epsilon > lo)) {
        throw ConfigError(name + " at n = " + std::to_string(qubits) + " needs epsilon in (" + std::to_string(lo) +
                          ", 1)");
    }
    cfg.q = static_cast<std::size_t>(std::bit_width(cfg.ghd.C - 1));
    cfg.oracle_slack = default_oracle_slack(kind);
    cfg.blocks = block_count(kind, qubits);
    if (cfg.blocks <= cfg.ghd.gamma) {
        throw CapacityError(name + " at n = " + std::to_string(qubits) + " has " + std::to_string(cfg.blocks) +
                            " blocks, gamma = " + std::to_string(cfg.ghd.gamma) + " leaves no room for x");
    }
    cfg.capacity = (cfg.blocks - cfg.ghd.gamma) * cfg.ghd.gamma;
    if (kind == ProtocolKind::PauliState && cfg.capacity > (std::size_t{1} << qubits)) {
        throw CapacityError("pauli-state needs (B - gamma) gamma <= 2^n");
    }
    return cfg;
}

std::size_t ProtocolConfig::message_qubits() const noexcept {
    switch (kind) {
        case ProtocolKind::PauliState:
            return qubits + 1;
        case ProtocolKind::ObservableGeneral:
            return qubits;
        case ProtocolKind::ObservablePauli:
            return observable_pauli_width(*this);
        default:
            return qubits + q;
    }
}

double ProtocolConfig::budget_accuracy() const noexcept {
    double eps = ghd.d / (oracle_slack * ghd.sqrt_n());
    if (kind == ProtocolKind::ObservableGeneral) {
        // Room for the fixed-point rounding of the transmitted matrix.
        eps *= 1 - 1e-9;
    }
    return eps;
}

std::size_t observable_pauli_width(const ProtocolConfig &cfg) noexcept {
    return std::max(cfg.block_len() * cfg.blocks + 1, cfg.qubits + cfg.q + 1);
}

BlockIndex split_index(std::size_t l, std::size_t gamma) {
    if (l < 1 || gamma < 1) {
        throw IndexError("query index must be positive");
    }
    return {(l - 1) / gamma + 1, (l - 1) % gamma + 1};
}

std::size_t join_index(BlockIndex index, std::size_t gamma) {
    if (index.i < 1 || index.i > gamma || index.j < 1) {
        throw IndexError("block index out of range");
    }
    return index.i + (index.j - 1) * gamma;
}

BlockEncoding partition_and_encode(const BitVector &x, const ProtocolConfig &cfg, const SharedRandomness &sr) {
    if (x.size() != cfg.capacity) {
        throw DimensionError("x has " + std::to_string(x.size()) + " bits, expected " + std::to_string(cfg.capacity));
    }
    BlockEncoding out;
    out.strings = ghd_public_strings(cfg.ghd, sr);
    std::size_t g = cfg.gamma();
    out.a_hat.reserve(cfg.alice_blocks());
    for (std::size_t j = 0; j < cfg.alice_blocks(); ++j) {
        out.a_hat.push_back(encode_alice(x.slice(j * g, g), cfg.ghd, out.strings));
    }
    out.b_hat.reserve(g);
    for (std::size_t i = 1; i <= g; ++i) {
        out.b_hat.push_back(encode_bob(i, cfg.ghd, out.strings));
    }
    return out;
}

std::vector<BitVector> bob_strings(const ProtocolConfig &cfg, const SharedRandomness &sr) {
    auto strings = ghd_public_strings(cfg.ghd, sr);
    std::vector<BitVector> out;
    for (std::size_t i = 1; i <= cfg.gamma(); ++i) {
        out.push_back(encode_bob(i, cfg.ghd, strings));
    }
    return out;
}

std::vector<std::uint8_t> ProtocolMessage::serialize() const {
    ByteWriter out;
    out.put_u32(tag);
    out.put_u64(main_bits);
    out.put_u64(side_bits);
    out.put_bytes(main_payload);
    out.put_bytes(side_info);
    return std::move(out).take();
}

ProtocolMessage ProtocolMessage::deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    ProtocolMessage msg;
    msg.tag = in.get_u32();
    msg.main_bits = in.get_u64();
    msg.side_bits = in.get_u64();
    auto main_bytes = (msg.main_bits + 7) / 8;
    auto side_bytes = (msg.side_bits + 7) / 8;
    if (main_bytes > in.remaining() || side_bytes > in.remaining() - main_bytes) {
        throw FormatError("message payloads truncated");
    }
    auto main = in.get_bytes(static_cast<std::size_t>(main_bytes));
    auto side = in.get_bytes(static_cast<std::size_t>(side_bytes));
    in.expect_done();
    msg.main_payload.assign(main.begin(), main.end());
    msg.side_info.assign(side.begin(), side.end());
    return msg;
}

ProtocolMessage general_state_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                    const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::GeneralState);
    require_instance(inst, cfg);
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::vector<ExactState::Entry> entries;
    for (std::size_t j = 1; j <= enc.a_hat.size(); ++j) {
        push_block(entries, enc.a_hat[j - 1], alice_offset(j, cfg));
    }
    for (std::size_t i = 1; i <= enc.b_hat.size(); ++i) {
        push_block(entries, enc.b_hat[i - 1], bob_offset(i, cfg));
    }
    auto state = ExactState::sparse(cfg.message_qubits(), std::move(entries));
    ByteWriter main;
    state.append_to(main);
    ByteWriter side;
    side.put_varint(static_cast<std::uint64_t>(state.norm_sq()));
    for (const auto &a : enc.a_hat) {
        side.put_varint(a.nnz());
        side.put_varint(a.nnz());
    }
    return make_message(ProtocolKind::GeneralState, std::move(main), std::move(side));
}

BobQuery general_state_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                             const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::GeneralState);
    require_tag(msg, ProtocolKind::GeneralState);
    require_l(l, cfg);
    auto state = message_state(msg);
    if (state.qubits() != cfg.message_qubits()) {
        throw FormatError("general-state message has the wrong qubit count");
    }
    ByteReader side(msg.side_info);
    auto D = static_cast<std::int64_t>(side.get_varint());
    std::vector<std::int64_t> nnz(cfg.alice_blocks());
    for (auto &v : nnz) {
        v = static_cast<std::int64_t>(side.get_varint());
        side.get_varint();
    }
    side.expect_done();
    if (D != state.norm_sq()) {
        throw FormatError("side-info D disagrees with the state norm");
    }
    auto [j, i] = split_index(l, cfg.gamma());
    auto b = bob_block(i, cfg, sr);
    wide_int S = 0;
    for (const auto &row : general_state_measurement(l, cfg).rows) {
        wide_int s = 0;
        for (auto col : row) {
            s += state.numerator(col);
        }
        S += s * s;
    }
    BobQuery q;
    q.target.exact = Rational::from_wide(S, 2 * static_cast<wide_int>(D));
    q.target.value = q.target.exact->to_double();
    q.offset = 2.0 * static_cast<double>(nnz[j - 1]) + 2.0 * static_cast<double>(b.nnz());
    q.slope = -2.0 * static_cast<double>(D);
    return q;
}

MeasurementRows general_state_measurement(std::size_t l, const ProtocolConfig &cfg) {
    require_kind(cfg, ProtocolKind::GeneralState);
    require_l(l, cfg);
    auto [j, i] = split_index(l, cfg.gamma());
    MeasurementRows m;
    m.qubits = cfg.message_qubits();
    m.scale = 1 / std::sqrt(2.0);
    m.rows.reserve(cfg.block_len());
    for (std::size_t k = 0; k < cfg.block_len(); ++k) {
        m.rows.push_back({alice_offset(j, cfg) + k, bob_offset(i, cfg) + k});
    }
    return m;
}

ProtocolMessage pauli_state_alice(const IndexingInstance &inst, const ProtocolConfig &cfg, const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::PauliState);
    require_instance(inst, cfg);
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::size_t dim = std::size_t{1} << cfg.qubits;
    std::vector<std::int64_t> stacked(dim, 0);
    for (std::size_t j = 1; j <= enc.a_hat.size(); ++j) {
        const auto &a = enc.a_hat[j - 1];
        for (std::size_t i = 1; i <= cfg.gamma(); ++i) {
            const auto &b = enc.b_hat[i - 1];
            stacked[join_index({j, i}, cfg.gamma()) - 1] =
                static_cast<std::int64_t>(a.nnz() + b.nnz() + 2 * inner_product(a, b));
        }
    }
    auto w = fwht_apply(stacked);
    w.resize(2 * dim, static_cast<std::int64_t>(dim));
    auto state = ExactState::dense(cfg.qubits + 1, std::move(w));
    ByteWriter main;
    state.append_to(main);
    ByteWriter side;
    side.put_varint(static_cast<std::uint64_t>(state.norm_sq()));
    for (const auto &a : enc.a_hat) {
        side.put_varint(a.nnz());
    }
    return make_message(ProtocolKind::PauliState, std::move(main), std::move(side));
}

BobQuery pauli_state_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                           const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::PauliState);
    require_tag(msg, ProtocolKind::PauliState);
    require_l(l, cfg);
    auto state = message_state(msg);
    if (state.qubits() != cfg.message_qubits()) {
        throw FormatError("pauli-state message has the wrong qubit count");
    }
    ByteReader side(msg.side_info);
    auto norm_sq = static_cast<std::int64_t>(side.get_varint());
    auto nnz = read_counts(side, cfg.alice_blocks());
    side.expect_done();
    if (norm_sq != state.norm_sq()) {
        throw FormatError("side-info norm disagrees with the state");
    }
    auto [j, i] = split_index(l, cfg.gamma());
    auto b = bob_block(i, cfg, sr);
    std::size_t n = cfg.qubits;
    BitVector z = BitVector::from_word(l - 1, n + 1);
    BitVector x(n + 1);
    x.assign(n, true);
    BobQuery q;
    q.target.exact = expectation(state, PauliMask(std::move(z), std::move(x)));
    q.target.value = q.target.exact->to_double();
    q.offset = 2.0 * static_cast<double>(nnz[j - 1]) + 2.0 * static_cast<double>(b.nnz());
    q.slope = -static_cast<double>(norm_sq) / (2 * std::exp2(2.0 * static_cast<double>(n)));
    return q;
}

ProtocolMessage observable_general_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                         const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::ObservableGeneral);
    require_instance(inst, cfg);
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::size_t dim = std::size_t{1} << cfg.qubits;
    std::vector<const BitVector *> cols;
    cols.reserve(dim);
    for (const auto &a : enc.a_hat) {
        cols.push_back(&a);
    }
    for (const auto &b : enc.b_hat) {
        cols.push_back(&b);
    }
    std::vector<double> gram(dim * dim);
    for (std::size_t u = 0; u < dim; ++u) {
        for (std::size_t v = u; v < dim; ++v) {
            double g = static_cast<double>(inner_product(*cols[u], *cols[v]));
            gram[u * dim + v] = g;
            gram[v * dim + u] = g;
        }
    }
    DenseObservable mtm(cfg.qubits, std::move(gram));
    double lambda = operator_norm(mtm);
    auto lambda_q = static_cast<std::uint64_t>(std::llround(lambda * kNormScale));
    double lambda_t = static_cast<double>(lambda_q) / kNormScale;

    ByteWriter main;
    main.put_u32(static_cast<std::uint32_t>(cfg.qubits));
    for (double g : mtm.entries()) {
        double o = lambda_q == 0 ? g : g / lambda_t;
        main.put_i64(std::llround(o * kObservableScale));
    }
    ByteWriter side;
    side.put_u64(lambda_q);
    for (const auto &a : enc.a_hat) {
        side.put_varint(a.nnz());
    }
    return make_message(ProtocolKind::ObservableGeneral, std::move(main), std::move(side));
}

ExactState observable_general_probe(std::size_t l, const ProtocolConfig &cfg) {
    require_kind(cfg, ProtocolKind::ObservableGeneral);
    require_l(l, cfg);
    auto [j, i] = split_index(l, cfg.gamma());
    std::uint64_t dim = std::uint64_t{1} << cfg.qubits;
    return ExactState::sparse(cfg.qubits, {{j - 1, 1}, {dim - cfg.gamma() + i - 1, 1}});
}

BobQuery observable_general_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                                  const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::ObservableGeneral);
    require_tag(msg, ProtocolKind::ObservableGeneral);
    require_l(l, cfg);
    auto obs = message_observable(msg);
    if (obs.qubits() != cfg.qubits) {
        throw FormatError("observable-general message has the wrong qubit count");
    }
    ByteReader side(msg.side_info);
    double lambda_t = static_cast<double>(side.get_u64()) / kNormScale;
    auto nnz = read_counts(side, cfg.alice_blocks());
    side.expect_done();
    auto [j, i] = split_index(l, cfg.gamma());
    auto b = bob_block(i, cfg, sr);
    std::size_t ca = j - 1;
    std::size_t cb = obs.dimension() - cfg.gamma() + i - 1;
    BobQuery q;
    q.target.value = (obs.at(ca, ca) + obs.at(cb, cb) + 2 * obs.at(ca, cb)) / 2;
    q.offset = 2.0 * static_cast<double>(nnz[j - 1]) + 2.0 * static_cast<double>(b.nnz());
    q.slope = -2 * lambda_t;
    return q;
}

ProtocolMessage observable_pauli_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                       const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::ObservablePauli);
    require_instance(inst, cfg);
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::size_t width = observable_pauli_width(cfg);
    BitVector z(width);
    auto place = [&](const BitVector &bits, std::uint64_t offset) {
        for (std::size_t k = 0; k < bits.size(); ++k) {
            z.assign(offset + k, bits.test(k));
        }
    };
    for (std::size_t j = 1; j <= enc.a_hat.size(); ++j) {
        place(enc.a_hat[j - 1], alice_offset(j, cfg));
    }
    for (std::size_t i = 1; i <= enc.b_hat.size(); ++i) {
        place(enc.b_hat[i - 1], bob_offset(i, cfg));
    }
    z.assign(width - 1, true);
    ProtocolMessage msg;
    msg.tag = static_cast<std::uint32_t>(ProtocolKind::ObservablePauli);
    msg.main_payload = z.packed_bytes();
    msg.main_bits = width;
    ByteWriter side;
    side.put_varint(cfg.block_len());
    msg.side_info = std::move(side).take();
    msg.side_bits = 8 * msg.side_info.size();
    return msg;
}

std::vector<WeightedPoint> observable_pauli_probe(std::size_t l, const ProtocolConfig &cfg) {
    require_kind(cfg, ProtocolKind::ObservablePauli);
    require_l(l, cfg);
    auto [j, i] = split_index(l, cfg.gamma());
    std::size_t width = observable_pauli_width(cfg);
    std::vector<WeightedPoint> support;
    support.reserve(cfg.block_len() + 1);
    for (std::size_t k = 0; k < cfg.block_len(); ++k) {
        BitVector s(width);
        s.assign(alice_offset(j, cfg) + k, true);
        s.assign(bob_offset(i, cfg) + k, true);
        support.push_back({std::move(s), 1});
    }
    BitVector anc(width);
    anc.assign(width - 1, true);
    support.push_back({std::move(anc), static_cast<std::int64_t>(cfg.block_len())});
    return support;
}

BobQuery observable_pauli_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                                const SharedRandomness &) {
    require_kind(cfg, ProtocolKind::ObservablePauli);
    require_tag(msg, ProtocolKind::ObservablePauli);
    require_l(l, cfg);
    auto pauli = message_pauli(msg, cfg);
    ByteReader side(msg.side_info);
    auto len = static_cast<std::int64_t>(side.get_varint());
    side.expect_done();
    if (len != static_cast<std::int64_t>(cfg.block_len())) {
        throw FormatError("side-info block length disagrees with the configuration");
    }
    auto probe = observable_pauli_probe(l, cfg);
    BobQuery q;
    q.target.exact = weighted_subset_expectation(pauli.z_mask(), probe, 2 * len);
    q.target.value = q.target.exact->to_double();
    q.offset = 0;
    q.slope = -static_cast<double>(len);
    return q;
}

ProtocolMessage inner_product_alice(const IndexingInstance &inst, const ProtocolConfig &cfg,
                                    const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::InnerProduct);
    require_instance(inst, cfg);
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::vector<ExactState::Entry> entries;
    std::uint64_t D = 0;
    for (std::size_t j = 1; j <= enc.a_hat.size(); ++j) {
        push_block(entries, enc.a_hat[j - 1], alice_offset(j, cfg));
        D += enc.a_hat[j - 1].nnz();
    }
    ByteWriter main;
    if (D > 0) {
        ExactState::sparse(cfg.message_qubits(), std::move(entries)).append_to(main);
    }
    ByteWriter side;
    side.put_varint(D);
    for (const auto &a : enc.a_hat) {
        side.put_varint(a.nnz());
    }
    return make_message(ProtocolKind::InnerProduct, std::move(main), std::move(side));
}

std::optional<ExactState> inner_product_probe(std::size_t l, const ProtocolConfig &cfg, const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::InnerProduct);
    require_l(l, cfg);
    auto [j, i] = split_index(l, cfg.gamma());
    auto b = bob_block(i, cfg, sr);
    if (!b.any()) {
        return std::nullopt;
    }
    std::vector<ExactState::Entry> entries;
    push_block(entries, b, alice_offset(j, cfg));
    return ExactState::sparse(cfg.message_qubits(), std::move(entries));
}

BobQuery inner_product_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                             const SharedRandomness &sr) {
    require_kind(cfg, ProtocolKind::InnerProduct);
    require_tag(msg, ProtocolKind::InnerProduct);
    require_l(l, cfg);
    ByteReader side(msg.side_info);
    auto D = static_cast<std::int64_t>(side.get_varint());
    auto nnz = read_counts(side, cfg.alice_blocks());
    side.expect_done();
    auto [j, i] = split_index(l, cfg.gamma());
    auto b = bob_block(i, cfg, sr);
    auto Dp = static_cast<std::int64_t>(b.nnz());
    BobQuery q;
    q.offset = static_cast<double>(nnz[j - 1]) + static_cast<double>(Dp);
    if (D == 0 || Dp == 0) {
        if (!msg.main_payload.empty() && D == 0) {
            throw FormatError("inner-product message carries a state with D = 0");
        }
        q.target.value = 0;
        q.target.exact_square = Rational(0);
        q.slope = 0;
        return q;
    }
    auto psi = message_state(msg);
    if (psi.qubits() != cfg.message_qubits() || psi.norm_sq() != D) {
        throw FormatError("inner-product state disagrees with the configuration or side info");
    }
    auto phi = inner_product_probe(l, cfg, sr);
    std::int64_t ip = overlap_numerator(psi, *phi);
    double root = std::sqrt(static_cast<double>(D) * static_cast<double>(Dp));
    q.target.value = static_cast<double>(ip) / root;
    q.target.exact_square =
        Rational::from_wide(static_cast<wide_int>(ip) * ip, static_cast<wide_int>(D) * Dp);
    q.slope = -2 * root;
    return q;
}

ProtocolMessage alice_encode(const IndexingInstance &inst, const ProtocolConfig &cfg, const SharedRandomness &sr) {
    switch (cfg.kind) {
        case ProtocolKind::GeneralState:
            return general_state_alice(inst, cfg, sr);
        case ProtocolKind::PauliState:
            return pauli_state_alice(inst, cfg, sr);
        case ProtocolKind::ObservableGeneral:
            return observable_general_alice(inst, cfg, sr);
        case ProtocolKind::ObservablePauli:
            return observable_pauli_alice(inst, cfg, sr);
        case ProtocolKind::InnerProduct:
            return inner_product_alice(inst, cfg, sr);
    }
    throw ConfigError("unknown protocol kind");
}

BobQuery bob_query(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg, const SharedRandomness &sr) {
    switch (cfg.kind) {
        case ProtocolKind::GeneralState:
            return general_state_query(msg, l, cfg, sr);
        case ProtocolKind::PauliState:
            return pauli_state_query(msg, l, cfg, sr);
        case ProtocolKind::ObservableGeneral:
            return observable_general_query(msg, l, cfg, sr);
        case ProtocolKind::ObservablePauli:
            return observable_pauli_query(msg, l, cfg, sr);
        case ProtocolKind::InnerProduct:
            return inner_product_query(msg, l, cfg, sr);
    }
    throw ConfigError("unknown protocol kind");
}

BobOutcome bob_answer(const BobQuery &query, const ProtocolConfig &cfg, const OracleSpec &oracle) {
    BobOutcome out;
    out.target = query.target.value;
    out.delta_exact = query.delta_from(query.target.value);
    PushHint hint = PushHint::None;
    if (query.slope != 0) {
        // Delta falls as the estimate rises.
        bool above = out.delta_exact >= cfg.ghd.threshold();
        hint = (above == (query.slope < 0)) ? PushHint::Up : PushHint::Down;
    }
    auto draw = estimate(query.target.value, oracle, hint);
    out.estimate = draw.value;
    out.oracle_failed = draw.failed;
    out.delta_estimate = query.delta_from(draw.value);
    out.bit = decode_bit(out.delta_estimate, cfg.ghd);
    return out;
}

BobOutcome bob_decode(const ProtocolMessage &msg, std::size_t l, const ProtocolConfig &cfg,
                      const SharedRandomness &sr, const OracleSpec &oracle) {
    return bob_answer(bob_query(msg, l, cfg, sr), cfg, oracle);
}

ExactState message_state(const ProtocolMessage &msg) {
    ByteReader in(msg.main_payload);
    auto state = ExactState::read_from(in);
    in.expect_done();
    return state;
}

DenseObservable message_observable(const ProtocolMessage &msg) {
    ByteReader in(msg.main_payload);
    std::size_t n = in.get_u32();
    if (n > kMaxObservableGeneralQubits) {
        throw FormatError("observable message with too many qubits");
    }
    std::size_t dim = std::size_t{1} << n;
    std::vector<double> entries(dim * dim);
    for (auto &e : entries) {
        e = static_cast<double>(in.get_i64()) / kObservableScale;
    }
    in.expect_done();
    return DenseObservable(n, std::move(entries));
}

PauliMask message_pauli(const ProtocolMessage &msg, const ProtocolConfig &cfg) {
    std::size_t width = observable_pauli_width(cfg);
    if (msg.main_bits != width) {
        throw FormatError("observable-pauli message has " + std::to_string(msg.main_bits) + " bits, expected " +
                          std::to_string(width));
    }
    return PauliMask::diagonal(BitVector::from_packed_bytes(msg.main_payload, width));
}

}  // namespace qcomm
