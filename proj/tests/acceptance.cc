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

#include <Eigen/Dense>
#include <bit>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qcomm/harness.h"
#include "qcomm/shadows.h"

using namespace qcomm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

ExperimentConfig acceptance_run(ProtocolKind kind, std::size_t qubits, OracleModel oracle) {
    ExperimentConfig cfg;
    cfg.protocol = kind;
    cfg.qubits = qubits;
    cfg.epsilon = 0.3;
    cfg.oracle = oracle;
    cfg.trials = 2000;
    cfg.seed = 7;
    cfg.sampling = SamplingMode::OddWeight;
    return cfg;
}

struct EndToEnd {
    ProtocolKind kind;
    std::size_t qubits;
};

const EndToEnd kEndToEnd[] = {
    {ProtocolKind::PauliState, 12},        {ProtocolKind::GeneralState, 12}, {ProtocolKind::ObservablePauli, 256},
    {ProtocolKind::ObservableGeneral, 8},  {ProtocolKind::InnerProduct, 12},
};

// ---------------------------------------------------------------------------
// 1

Outcome exact_algebra() {
    auto start = Clock::now();
    VerifyOptions opts;
    opts.max_qubits = 8;
    auto report = verify_suite(opts);
    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = report.passed() && elapsed < 60;
    std::string failed;
    for (const auto &c : report.checks) {
        if (!c.passed) {
            failed += " " + c.name;
        }
    }
    out.detail = fmt("%zu checks, %.1f s", report.checks.size(), elapsed);
    if (!failed.empty()) {
        out.detail += ", failed:" + failed;
    }
    return out;
}

// ---------------------------------------------------------------------------
// 2

struct Stacked {
    std::vector<BitVector> blocks;  // a^1..a^{B-gamma}, b^1..b^gamma
};

Stacked stacked_blocks(const BlockEncoding &enc) {
    Stacked s;
    s.blocks = enc.a_hat;
    s.blocks.insert(s.blocks.end(), enc.b_hat.begin(), enc.b_hat.end());
    return s;
}

// psi numerators with block u at [u N, (u + 1) N).
std::vector<std::int64_t> dense_stacked_state(const Stacked &s, std::size_t qubits, std::size_t len) {
    std::vector<std::int64_t> psi(std::size_t{1} << qubits, 0);
    for (std::size_t u = 0; u < s.blocks.size(); ++u) {
        for (std::size_t k = 0; k < len; ++k) {
            psi[u * len + k] = s.blocks[u].test(k);
        }
    }
    return psi;
}

std::int64_t popsign(std::uint64_t v) { return std::popcount(v) % 2 ? -1 : 1; }

bool check_general_state(const ProtocolConfig &cfg, const IndexingInstance &inst, const SharedRandomness &sr,
                         std::string &why) {
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    auto psi = dense_stacked_state(stacked_blocks(enc), cfg.message_qubits(), cfg.block_len());
    auto msg = alice_encode(inst, cfg, sr);
    auto state = message_state(msg);
    std::int64_t D = 0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        D += psi[k] * psi[k];
        if (state.numerator(k) != psi[k]) {
            why = "message state differs from the stacked blocks";
            return false;
        }
    }
    std::size_t l = inst.index();
    std::size_t j = (l - 1) / cfg.gamma() + 1;
    std::size_t i = (l - 1) % cfg.gamma() + 1;
    // Dense M_l: row k picks entries of block a^j and block b^i.
    std::size_t dim = psi.size();
    std::int64_t s = 0;
    for (std::size_t k = 0; k < cfg.block_len(); ++k) {
        std::int64_t row = 0;
        for (std::size_t col = 0; col < dim; ++col) {
            bool hit = col == (j - 1) * cfg.block_len() + k || col == (cfg.alice_blocks() + i - 1) * cfg.block_len() + k;
            row += hit ? psi[col] : 0;
        }
        s += row * row;
    }
    auto q = bob_query(msg, l, cfg, sr);
    if (!q.target.exact || *q.target.exact != Rational(s, 2 * D)) {
        why = "target " + (q.target.exact ? q.target.exact->to_string() : "none") + " != " + Rational(s, 2 * D).to_string();
        return false;
    }
    return true;
}

bool check_pauli_state(const ProtocolConfig &cfg, const IndexingInstance &inst, const SharedRandomness &sr,
                       std::string &why) {
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::size_t n = cfg.qubits;
    std::size_t dim = std::size_t{1} << n;
    std::vector<std::int64_t> stacked(dim, 0);
    for (std::size_t j = 0; j < enc.a_hat.size(); ++j) {
        for (std::size_t i = 0; i < enc.b_hat.size(); ++i) {
            std::int64_t ip = 0;
            for (std::size_t k = 0; k < cfg.block_len(); ++k) {
                ip += enc.a_hat[j].test(k) & enc.b_hat[i].test(k);
            }
            stacked[j * cfg.gamma() + i] = static_cast<std::int64_t>(enc.a_hat[j].nnz() + enc.b_hat[i].nnz()) + 2 * ip;
        }
    }
    // psi = [H s; 2^n ones] with H the explicit Hadamard matrix.
    std::vector<std::int64_t> psi(2 * dim, static_cast<std::int64_t>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        std::int64_t v = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            v += popsign(r & c) * stacked[c];
        }
        psi[r] = v;
    }
    std::int64_t D = 0;
    for (auto v : psi) {
        D += v * v;
    }
    std::size_t l = inst.index();
    // P = Z^{bits of l-1} on qubits 0..n-1, X on qubit n.
    std::int64_t num = 0;
    for (std::size_t r = 0; r < 2 * dim; ++r) {
        for (std::size_t c = 0; c < 2 * dim; ++c) {
            if (c != (r ^ dim)) {
                continue;
            }
            num += psi[r] * popsign(c & (l - 1)) * psi[c];
        }
    }
    auto q = bob_query(alice_encode(inst, cfg, sr), l, cfg, sr);
    if (!q.target.exact || *q.target.exact != Rational(num, D)) {
        why = "pauli target mismatch at l = " + std::to_string(l);
        return false;
    }
    return true;
}

bool check_observable_general(const ProtocolConfig &cfg, const IndexingInstance &inst, const SharedRandomness &sr,
                              std::string &why) {
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    auto s = stacked_blocks(enc);
    std::size_t dim = std::size_t{1} << cfg.qubits;
    Eigen::MatrixXd m(cfg.block_len(), dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < cfg.block_len(); ++r) {
            m(r, c) = s.blocks[c].test(r);
        }
    }
    Eigen::MatrixXd gram = m.transpose() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    double lambda = solver.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::MatrixXd o = lambda > 0 ? Eigen::MatrixXd(gram / lambda) : gram;
    std::size_t l = inst.index();
    std::size_t j = (l - 1) / cfg.gamma() + 1;
    std::size_t i = (l - 1) % cfg.gamma() + 1;
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
    psi(j - 1) += 1 / std::sqrt(2.0);
    psi(dim - cfg.gamma() + i - 1) += 1 / std::sqrt(2.0);
    double want = psi.dot(o * psi);
    auto q = bob_query(alice_encode(inst, cfg, sr), l, cfg, sr);
    if (!(std::abs(q.target.value - want) <= 1e-9)) {
        why = fmt("observable target %.15g vs %.15g", q.target.value, want);
        return false;
    }
    return true;
}

bool check_observable_pauli(const ProtocolConfig &cfg, const IndexingInstance &inst, const SharedRandomness &sr,
                            std::string &why) {
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    auto s = stacked_blocks(enc);
    std::size_t len = cfg.block_len();
    std::size_t width = s.blocks.size() * len + 1;
    std::vector<int> z(width, 0);
    for (std::size_t u = 0; u < s.blocks.size(); ++u) {
        for (std::size_t k = 0; k < len; ++k) {
            z[u * len + k] = s.blocks[u].test(k);
        }
    }
    z[width - 1] = 1;
    std::size_t l = inst.index();
    std::size_t j = (l - 1) / cfg.gamma() + 1;
    std::size_t i = (l - 1) % cfg.gamma() + 1;
    // <phi|Z|phi> over the support of phi: weight-1 two-hot strings and the
    // ancilla string with weight C gamma, normalized by 2 C gamma.
    std::int64_t num = -static_cast<std::int64_t>(len);
    for (std::size_t k = 0; k < len; ++k) {
        int parity = z[(j - 1) * len + k] ^ z[(cfg.alice_blocks() + i - 1) * len + k];
        num += parity ? -1 : 1;
    }
    Rational want(num, 2 * static_cast<std::int64_t>(len));
    auto q = bob_query(alice_encode(inst, cfg, sr), l, cfg, sr);
    if (!q.target.exact || *q.target.exact != want) {
        why = "observable-pauli target mismatch at l = " + std::to_string(l);
        return false;
    }
    return true;
}

bool check_inner_product(const ProtocolConfig &cfg, const IndexingInstance &inst, const SharedRandomness &sr,
                         std::string &why) {
    auto enc = partition_and_encode(inst.x(), cfg, sr);
    std::size_t l = inst.index();
    std::size_t j = (l - 1) / cfg.gamma() + 1;
    std::size_t i = (l - 1) % cfg.gamma() + 1;
    std::int64_t D = 0;
    for (const auto &a : enc.a_hat) {
        D += static_cast<std::int64_t>(a.nnz());
    }
    std::int64_t Dp = static_cast<std::int64_t>(enc.b_hat[i - 1].nnz());
    std::int64_t ip = 0;
    for (std::size_t k = 0; k < cfg.block_len(); ++k) {
        ip += enc.a_hat[j - 1].test(k) & enc.b_hat[i - 1].test(k);
    }
    Rational want = (D == 0 || Dp == 0) ? Rational(0) : Rational(ip * ip, D * Dp);
    auto q = bob_query(alice_encode(inst, cfg, sr), l, cfg, sr);
    if (!q.target.exact_square || *q.target.exact_square != want) {
        why = "inner-product square mismatch at l = " + std::to_string(l);
        return false;
    }
    return true;
}

using Checker = std::function<bool(const ProtocolConfig &, const IndexingInstance &, const SharedRandomness &,
                                   std::string &)>;

struct EquivalenceCase {
    ProtocolKind kind;
    std::size_t qubits;
    double epsilon;
    Checker check;
};

Outcome target_equivalence() {
    auto start = Clock::now();
    const EquivalenceCase cases[] = {
        {ProtocolKind::GeneralState, 6, 0.5, check_general_state},
        {ProtocolKind::GeneralState, 8, 0.3, check_general_state},
        {ProtocolKind::PauliState, 6, 0.5, check_pauli_state},
        {ProtocolKind::PauliState, 8, 0.3, check_pauli_state},
        {ProtocolKind::ObservableGeneral, 6, 0.3, check_observable_general},
        {ProtocolKind::ObservableGeneral, 8, 0.3, check_observable_general},
        {ProtocolKind::ObservablePauli, 16, 0.6, check_observable_pauli},
        {ProtocolKind::ObservablePauli, 64, 0.5, check_observable_pauli},
        {ProtocolKind::InnerProduct, 6, 0.5, check_inner_product},
        {ProtocolKind::InnerProduct, 8, 0.3, check_inner_product},
    };
    std::size_t violations = 0;
    std::size_t total = 0;
    std::string first;
    for (const auto &c : cases) {
        auto cfg = ProtocolConfig::make(c.kind, c.qubits, c.epsilon);
        RandomStream rng(SharedRandomness(1000 + c.qubits, static_cast<std::uint64_t>(c.kind)));
        for (int t = 0; t < 100; ++t) {
            SharedRandomness sr(rng.next_word());
            auto x = sample_x(cfg.capacity, cfg.gamma(), SamplingMode::Unrestricted, rng);
            IndexingInstance inst(x, 1 + rng.next_below(cfg.capacity));
            std::string why;
            ++total;
            if (!c.check(cfg, inst, sr, why)) {
                if (violations++ == 0) {
                    first = std::string(protocol_name(c.kind)) + " n=" + std::to_string(c.qubits) + ": " + why;
                }
            }
        }
    }
    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = violations == 0 && elapsed < 300;
    out.detail = fmt("%zu instances, %zu violations, %.1f s", total, violations, elapsed);
    if (!first.empty()) {
        out.detail += ", first: " + first;
    }
    return out;
}

// ---------------------------------------------------------------------------
// 3

Outcome norm_bounds() {
    std::size_t instances = 0;
    double lo = 1e300;
    double hi = -1e300;
    auto track = [&](const Eigen::VectorXd &ev) {
        lo = std::min(lo, ev.minCoeff());
        hi = std::max(hi, ev.maxCoeff());
    };
    // n = 4: full spectrum of M_l^T M_l on the whole message space.
    {
        auto cfg = ProtocolConfig::make(ProtocolKind::GeneralState, 4, 0.6);
        RandomStream rng{SharedRandomness(31)};
        for (int t = 0; t < 20; ++t) {
            auto m = general_state_measurement(1 + rng.next_below(cfg.capacity), cfg);
            std::size_t dim = std::size_t{1} << m.qubits;
            Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m.rows.size(), dim);
            for (std::size_t r = 0; r < m.rows.size(); ++r) {
                for (auto col : m.rows[r]) {
                    mat(r, col) += m.scale;
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat.transpose() * mat, Eigen::EigenvaluesOnly);
            track(solver.eigenvalues());
            ++instances;
        }
    }
    // n = 6, 8: the nonzero spectrum of M^T M is that of the row Gram M M^T.
    for (auto [n, eps] : {std::pair{6, 0.5}, std::pair{8, 0.3}}) {
        auto cfg = ProtocolConfig::make(ProtocolKind::GeneralState, n, eps);
        RandomStream rng{SharedRandomness(32 + n)};
        for (int t = 0; t < 40; ++t) {
            auto m = general_state_measurement(1 + rng.next_below(cfg.capacity), cfg);
            std::size_t rows = m.rows.size();
            Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(rows, rows);
            for (std::size_t a = 0; a < rows; ++a) {
                for (std::size_t b = 0; b < rows; ++b) {
                    for (auto ca : m.rows[a]) {
                        for (auto cb : m.rows[b]) {
                            gram(a, b) += ca == cb ? m.scale * m.scale : 0;
                        }
                    }
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
            track(solver.eigenvalues());
            lo = std::min(lo, 0.0);
            ++instances;
        }
    }
    Outcome out;
    out.pass = lo >= -1e-9 && hi <= 1 + 1e-9;
    out.detail = fmt("%zu instances, eigenvalues in [%.3g, %.12g]", instances, lo, hi);
    return out;
}

// ---------------------------------------------------------------------------
// 4

Outcome gap_frequencies() {
    auto start = Clock::now();
    GapConfig cfg;
    cfg.epsilon = 0.3;
    cfg.c = 0.75;
    cfg.trials = 2000;
    cfg.seed = 7;
    cfg.sampling = SamplingMode::OddWeight;
    auto r = run_ghd_gap(cfg);
    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = r.zero_rate() >= 0.80 && r.one_rate() >= 0.80 && elapsed < 120;
    out.detail = fmt("x_i=0: %.4f over %zu, x_i=1: %.4f over %zu, floor 0.80, %.1f s", r.zero_rate(), r.zero_trials,
                     r.one_rate(), r.one_trials, elapsed);
    return out;
}

// ---------------------------------------------------------------------------
// 5

Outcome exact_recovery() {
    auto start = Clock::now();
    Outcome out;
    for (const auto &e : kEndToEnd) {
        auto r = run_experiment(acceptance_run(e.kind, e.qubits, OracleModel::Exact));
        bool ok = r.success_rate >= 0.80 && r.trial_errors == 0;
        out.pass = out.pass && ok;
        out.detail += fmt("%s%s n=%zu %.4f", out.detail.empty() ? "" : ", ", std::string(protocol_name(e.kind)).c_str(),
                          e.qubits, r.success_rate);
    }
    double elapsed = seconds_since(start);
    out.pass = out.pass && elapsed < 600;
    out.detail += fmt("; floor 0.80, %.1f s", elapsed);
    return out;
}

// ---------------------------------------------------------------------------
// 6

Outcome adversarial_budget() {
    Outcome out;
    std::size_t violations = 0;
    std::string outside;
    for (const auto &e : kEndToEnd) {
        auto exact = run_experiment(acceptance_run(e.kind, e.qubits, OracleModel::Exact));
        auto adv = run_experiment(acceptance_run(e.kind, e.qubits, OracleModel::RelativeAdversarial));
        violations += adv.bound_violations + adv.trial_errors;
        bool inside = adv.success_rate >= exact.wilson.lo && adv.success_rate <= exact.wilson.hi;
        out.detail += fmt("%s%s %.4f vs exact [%.4f, %.4f], max err %.2f of %.2f", out.detail.empty() ? "" : "; ",
                          std::string(protocol_name(e.kind)).c_str(), adv.success_rate, exact.wilson.lo,
                          exact.wilson.hi, adv.max_delta_error, adv.delta_bound);
        if (!inside) {
            outside += " " + std::string(protocol_name(e.kind));
        }
    }
    out.pass = violations == 0 && outside.empty();
    out.detail = fmt("%zu bound violations; ", violations) + out.detail;
    if (!outside.empty()) {
        out.detail += "; outside the exact interval:" + outside;
    }
    return out;
}

// ---------------------------------------------------------------------------
// 7

Outcome accuracy_degradation() {
    Outcome out;
    for (const auto &e : kEndToEnd) {
        auto budget = run_experiment(acceptance_run(e.kind, e.qubits, OracleModel::RelativeAdversarial));
        auto literal_cfg = acceptance_run(e.kind, e.qubits, OracleModel::RelativeAdversarial);
        literal_cfg.oracle_accuracy = literal_cfg.epsilon;
        auto literal = run_experiment(literal_cfg);
        bool ok = budget.success_rate - literal.success_rate >= 0.02 ||
                  (budget.success_rate >= 0.95 && literal.success_rate >= 0.95);
        out.pass = out.pass && ok;
        out.detail += fmt("%s%s budget %.4f at epsilon %.4f", out.detail.empty() ? "" : ", ",
                          std::string(protocol_name(e.kind)).c_str(), budget.success_rate, literal.success_rate);
    }
    return out;
}

// ---------------------------------------------------------------------------
// 8

std::vector<complex> random_state(std::size_t n, RandomStream &rng) {
    std::vector<complex> a(std::size_t{1} << n);
    double norm = 0;
    for (auto &v : a) {
        // Box-Muller pairs give a Haar-random direction.
        double u1 = 1 - rng.next_unit();
        double u2 = rng.next_unit();
        double r = std::sqrt(-2 * std::log(u1));
        v = complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
        norm += std::norm(v);
    }
    for (auto &v : a) {
        v /= std::sqrt(norm);
    }
    return a;
}

// tr(rho P) straight from amplitudes: sum_y conj(psi_{y ^ x}) (-1)^{z.y} psi_y.
double exact_pauli_value(const std::vector<complex> &psi, std::uint64_t z, std::uint64_t x) {
    complex total = 0;
    for (std::uint64_t y = 0; y < psi.size(); ++y) {
        total += std::conj(psi[y ^ x]) * static_cast<double>(popsign(z & y)) * psi[y];
    }
    return total.real();
}

Outcome shadows_adapter() {
    const std::size_t n = 3;
    const std::size_t copies = 10000;
    RandomStream rng{SharedRandomness(88)};
    std::size_t good = 0;
    std::size_t bits_ok = 0;
    std::size_t draws = 0;
    double worst = 0;
    auto protocol = to_one_way_protocol(reference_shadow_pair(copies, 89));
    while (draws < 200) {
        auto psi = random_state(n, rng);
        std::uint64_t z = 0;
        std::uint64_t x = 0;
        for (std::size_t t = 0; t < n; ++t) {
            switch (rng.next_below(3)) {
                case 1:
                    z |= std::uint64_t{1} << t;
                    break;
                case 2:
                    x |= std::uint64_t{1} << t;
                    break;
                default:
                    break;
            }
        }
        if (z == 0 && x == 0) {
            continue;
        }
        double value = exact_pauli_value(psi, z, x);
        if (std::abs(value) < 0.5) {
            continue;
        }
        ++draws;
        auto rho = ClassicalDensityMatrix::pure(psi);
        auto msg = ProtocolMessage::deserialize(protocol.alice(rho, SharedRandomness(rng.next_word())).serialize());
        bits_ok += msg.main_bits == copies * n * 3 && ShadowProtocol::shadow_of(msg).size() == msg.main_bits &&
                   msg.side_bits == 0;
        PauliMask p(BitVector::from_word(z, n), BitVector::from_word(x, n));
        double est = protocol.bob(msg, p);
        double rel = std::abs(est - value) / std::abs(value);
        worst = std::max(worst, rel);
        good += rel <= 0.2;
    }
    Outcome out;
    out.pass = good >= 180 && bits_ok == draws;
    out.detail = fmt("%zu/%zu draws within 0.2 relative error (need 180), worst %.3f, bit counts exact on %zu/%zu",
                     good, draws, worst, bits_ok, draws);
    return out;
}

// ---------------------------------------------------------------------------
// 9

Outcome determinism() {
    std::vector<std::string> mismatched;
    std::size_t compared = 0;
    auto runs = std::vector<ExperimentConfig>{
        acceptance_run(ProtocolKind::PauliState, 12, OracleModel::RelativeAdversarial),
        acceptance_run(ProtocolKind::GeneralState, 12, OracleModel::RelativeUniform),
        acceptance_run(ProtocolKind::ObservablePauli, 256, OracleModel::Exact),
        acceptance_run(ProtocolKind::InnerProduct, 12, OracleModel::Additive),
    };
    for (auto &cfg : runs) {
        cfg.trials = 500;
        cfg.keep_records = true;
        std::string reference;
        for (std::size_t threads : {1, 2, 5}) {
            cfg.threads = threads;
            auto text = report_json(run_experiment(cfg));
            if (threads == 1) {
                reference = text;
            } else if (text != reference) {
                mismatched.push_back(std::string(protocol_name(cfg.protocol)) + "/" + std::to_string(threads));
            }
            ++compared;
        }
    }
    GapConfig gap;
    gap.trials = 2000;
    gap.seed = 7;
    std::string reference;
    for (std::size_t threads : {1, 2, 5}) {
        gap.threads = threads;
        auto text = to_json(run_ghd_gap(gap)).dump(2);
        if (threads == 1) {
            reference = text;
        } else if (text != reference) {
            mismatched.push_back("ghd-gap/" + std::to_string(threads));
        }
        ++compared;
    }
    Outcome out;
    out.pass = mismatched.empty();
    out.detail = fmt("%zu reports over worker counts 1, 2, 5", compared);
    for (const auto &m : mismatched) {
        out.detail += ", differs: " + m;
    }
    return out;
}

struct Criterion {
    int id;
    const char *name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "exact algebra suite", exact_algebra},
    {2, "target-value equivalence", target_equivalence},
    {3, "norm bounds", norm_bounds},
    {4, "gap frequencies", gap_frequencies},
    {5, "end-to-end recovery, exact oracle", exact_recovery},
    {6, "adversarial oracle at the budget", adversarial_budget},
    {7, "degradation at oracle accuracy epsilon", accuracy_degradation},
    {8, "shadows adapter", shadows_adapter},
    {9, "determinism across worker counts", determinism},
};

}  // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) {
            only = std::atoi(argv[++a]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 2;
        }
    }
    bool all = true;
    bool ran = false;
    for (const auto &c : kCriteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        ran = true;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        std::printf("criterion %d %s: %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    if (!ran) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return all ? 0 : 1;
}
