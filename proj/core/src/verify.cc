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

#include <cmath>
#include <sstream>

#include "qcomm/errors.h"
#include "qcomm/harness.h"
#include "qcomm/transform.h"

namespace qcomm {

namespace {

using Transform = std::function<std::vector<std::int64_t>(std::span<const std::int64_t>)>;

struct Check {
    CheckResult result;

    explicit Check(std::string name) { result.name = std::move(name); }

    void expect(bool ok, const std::string &what) {
        ++result.cases;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = what;
        }
    }
};

std::string describe(const ProtocolConfig &cfg, std::size_t l) {
    std::ostringstream s;
    s << protocol_name(cfg.kind) << " n=" << cfg.qubits << " eps=" << cfg.ghd.epsilon << " l=" << l;
    return s.str();
}

CheckResult transform_round_trip(const Transform &T, std::size_t max_n) {
    Check c("transform-round-trip");
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::size_t dim = std::size_t{1} << n;
        std::vector<std::int64_t> e(dim, 0);
        bool ok = true;
        for (std::size_t k = 0; k < dim && ok; ++k) {
            e[k] = 1;
            auto back = T(T(e));
            for (std::size_t y = 0; y < dim; ++y) {
                ok = ok && back[y] == (y == k ? static_cast<std::int64_t>(dim) : 0);
            }
            e[k] = 0;
        }
        c.expect(ok, "T(T(e_k)) != 2^n e_k at n=" + std::to_string(n));
    }
    return c.result;
}

std::vector<std::vector<int>> character_rows(std::size_t n) {
    std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<int>> rows(dim, std::vector<int>(dim));
    for (std::size_t k = 1; k <= dim; ++k) {
        auto p = PauliMask::canonical_diagonal(k, n);
        for (std::size_t y = 0; y < dim; ++y) {
            rows[k - 1][y] = p.entry(y, y);
        }
    }
    return rows;
}

CheckResult row_orthogonality(std::size_t max_n) {
    Check c("row-orthogonality");
    for (std::size_t n = 1; n <= max_n; ++n) {
        auto rows = character_rows(n);
        std::size_t dim = rows.size();
        bool ok = true;
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = a; b < dim; ++b) {
                std::int64_t dot = 0;
                for (std::size_t y = 0; y < dim; ++y) {
                    dot += rows[a][y] * rows[b][y];
                }
                ok = ok && dot == (a == b ? static_cast<std::int64_t>(dim) : 0);
            }
        }
        c.expect(ok, "rows not orthogonal with norm 2^n at n=" + std::to_string(n));
    }
    return c.result;
}

CheckResult transform_matches_rows(const Transform &T, std::size_t max_n, RandomStream &rng) {
    Check c("transform-matches-rows");
    for (std::size_t n = 1; n <= max_n; ++n) {
        auto rows = character_rows(n);
        std::size_t dim = rows.size();
        std::vector<std::int64_t> v(dim);
        for (auto &x : v) {
            x = static_cast<std::int64_t>(rng.next_below(2001)) - 1000;
        }
        auto got = T(v);
        bool ok = got.size() == dim;
        for (std::size_t k = 0; k < dim && ok; ++k) {
            std::int64_t want = 0;
            for (std::size_t y = 0; y < dim; ++y) {
                want += rows[k][y] * v[y];
            }
            ok = got[k] == want;
        }
        c.expect(ok, "transform disagrees with the explicit row product at n=" + std::to_string(n));
    }
    return c.result;
}

CheckResult hamming_identity(RandomStream &rng) {
    Check c("hamming-identity");
    std::size_t violations = 0;
    for (int t = 0; t < 10000; ++t) {
        std::size_t len = 1 + static_cast<std::size_t>(rng.next_below(300));
        BitVector x = rng.next_bits(len);
        BitVector y = rng.next_bits(len);
        auto via = hamming_via_identity(static_cast<std::int64_t>(x.nnz()), static_cast<std::int64_t>(y.nnz()),
                                        static_cast<std::int64_t>(inner_product(x, y)));
        violations += via != static_cast<std::int64_t>(hamming(x, y));
        ++c.result.cases;
    }
    if (violations) {
        c.result.passed = false;
        c.result.detail = std::to_string(violations) + " violations";
    }
    return c.result;
}

std::optional<ProtocolConfig> small_config(ProtocolKind kind, std::size_t n) {
    for (double eps : {0.5, 0.6, 0.7, 0.8, 0.9}) {
        try {
            return ProtocolConfig::make(kind, n, eps);
        } catch (const std::invalid_argument &) {
        }
    }
    return std::nullopt;
}

struct Sample {
    IndexingInstance inst;
    SharedRandomness pub;
    BlockEncoding enc;
    std::size_t j;
    std::size_t i;
};

Sample draw(const ProtocolConfig &cfg, RandomStream &rng, std::uint64_t label) {
    BitVector x = sample_x(cfg.capacity, cfg.gamma(), SamplingMode::OddWeight, rng);
    std::size_t l = static_cast<std::size_t>(rng.next_below(cfg.capacity)) + 1;
    SharedRandomness pub = SharedRandomness(label).derive(kPublicStream);
    auto enc = partition_and_encode(x, cfg, pub);
    auto [j, i] = split_index(l, cfg.gamma());
    return {IndexingInstance(std::move(x), l), pub, std::move(enc), j, i};
}

wide_int sum_norm(const BitVector &a, const BitVector &b) {
    return static_cast<wide_int>(a.nnz() + b.nnz() + 2 * inner_product(a, b));
}

/// Symmetric k x k matrix padded with zeros to a power-of-two dimension.
DenseObservable padded(std::size_t k, const std::vector<double> &m) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < k) {
        ++n;
    }
    std::size_t dim = std::size_t{1} << n;
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            e[r * dim + c] = m[r * k + c];
        }
    }
    return DenseObservable(n, std::move(e));
}

void check_general_state(const ProtocolConfig &cfg, RandomStream &rng, Check &targets, Check &norms) {
    for (int t = 0; t < 20; ++t) {
        auto s = draw(cfg, rng, 100 + t);
        auto msg = general_state_alice(s.inst, cfg, s.pub);
        auto q = general_state_query(msg, s.inst.index(), cfg, s.pub);
        auto psi = message_state(msg).to_dense_amplitudes();
        std::size_t len = cfg.block_len();
        std::size_t ja = (s.j - 1) * len;
        std::size_t ib = (cfg.alice_blocks() + s.i - 1) * len;
        std::vector<double> M(len * psi.size(), 0.0);
        for (std::size_t k = 0; k < len; ++k) {
            M[k * psi.size() + ja + k] = 1 / std::sqrt(2.0);
            M[k * psi.size() + ib + k] = 1 / std::sqrt(2.0);
        }
        double dense = 0;
        for (std::size_t k = 0; k < len; ++k) {
            double row = 0;
            for (std::size_t y = 0; y < psi.size(); ++y) {
                row += M[k * psi.size() + y] * psi[y];
            }
            dense += row * row;
        }
        const auto &a = s.enc.a_hat[s.j - 1];
        const auto &b = s.enc.b_hat[s.i - 1];
        std::int64_t D = 0;
        for (const auto &v : s.enc.a_hat) {
            D += static_cast<std::int64_t>(v.nnz());
        }
        for (const auto &v : s.enc.b_hat) {
            D += static_cast<std::int64_t>(v.nnz());
        }
        auto formula = Rational::from_wide(sum_norm(a, b), 2 * static_cast<wide_int>(D));
        targets.expect(q.target.exact == formula && std::abs(dense - q.target.value) <= 1e-12,
                       describe(cfg, s.inst.index()));
        std::vector<double> rows(len * len, 0.0);
        for (std::size_t r = 0; r < len; ++r) {
            for (std::size_t c = 0; c < len; ++c) {
                double dot = 0;
                for (std::size_t y = 0; y < psi.size(); ++y) {
                    dot += M[r * psi.size() + y] * M[c * psi.size() + y];
                }
                rows[r * len + c] = dot;
            }
        }
        norms.expect(operator_norm(padded(len, rows)) <= 1 + 1e-9, describe(cfg, s.inst.index()));
    }
}

void check_pauli_state(const ProtocolConfig &cfg, RandomStream &rng, Check &targets, Check &norms) {
    for (int t = 0; t < 20; ++t) {
        auto s = draw(cfg, rng, 200 + t);
        auto msg = pauli_state_alice(s.inst, cfg, s.pub);
        auto q = pauli_state_query(msg, s.inst.index(), cfg, s.pub);
        auto state = message_state(msg);
        std::size_t n = cfg.qubits;
        BitVector z = BitVector::from_word(s.inst.index() - 1, n + 1);
        BitVector x(n + 1);
        x.assign(n, true);
        auto dense = DenseObservable::from_pauli(PauliMask(z, x));
        double value = expectation(state, dense);
        wide_int four_n = static_cast<wide_int>(1) << (2 * n);
        auto formula = Rational::from_wide(2 * sum_norm(s.enc.a_hat[s.j - 1], s.enc.b_hat[s.i - 1]) * four_n,
                                           state.norm_sq());
        targets.expect(q.target.exact == formula && std::abs(value - q.target.value) <= 1e-12,
                       describe(cfg, s.inst.index()));
        bool involution = true;
        for (int r = 0; r < 4; ++r) {
            std::vector<double> v(dense.dimension());
            for (auto &e : v) {
                e = rng.next_unit() - 0.5;
            }
            auto back = dense.apply(dense.apply(v));
            for (std::size_t k = 0; k < v.size(); ++k) {
                involution = involution && std::abs(back[k] - v[k]) <= 1e-12;
            }
        }
        norms.expect(involution, describe(cfg, s.inst.index()) + ": P^2 != I");
    }
}

void check_observable_general(const ProtocolConfig &cfg, RandomStream &rng, Check &targets, Check &norms) {
    for (int t = 0; t < 20; ++t) {
        auto s = draw(cfg, rng, 300 + t);
        auto msg = observable_general_alice(s.inst, cfg, s.pub);
        auto q = observable_general_query(msg, s.inst.index(), cfg, s.pub);
        auto obs = message_observable(msg);
        double dense = expectation(observable_general_probe(s.inst.index(), cfg), obs);
        std::vector<const BitVector *> cols;
        for (const auto &a : s.enc.a_hat) {
            cols.push_back(&a);
        }
        for (const auto &b : s.enc.b_hat) {
            cols.push_back(&b);
        }
        std::size_t dim = cols.size();
        std::vector<double> gram(dim * dim);
        for (std::size_t u = 0; u < dim; ++u) {
            for (std::size_t v = 0; v < dim; ++v) {
                gram[u * dim + v] = static_cast<double>(inner_product(*cols[u], *cols[v]));
            }
        }
        double lambda = operator_norm(DenseObservable(cfg.qubits, gram));
        double formula = lambda == 0 ? 0
                                     : static_cast<double>(sum_norm(s.enc.a_hat[s.j - 1], s.enc.b_hat[s.i - 1])) /
                                           (2 * lambda);
        targets.expect(std::abs(dense - q.target.value) <= 1e-9 && std::abs(formula - q.target.value) <= 1e-9,
                       describe(cfg, s.inst.index()));
        double norm = operator_norm(obs);
        norms.expect(lambda == 0 ? norm == 0 : std::abs(norm - 1) <= 1e-9, describe(cfg, s.inst.index()));
    }
}

void check_observable_pauli(const ProtocolConfig &cfg, RandomStream &rng, Check &targets) {
    for (int t = 0; t < 20; ++t) {
        auto s = draw(cfg, rng, 400 + t);
        auto msg = observable_pauli_alice(s.inst, cfg, s.pub);
        auto q = observable_pauli_query(msg, s.inst.index(), cfg, s.pub);
        auto delta = static_cast<std::int64_t>(hamming(s.enc.a_hat[s.j - 1], s.enc.b_hat[s.i - 1]));
        targets.expect(q.target.exact == Rational(-delta, static_cast<std::int64_t>(cfg.block_len())),
                       describe(cfg, s.inst.index()));
    }
}

void check_inner_product(const ProtocolConfig &cfg, RandomStream &rng, Check &targets) {
    for (int t = 0; t < 20; ++t) {
        auto s = draw(cfg, rng, 500 + t);
        auto msg = inner_product_alice(s.inst, cfg, s.pub);
        auto q = inner_product_query(msg, s.inst.index(), cfg, s.pub);
        const auto &a = s.enc.a_hat[s.j - 1];
        const auto &b = s.enc.b_hat[s.i - 1];
        std::int64_t D = 0;
        for (const auto &v : s.enc.a_hat) {
            D += static_cast<std::int64_t>(v.nnz());
        }
        auto Dp = static_cast<std::int64_t>(b.nnz());
        if (D == 0 || Dp == 0) {
            targets.expect(q.target.value == 0, describe(cfg, s.inst.index()));
            continue;
        }
        auto psi = message_state(msg).to_dense_amplitudes();
        auto phi = inner_product_probe(s.inst.index(), cfg, s.pub)->to_dense_amplitudes();
        double dot = 0;
        for (std::size_t k = 0; k < psi.size(); ++k) {
            dot += psi[k] * phi[k];
        }
        auto ip = static_cast<std::int64_t>(inner_product(a, b));
        auto square = Rational::from_wide(static_cast<wide_int>(ip) * ip, static_cast<wide_int>(D) * Dp);
        targets.expect(q.target.exact_square == square && std::abs(dot - q.target.value) <= 1e-12,
                       describe(cfg, s.inst.index()));
    }
}

}  // namespace

bool VerifyReport::passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

VerifyReport verify_suite(const VerifyOptions &options) {
    if (options.max_qubits < 1 || options.max_qubits > 12) {
        throw ConfigError("max qubits must lie in [1, 12]");
    }
    Transform T = options.transform ? options.transform
                                    : Transform([](std::span<const std::int64_t> v) { return fwht_apply(v); });
    RandomStream rng(SharedRandomness(options.seed).derive(0x766572696679));
    VerifyReport rep;
    rep.checks.push_back(transform_round_trip(T, std::max<std::size_t>(options.max_qubits, 10)));
    std::size_t small = std::min<std::size_t>(options.max_qubits, 6);
    rep.checks.push_back(row_orthogonality(small));
    rep.checks.push_back(transform_matches_rows(T, small, rng));
    rep.checks.push_back(hamming_identity(rng));

    Check targets("target-formulas");
    Check norms("norm-bounds");
    std::size_t n = std::min<std::size_t>(options.max_qubits, 8) & ~std::size_t{1};
    if (n >= 4) {
        for (auto kind : {ProtocolKind::GeneralState, ProtocolKind::PauliState, ProtocolKind::ObservableGeneral,
                          ProtocolKind::InnerProduct}) {
            auto cfg = small_config(kind, n);
            if (!cfg) {
                continue;
            }
            switch (kind) {
                case ProtocolKind::GeneralState:
                    check_general_state(*cfg, rng, targets, norms);
                    break;
                case ProtocolKind::PauliState:
                    check_pauli_state(*cfg, rng, targets, norms);
                    break;
                case ProtocolKind::ObservableGeneral:
                    check_observable_general(*cfg, rng, targets, norms);
                    break;
                default:
                    check_inner_product(*cfg, rng, targets);
                    break;
            }
        }
        for (std::size_t classical : {16, 64}) {
            if (auto cfg = small_config(ProtocolKind::ObservablePauli, classical)) {
                check_observable_pauli(*cfg, rng, targets);
            }
        }
    } else {
        targets.result.detail = "skipped below 4 qubits";
        norms.result.detail = "skipped below 4 qubits";
    }
    rep.checks.push_back(targets.result);
    rep.checks.push_back(norms.result);
    return rep;
}

nlohmann::json to_json(const VerifyReport &report) {
    auto checks = nlohmann::json::array();
    for (const auto &c : report.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"detail", c.detail}});
    }
    return {{"schema", "qcomm.verify/1"}, {"passed", report.passed()}, {"checks", checks}};
}

}  // namespace qcomm
