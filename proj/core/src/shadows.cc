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

#include "qcomm/shadows.h"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <unordered_map>

#include "qcomm/errors.h"
#include "qcomm/wire.h"

namespace qcomm {

namespace {

constexpr double kTolerance = 1e-9;

using Unitary = std::array<complex, 4>;

Unitary rotation_into(PauliBasis basis) {
    const double h = 1 / std::sqrt(2.0);
    switch (basis) {
        case PauliBasis::X:
            return {complex(h, 0), complex(h, 0), complex(h, 0), complex(-h, 0)};
        case PauliBasis::Y:
            return {complex(h, 0), complex(0, -h), complex(h, 0), complex(0, h)};
        case PauliBasis::Z:
            break;
    }
    return {complex(1, 0), complex(0, 0), complex(0, 0), complex(1, 0)};
}

std::size_t checked_qubits(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("amplitude count is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

double single_round(const PauliMask &pauli, const BitVector &shadow, std::size_t base) {
    double value = 1;
    for (std::size_t t = 0; t < pauli.qubits(); ++t) {
        bool z = pauli.z_mask().test(t);
        bool x = pauli.x_mask().test(t);
        if (!z && !x) {
            continue;
        }
        std::size_t at = base + 3 * t;
        auto code = static_cast<unsigned>(shadow.test(at)) | (static_cast<unsigned>(shadow.test(at + 1)) << 1);
        auto wanted = static_cast<unsigned>(z ? PauliBasis::Z : PauliBasis::X);
        if (code != wanted) {
            return 0;
        }
        value *= shadow.test(at + 2) ? -3 : 3;
    }
    return value;
}

double median_of_means(std::span<const double> values, std::size_t groups) {
    std::size_t k = std::max<std::size_t>(1, std::min(groups, values.size()));
    std::vector<double> means(k);
    for (std::size_t g = 0; g < k; ++g) {
        std::size_t lo = g * values.size() / k;
        std::size_t hi = (g + 1) * values.size() / k;
        double s = 0;
        for (std::size_t r = lo; r < hi; ++r) {
            s += values[r];
        }
        means[g] = s / static_cast<double>(hi - lo);
    }
    std::sort(means.begin(), means.end());
    return k % 2 ? means[k / 2] : (means[k / 2 - 1] + means[k / 2]) / 2;
}

}  // namespace

ClassicalDensityMatrix::ClassicalDensityMatrix(std::size_t qubits, std::vector<complex> entries)
    : qubits_(qubits), entries_(std::move(entries)) {
    if (qubits_ > kMaxQubits) {
        throw DimensionError("density matrices are limited to " + std::to_string(kMaxQubits) + " qubits");
    }
    std::size_t dim = dimension();
    if (entries_.size() != dim * dim) {
        throw DimensionError("density matrix on " + std::to_string(qubits_) + " qubits needs " +
                             std::to_string(dim * dim) + " entries");
    }
    complex trace = 0;
    for (std::size_t r = 0; r < dim; ++r) {
        trace += at(r, r);
        for (std::size_t c = r; c < dim; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > kTolerance) {
                throw InconsistentInputsError("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(trace - complex(1, 0)) > kTolerance) {
        throw InconsistentInputsError("density matrix trace is not 1");
    }
    Eigen::Map<const Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        entries_.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("density matrix eigensolve failed");
    }
    if (solver.eigenvalues().minCoeff() < -kTolerance) {
        throw InconsistentInputsError("density matrix has a negative eigenvalue");
    }
}

ClassicalDensityMatrix ClassicalDensityMatrix::pure(std::span<const complex> amplitudes) {
    std::size_t n = checked_qubits(amplitudes.size());
    std::size_t dim = amplitudes.size();
    std::vector<complex> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            e[r * dim + c] = amplitudes[r] * std::conj(amplitudes[c]);
        }
    }
    return ClassicalDensityMatrix(n, std::move(e));
}

ClassicalDensityMatrix ClassicalDensityMatrix::pure(std::span<const double> amplitudes) {
    std::vector<complex> c(amplitudes.begin(), amplitudes.end());
    return pure(std::span<const complex>(c));
}

ClassicalDensityMatrix ClassicalDensityMatrix::maximally_mixed(std::size_t qubits) {
    std::size_t dim = std::size_t{1} << qubits;
    std::vector<complex> e(dim * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        e[k * dim + k] = 1.0 / static_cast<double>(dim);
    }
    return ClassicalDensityMatrix(qubits, std::move(e));
}

void ClassicalDensityMatrix::append_to(ByteWriter &out) const {
    out.put_u32(static_cast<std::uint32_t>(qubits_));
    for (const auto &z : entries_) {
        out.put_f64(z.real());
        out.put_f64(z.imag());
    }
}

ClassicalDensityMatrix ClassicalDensityMatrix::read_from(ByteReader &in) {
    std::size_t n = in.get_u32();
    if (n > kMaxQubits) {
        throw FormatError("density matrix with too many qubits");
    }
    std::size_t dim = std::size_t{1} << n;
    if (in.remaining() / 16 < dim * dim) {
        throw FormatError("density matrix payload truncated");
    }
    std::vector<complex> e(dim * dim);
    for (auto &z : e) {
        double re = in.get_f64();
        double im = in.get_f64();
        z = complex(re, im);
    }
    return ClassicalDensityMatrix(n, std::move(e));
}

void ClassicalDensityMatrix::write_file(const std::string &path) const {
    ByteWriter out;
    append_to(out);
    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char *>(out.bytes().data()), static_cast<std::streamsize>(out.size()));
    if (!f) {
        throw FormatError("could not write " + path);
    }
}

ClassicalDensityMatrix ClassicalDensityMatrix::read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw FormatError("could not open " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    ByteReader in(bytes);
    auto rho = read_from(in);
    in.expect_done();
    return rho;
}

double pauli_expectation(const ClassicalDensityMatrix &rho, const PauliMask &pauli) {
    if (rho.qubits() != pauli.qubits()) {
        throw DimensionError("density matrix and Pauli act on different qubit counts");
    }
    std::uint64_t x = pauli.x_mask().to_word();
    double total = 0;
    for (std::size_t y = 0; y < rho.dimension(); ++y) {
        total += pauli.entry(y, y ^ x) * rho.at(y ^ x, y).real();
    }
    return total;
}

char basis_letter(PauliBasis basis) noexcept {
    switch (basis) {
        case PauliBasis::X:
            return 'X';
        case PauliBasis::Y:
            return 'Y';
        case PauliBasis::Z:
            return 'Z';
    }
    return 'Z';
}

PauliBasis parse_basis(char letter) {
    switch (letter) {
        case 'X':
            return PauliBasis::X;
        case 'Y':
            return PauliBasis::Y;
        case 'Z':
            return PauliBasis::Z;
        default:
            throw InconsistentInputsError(std::string("invalid basis letter '") + letter + "'");
    }
}

std::vector<double> born_probabilities(const ClassicalDensityMatrix &rho, std::span<const PauliBasis> bases) {
    if (bases.size() != rho.qubits()) {
        throw DimensionError("need one basis letter per qubit");
    }
    std::size_t dim = rho.dimension();
    std::vector<complex> m(rho.entries().begin(), rho.entries().end());
    for (std::size_t t = 0; t < bases.size(); ++t) {
        if (bases[t] == PauliBasis::Z) {
            continue;
        }
        Unitary u = rotation_into(bases[t]);
        std::size_t bit = std::size_t{1} << t;
        // U rho U^dagger, one qubit at a time.
        for (std::size_t r0 = 0; r0 < dim; ++r0) {
            if (r0 & bit) {
                continue;
            }
            std::size_t r1 = r0 | bit;
            for (std::size_t c = 0; c < dim; ++c) {
                complex a = m[r0 * dim + c];
                complex b = m[r1 * dim + c];
                m[r0 * dim + c] = u[0] * a + u[1] * b;
                m[r1 * dim + c] = u[2] * a + u[3] * b;
            }
        }
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c0 = 0; c0 < dim; ++c0) {
                if (c0 & bit) {
                    continue;
                }
                std::size_t c1 = c0 | bit;
                complex a = m[r * dim + c0];
                complex b = m[r * dim + c1];
                m[r * dim + c0] = a * std::conj(u[0]) + b * std::conj(u[1]);
                m[r * dim + c1] = a * std::conj(u[2]) + b * std::conj(u[3]);
            }
        }
    }
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        p[k] = std::max(0.0, m[k * dim + k].real());
    }
    return p;
}

namespace {

BitVector sample_outcome(std::span<const double> probs, std::size_t qubits, RandomStream &rng) {
    double u = rng.next_unit();
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    u *= total;
    std::size_t pick = probs.size() - 1;
    double acc = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    return BitVector::from_word(pick, qubits);
}

}  // namespace

BitVector simulate_measure(const ClassicalDensityMatrix &rho, std::span<const PauliBasis> bases, RandomStream &rng) {
    auto probs = born_probabilities(rho, bases);
    return sample_outcome(probs, rho.qubits(), rng);
}

BitVector simulate_measure(const ClassicalDensityMatrix &rho, std::string_view bases, RandomStream &rng) {
    std::vector<PauliBasis> parsed;
    for (char ch : bases) {
        parsed.push_back(parse_basis(ch));
    }
    return simulate_measure(rho, std::span<const PauliBasis>(parsed), rng);
}

ShadowPair reference_shadow_pair(std::size_t copies, std::uint64_t seed, std::size_t groups) {
    if (copies < 1) {
        throw ConfigError("a shadow needs at least one copy");
    }
    if (groups < 1) {
        throw ConfigError("median-of-means needs at least one group");
    }
    ShadowPair pair;
    pair.copies = copies;
    pair.seed = seed;
    pair.measure = [](const DensitySource &source, std::size_t s, const SharedRandomness &rng) {
        const ClassicalDensityMatrix &rho = source();
        std::size_t n = rho.qubits();
        std::unordered_map<std::uint64_t, std::vector<double>> cache;
        BitVector shadow(3 * n * s);
        std::vector<PauliBasis> bases(n);
        for (std::size_t r = 0; r < s; ++r) {
            RandomStream stream(rng.derive(r));
            std::uint64_t key = 0;
            for (std::size_t t = 0; t < n; ++t) {
                bases[t] = static_cast<PauliBasis>(stream.next_below(3));
                key = key * 3 + static_cast<std::uint64_t>(bases[t]);
            }
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, born_probabilities(rho, bases)).first;
            }
            auto outcome = sample_outcome(it->second, n, stream);
            std::size_t base = 3 * n * r;
            for (std::size_t t = 0; t < n; ++t) {
                auto code = static_cast<unsigned>(bases[t]);
                shadow.assign(base + 3 * t, code & 1);
                shadow.assign(base + 3 * t + 1, code & 2);
                shadow.assign(base + 3 * t + 2, outcome.test(t));
            }
        }
        return shadow;
    };
    pair.estimate = [groups](const Observable &obs, const BitVector &shadow) {
        const auto *pauli = std::get_if<PauliMask>(&obs);
        if (pauli == nullptr) {
            throw UnsupportedObservableError("the reference shadow estimator only handles Pauli observables");
        }
        if (pauli->is_identity()) {
            return 1.0;
        }
        std::size_t n = pauli->qubits();
        if (n == 0 || shadow.size() % (3 * n) != 0 || shadow.empty()) {
            throw FormatError("shadow length does not fit " + std::to_string(n) + " qubits");
        }
        std::size_t rounds = shadow.size() / (3 * n);
        std::vector<double> values(rounds);
        for (std::size_t r = 0; r < rounds; ++r) {
            values[r] = single_round(*pauli, shadow, 3 * n * r);
        }
        return median_of_means(values, groups);
    };
    return pair;
}

ProtocolMessage ShadowProtocol::alice(const ClassicalDensityMatrix &rho) const {
    return alice(rho, SharedRandomness(pair.seed));
}

ProtocolMessage ShadowProtocol::alice(const ClassicalDensityMatrix &rho, const SharedRandomness &rng) const {
    DensitySource source = [&rho]() -> const ClassicalDensityMatrix & { return rho; };
    BitVector shadow = pair.measure(source, pair.copies, rng);
    ProtocolMessage msg;
    msg.tag = kShadowMessageTag;
    msg.main_payload = shadow.packed_bytes();
    msg.main_bits = shadow.size();
    return msg;
}

ProtocolMessage ShadowProtocol::alice_pure(std::span<const double> amplitudes) const {
    return alice(ClassicalDensityMatrix::pure(amplitudes));
}

BitVector ShadowProtocol::shadow_of(const ProtocolMessage &msg) {
    if (msg.tag != kShadowMessageTag) {
        throw FormatError("not a shadow message");
    }
    return BitVector::from_packed_bytes(msg.main_payload, static_cast<std::size_t>(msg.main_bits));
}

double ShadowProtocol::bob(const ProtocolMessage &msg, const Observable &obs) const {
    return pair.estimate(obs, shadow_of(msg));
}

ShadowProtocol to_one_way_protocol(ShadowPair pair) {
    if (!pair.measure || !pair.estimate) {
        throw ConfigError("shadow pair is missing a phase");
    }
    return ShadowProtocol{std::move(pair)};
}

}  // namespace qcomm
