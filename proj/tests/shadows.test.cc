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

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "qcomm/errors.h"
#include "qcomm/shadows.h"

using namespace qcomm;

namespace {

using Matrix = Eigen::MatrixXcd;

Matrix rotation(PauliBasis b) {
    const double h = 1 / std::sqrt(2.0);
    Matrix u(2, 2);
    switch (b) {
        case PauliBasis::X:
            u << h, h, h, -h;
            break;
        case PauliBasis::Y:
            u << h, complex(0, -h), h, complex(0, h);
            break;
        case PauliBasis::Z:
            u << 1, 0, 0, 1;
            break;
    }
    return u;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

std::vector<double> eigen_born(const ClassicalDensityMatrix &rho, const std::vector<PauliBasis> &bases) {
    Matrix u = Matrix::Identity(1, 1);
    for (std::size_t t = 0; t < bases.size(); ++t) {
        u = kron(rotation(bases[t]), u);
    }
    std::size_t dim = rho.dimension();
    Matrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) = rho.at(r, c);
        }
    }
    Matrix rotated = u * m * u.adjoint();
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        p[k] = rotated(k, k).real();
    }
    return p;
}

std::vector<complex> random_amplitudes(std::size_t n, RandomStream &rng) {
    std::vector<complex> a(std::size_t{1} << n);
    double norm = 0;
    for (auto &v : a) {
        v = complex(2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1);
        norm += std::norm(v);
    }
    for (auto &v : a) {
        v /= std::sqrt(norm);
    }
    return a;
}

PauliMask pauli_from(std::string_view letters) {
    BitVector z(letters.size());
    BitVector x(letters.size());
    for (std::size_t t = 0; t < letters.size(); ++t) {
        z.assign(t, letters[t] == 'Z');
        x.assign(t, letters[t] == 'X');
    }
    return PauliMask(z, x);
}

}  // namespace

TEST(density_matrix, validation) {
    ASSERT_THROW(ClassicalDensityMatrix(1, {1, 0, 0, 0.5}), InconsistentInputsError);
    ASSERT_THROW(ClassicalDensityMatrix(1, {0.5, 1, 0, 0.5}), InconsistentInputsError);
    ASSERT_THROW(ClassicalDensityMatrix(1, {1.5, 0, 0, -0.5}), InconsistentInputsError);
    ASSERT_THROW(ClassicalDensityMatrix(1, {1, 0, 0}), DimensionError);
    ASSERT_THROW(ClassicalDensityMatrix::maximally_mixed(11), DimensionError);
    ClassicalDensityMatrix ok(1, {0.5, complex(0, 0.5), complex(0, -0.5), 0.5});
    ASSERT_NEAR(pauli_expectation(ok, PauliMask::identity(1)), 1, 1e-12);
}

TEST(density_matrix, file_round_trip) {
    RandomStream rng{SharedRandomness(1)};
    auto rho = ClassicalDensityMatrix::pure(random_amplitudes(3, rng));
    auto path = (std::filesystem::temp_directory_path() / "qcomm_rho_test.bin").string();
    rho.write_file(path);
    auto back = ClassicalDensityMatrix::read_file(path);
    std::remove(path.c_str());
    ASSERT_EQ(back.qubits(), 3u);
    for (std::size_t k = 0; k < rho.entries().size(); ++k) {
        ASSERT_EQ(back.entries()[k], rho.entries()[k]);
    }
    ASSERT_THROW(ClassicalDensityMatrix::read_file(path + ".missing"), FormatError);
}

TEST(born, matches_eigen_rotation) {
    RandomStream rng{SharedRandomness(2)};
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 1 + rng.next_below(3);
        auto rho = ClassicalDensityMatrix::pure(random_amplitudes(n, rng));
        std::vector<PauliBasis> bases(n);
        for (auto &b : bases) {
            b = static_cast<PauliBasis>(rng.next_below(3));
        }
        auto got = born_probabilities(rho, bases);
        auto want = eigen_born(rho, bases);
        for (std::size_t k = 0; k < got.size(); ++k) {
            ASSERT_NEAR(got[k], want[k], 1e-12);
        }
    }
}

TEST(measure, z_basis_is_deterministic_on_basis_states) {
    std::vector<double> one{0, 1};
    auto rho = ClassicalDensityMatrix::pure(std::span<const double>(one));
    RandomStream rng{SharedRandomness(3)};
    for (int t = 0; t < 100; ++t) {
        ASSERT_EQ(simulate_measure(rho, "Z", rng).to_string(), "1");
    }
}

TEST(measure, x_basis_on_zero_is_fair) {
    std::vector<double> zero{1, 0};
    auto rho = ClassicalDensityMatrix::pure(std::span<const double>(zero));
    RandomStream rng{SharedRandomness(4)};
    int ones = 0;
    for (int t = 0; t < 10000; ++t) {
        ones += simulate_measure(rho, "X", rng).test(0);
    }
    ASSERT_NEAR(ones / 10000.0, 0.5, 0.02);
}

TEST(measure, two_qubit_frequencies_match_born_rule) {
    RandomStream rng{SharedRandomness(5)};
    auto rho = ClassicalDensityMatrix::pure(random_amplitudes(2, rng));
    for (std::string_view letters : {"XZ", "YY", "ZX"}) {
        std::vector<PauliBasis> bases{parse_basis(letters[0]), parse_basis(letters[1])};
        auto want = eigen_born(rho, bases);
        std::vector<double> counts(4, 0);
        const int shots = 100000;
        for (int t = 0; t < shots; ++t) {
            counts[simulate_measure(rho, letters, rng).to_word()] += 1;
        }
        double tv = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            tv += std::abs(counts[k] / shots - want[k]) / 2;
        }
        ASSERT_LE(tv, 0.02) << letters;
    }
}

TEST(measure, rejects_bad_letters) {
    auto rho = ClassicalDensityMatrix::maximally_mixed(2);
    RandomStream rng{SharedRandomness(6)};
    ASSERT_THROW(simulate_measure(rho, "XQ", rng), InconsistentInputsError);
    ASSERT_THROW(simulate_measure(rho, "X", rng), DimensionError);
    ASSERT_THROW(parse_basis('x'), InconsistentInputsError);
    ASSERT_EQ(basis_letter(PauliBasis::Y), 'Y');
}

TEST(shadow_pair, simple_estimates) {
    auto pair = reference_shadow_pair(2000, 7);
    std::vector<double> zero{1, 0, 0, 0};
    auto pure0 = ClassicalDensityMatrix::pure(std::span<const double>(zero));
    DensitySource s0 = [&]() -> const ClassicalDensityMatrix & { return pure0; };
    auto shadow = pair.measure(s0, pair.copies, SharedRandomness(pair.seed));
    ASSERT_EQ(shadow.size(), 2000u * 2 * 3);
    ASSERT_DOUBLE_EQ(pair.estimate(PauliMask::identity(2), shadow), 1.0);
    ASSERT_NEAR(pair.estimate(pauli_from("ZI"), shadow), 1.0, 0.1);
    ASSERT_NEAR(pair.estimate(pauli_from("ZZ"), shadow), 1.0, 0.15);

    auto mixed = ClassicalDensityMatrix::maximally_mixed(2);
    DensitySource sm = [&]() -> const ClassicalDensityMatrix & { return mixed; };
    auto mshadow = pair.measure(sm, pair.copies, SharedRandomness(pair.seed));
    ASSERT_NEAR(pair.estimate(pauli_from("IZ"), mshadow), 0.0, 0.1);
    ASSERT_THROW(pair.estimate(DenseObservable::identity(2), shadow), UnsupportedObservableError);
    ASSERT_THROW(pair.estimate(pauli_from("ZZZ"), shadow), FormatError);
}

TEST(shadow_pair, tracks_random_states) {
    RandomStream rng{SharedRandomness(8)};
    auto pair = reference_shadow_pair(10000, 9);
    for (int t = 0; t < 5; ++t) {
        auto rho = ClassicalDensityMatrix::pure(random_amplitudes(2, rng));
        DensitySource src = [&]() -> const ClassicalDensityMatrix & { return rho; };
        auto shadow = pair.measure(src, pair.copies, SharedRandomness(t));
        for (std::string_view letters : {"XI", "ZX", "IZ", "XX"}) {
            auto p = pauli_from(letters);
            ASSERT_NEAR(pair.estimate(p, shadow), pauli_expectation(rho, p), 0.1) << letters;
        }
    }
}

TEST(shadow_protocol, adapter_matches_direct_run) {
    RandomStream rng{SharedRandomness(10)};
    auto rho = ClassicalDensityMatrix::pure(random_amplitudes(3, rng));
    auto pair = reference_shadow_pair(300, 11);
    auto protocol = to_one_way_protocol(pair);
    auto msg = ProtocolMessage::deserialize(protocol.alice(rho).serialize());
    ASSERT_EQ(msg.tag, kShadowMessageTag);
    ASSERT_EQ(msg.main_bits, 300u * 3 * 3);
    ASSERT_EQ(msg.side_bits, 0u);
    DensitySource src = [&]() -> const ClassicalDensityMatrix & { return rho; };
    auto direct = pair.measure(src, pair.copies, SharedRandomness(pair.seed));
    ASSERT_EQ(ShadowProtocol::shadow_of(msg), direct);
    auto p = pauli_from("XZI");
    ASSERT_EQ(protocol.bob(msg, p), pair.estimate(p, direct));
}

TEST(shadow_protocol, estimation_never_reads_rho) {
    RandomStream rng{SharedRandomness(12)};
    auto rho = ClassicalDensityMatrix::pure(random_amplitudes(2, rng));
    int reads = 0;
    bool poisoned = false;
    DensitySource src = [&]() -> const ClassicalDensityMatrix & {
        if (poisoned) {
            throw std::logic_error("rho read after the measurement phase");
        }
        ++reads;
        return rho;
    };
    auto pair = reference_shadow_pair(100, 13);
    auto shadow = pair.measure(src, pair.copies, SharedRandomness(pair.seed));
    ASSERT_GT(reads, 0);
    poisoned = true;
    pair.estimate(pauli_from("ZZ"), shadow);
    auto protocol = to_one_way_protocol(pair);
    ProtocolMessage bad;
    bad.tag = 2;
    ASSERT_THROW(protocol.bob(bad, pauli_from("ZZ")), FormatError);
}

TEST(shadow_protocol, pure_amplitude_entry_point) {
    auto protocol = to_one_way_protocol(reference_shadow_pair(50, 14));
    std::vector<double> amps{0, 1};
    auto msg = protocol.alice_pure(amps);
    ASSERT_EQ(msg.main_bits, 150u);
    ASSERT_LE(protocol.bob(msg, pauli_from("Z")), 0.0);
    ASSERT_THROW(to_one_way_protocol(ShadowPair{}), ConfigError);
}
