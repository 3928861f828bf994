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
 * Classical shadows with a classical input: Alice holds a full description
 * of rho, simulates the measurement phase, and ships the record. Bob runs
 * the estimation phase on the record alone.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcomm/bits.h"
#include "qcomm/dense_observable.h"
#include "qcomm/pauli.h"
#include "qcomm/protocols.h"

namespace qcomm {

class ByteReader;
class ByteWriter;

using complex = std::complex<double>;

class ClassicalDensityMatrix {
   public:
    static constexpr std::size_t kMaxQubits = 10;

    /// Checks Hermiticity, unit trace and positivity to 1e-9 (InconsistentInputsError).
    ClassicalDensityMatrix(std::size_t qubits, std::vector<complex> entries);

    /// |psi><psi| for a normalized amplitude vector.
    static ClassicalDensityMatrix pure(std::span<const complex> amplitudes);
    static ClassicalDensityMatrix pure(std::span<const double> amplitudes);
    static ClassicalDensityMatrix maximally_mixed(std::size_t qubits);

    std::size_t qubits() const noexcept { return qubits_; }
    std::size_t dimension() const noexcept { return std::size_t{1} << qubits_; }
    complex at(std::size_t row, std::size_t col) const noexcept { return entries_[row * dimension() + col]; }
    std::span<const complex> entries() const noexcept { return entries_; }

    /// u32 qubit count, then row-major (re, im) pairs of little-endian f64.
    void append_to(ByteWriter &out) const;
    static ClassicalDensityMatrix read_from(ByteReader &in);
    void write_file(const std::string &path) const;
    static ClassicalDensityMatrix read_file(const std::string &path);

   private:
    std::size_t qubits_;
    std::vector<complex> entries_;
};

/// tr(rho P).
double pauli_expectation(const ClassicalDensityMatrix &rho, const PauliMask &pauli);

enum class PauliBasis : std::uint8_t { X = 0, Y = 1, Z = 2 };

char basis_letter(PauliBasis basis) noexcept;
/// 'X', 'Y' or 'Z' (InconsistentInputsError otherwise).
PauliBasis parse_basis(char letter);

/// Outcome distribution after rotating qubit t into bases[t]; bit t of the
/// outcome index is qubit t, and outcome bit 1 means eigenvalue -1.
std::vector<double> born_probabilities(const ClassicalDensityMatrix &rho, std::span<const PauliBasis> bases);

/// One shot, reading a single uniform draw from rng.
BitVector simulate_measure(const ClassicalDensityMatrix &rho, std::span<const PauliBasis> bases, RandomStream &rng);
/// Letter form; InconsistentInputsError on anything other than X, Y, Z.
BitVector simulate_measure(const ClassicalDensityMatrix &rho, std::string_view bases, RandomStream &rng);

using Observable = std::variant<PauliMask, DenseObservable>;

/// Lazily hands out rho. The measurement phase reads it; the estimation
/// phase is never given one.
using DensitySource = std::function<const ClassicalDensityMatrix &()>;

struct ShadowPair {
    std::size_t copies = 0;
    std::uint64_t seed = 0;
    std::function<BitVector(const DensitySource &rho, std::size_t copies, const SharedRandomness &rng)> measure;
    std::function<double(const Observable &obs, const BitVector &shadow)> estimate;
};

inline constexpr std::size_t kDefaultShadowGroups = 5;

/**
 * Random single-qubit Pauli bases, one round per copy. Round r reads its
 * own child stream rng.derive(r). Each qubit costs 3 bits a round: the
 * basis code (X = 0, Y = 1, Z = 2) in 2 bits, then the outcome. Estimation
 * is the median of `groups` means of the single-round values
 * 3^|supp P| prod (-1)^outcome (or 0 on a basis mismatch).
 */
ShadowPair reference_shadow_pair(std::size_t copies, std::uint64_t seed, std::size_t groups = kDefaultShadowGroups);

/// The shadow as a one-way message (tag 6, main bits = shadow length, no side info).
struct ShadowProtocol {
    ShadowPair pair;

    ProtocolMessage alice(const ClassicalDensityMatrix &rho) const;
    ProtocolMessage alice(const ClassicalDensityMatrix &rho, const SharedRandomness &rng) const;
    /// Alice forms |psi><psi| first.
    ProtocolMessage alice_pure(std::span<const double> amplitudes) const;
    double bob(const ProtocolMessage &msg, const Observable &obs) const;
    static BitVector shadow_of(const ProtocolMessage &msg);
};

ShadowProtocol to_one_way_protocol(ShadowPair pair);

}  // namespace qcomm
