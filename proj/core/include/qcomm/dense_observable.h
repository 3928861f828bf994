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

class ExactState;
class PauliMask;

/// Real symmetric 2^n x 2^n matrix, row major.
class DenseObservable {
   public:
    static constexpr std::size_t kMaxQubits = 12;

    DenseObservable() = default;
    /// DimensionError on a wrong entry count or n > kMaxQubits;
    /// InconsistentInputsError unless entries[r][c] == entries[c][r] exactly.
    DenseObservable(std::size_t qubits, std::vector<double> entries);

    static DenseObservable zero(std::size_t qubits);
    static DenseObservable identity(std::size_t qubits);
    static DenseObservable from_pauli(const PauliMask &pauli);

    std::size_t qubits() const noexcept { return qubits_; }
    std::size_t dimension() const noexcept { return std::size_t{1} << qubits_; }
    double at(std::size_t row, std::size_t col) const noexcept { return entries_[row * dimension() + col]; }
    std::span<const double> entries() const noexcept { return entries_; }

    std::vector<double> apply(std::span<const double> v) const;
    double quadratic_form(std::span<const double> v) const;

    /// Marks the observable as norm-bounded after checking ||O||_op <= 1 + 1e-9
    /// (NumericError otherwise).
    DenseObservable &require_norm_bounded();
    bool norm_bounded() const noexcept { return norm_bounded_; }

    bool operator==(const DenseObservable &other) const = default;

   private:
    std::size_t qubits_ = 0;
    std::vector<double> entries_{0.0};
    bool norm_bounded_ = false;
};

/// Largest absolute eigenvalue, by power iteration on O^2. Stops once
/// ||O^2 v - s v|| <= 1e-10 s for the Rayleigh value s; NumericError if
/// that does not happen within max_iterations.
double operator_norm(const DenseObservable &obs, std::size_t max_iterations = 200000);

double expectation(const ExactState &state, const DenseObservable &obs);

}  // namespace qcomm
