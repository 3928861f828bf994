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

#include "qcomm/dense_observable.h"

#include <cmath>
#include <string>

#include "qcomm/bits.h"
#include "qcomm/errors.h"
#include "qcomm/exact_state.h"
#include "qcomm/pauli.h"

namespace qcomm {

namespace {

double norm2(std::span<const double> v) {
    double s = 0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

}  // namespace

DenseObservable::DenseObservable(std::size_t qubits, std::vector<double> entries)
    : qubits_(qubits), entries_(std::move(entries)) {
    if (qubits_ > kMaxQubits) {
        throw DimensionError("dense observables are limited to " + std::to_string(kMaxQubits) + " qubits");
    }
    std::size_t dim = dimension();
    if (entries_.size() != dim * dim) {
        throw DimensionError("observable on " + std::to_string(qubits_) + " qubits needs " +
                             std::to_string(dim * dim) + " entries");
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r + 1; c < dim; ++c) {
            if (entries_[r * dim + c] != entries_[c * dim + r]) {
                throw InconsistentInputsError("observable is not symmetric at (" + std::to_string(r) + ", " +
                                              std::to_string(c) + ")");
            }
        }
    }
}

DenseObservable DenseObservable::zero(std::size_t qubits) {
    std::size_t dim = std::size_t{1} << qubits;
    return DenseObservable(qubits, std::vector<double>(dim * dim, 0.0));
}

DenseObservable DenseObservable::identity(std::size_t qubits) {
    std::size_t dim = std::size_t{1} << qubits;
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        e[k * dim + k] = 1;
    }
    return DenseObservable(qubits, std::move(e));
}

DenseObservable DenseObservable::from_pauli(const PauliMask &pauli) {
    std::size_t n = pauli.qubits();
    if (n > kMaxQubits) {
        throw DimensionError("Pauli too wide for a dense observable");
    }
    std::size_t dim = std::size_t{1} << n;
    std::uint64_t x = pauli.x_mask().to_word();
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t y = 0; y < dim; ++y) {
        e[y * dim + (y ^ x)] = pauli.entry(y, y ^ x);
    }
    return DenseObservable(n, std::move(e));
}

std::vector<double> DenseObservable::apply(std::span<const double> v) const {
    std::size_t dim = dimension();
    if (v.size() != dim) {
        throw DimensionError("vector length does not match the observable");
    }
    std::vector<double> out(dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
        const double *row = &entries_[r * dim];
        double s = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            s += row[c] * v[c];
        }
        out[r] = s;
    }
    return out;
}

double DenseObservable::quadratic_form(std::span<const double> v) const {
    auto w = apply(v);
    double s = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        s += v[k] * w[k];
    }
    return s;
}

DenseObservable &DenseObservable::require_norm_bounded() {
    double norm = operator_norm(*this);
    if (norm > 1 + 1e-9) {
        throw NumericError("observable operator norm " + std::to_string(norm) + " exceeds 1");
    }
    norm_bounded_ = true;
    return *this;
}

double operator_norm(const DenseObservable &obs, std::size_t max_iterations) {
    std::size_t dim = obs.dimension();
    bool all_zero = true;
    for (double e : obs.entries()) {
        all_zero = all_zero && e == 0;
    }
    if (all_zero) {
        return 0;
    }
    std::vector<double> v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        v[k] = 1 + 0.5 * static_cast<double>(mix64(k) >> 11) * 0x1.0p-53;
    }
    double scale = norm2(v);
    for (auto &x : v) {
        x /= scale;
    }
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        auto u = obs.apply(obs.apply(v));
        double s = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            s += v[k] * u[k];
        }
        double residual = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            double r = u[k] - s * v[k];
            residual += r * r;
        }
        residual = std::sqrt(residual);
        double un = norm2(u);
        if (un == 0) {
            return 0;
        }
        if (residual <= 1e-10 * s) {
            return std::sqrt(s);
        }
        for (std::size_t k = 0; k < dim; ++k) {
            v[k] = u[k] / un;
        }
    }
    throw NumericError("operator norm did not converge in " + std::to_string(max_iterations) + " iterations");
}

double expectation(const ExactState &state, const DenseObservable &obs) {
    if (state.qubits() != obs.qubits()) {
        throw DimensionError("state has " + std::to_string(state.qubits()) + " qubits, observable has " +
                             std::to_string(obs.qubits()));
    }
    return obs.quadratic_form(state.to_dense_amplitudes());
}

}  // namespace qcomm
