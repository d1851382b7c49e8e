// Copyright 2026 The wshare Authors
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

#ifndef WSHARE_TEST_UTIL_H
#define WSHARE_TEST_UTIL_H

#include <cmath>
#include <utility>
#include <vector>

#include "wshare/rng.h"
#include "wshare/statevec.h"

namespace wshare::testing {

inline Rng& shared_rng() {
    static Rng rng(20071118);
    return rng;
}

/// Random normalized state; amplitudes drawn uniformly from the unit square
/// then normalized (not Haar, but dense and generic).
inline StateVector random_state(std::vector<Label> labels, Rng& rng) {
    std::vector<Complex> amps(std::size_t{1} << labels.size());
    for (auto& a : amps) {
        a = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
    }
    return StateVector::normalized(std::move(amps), std::move(labels));
}

/// Raw superposition sum_k c_k |s_k>, all terms over the same label order.
/// Independent of the library's tensor/projection code paths.
inline std::vector<Complex> superpose(const std::vector<std::pair<Complex, std::vector<Complex>>>& terms) {
    std::vector<Complex> out(terms.front().second.size());
    for (const auto& [coef, amps] : terms) {
        for (std::size_t i = 0; i < amps.size(); ++i) {
            out[i] += coef * amps[i];
        }
    }
    return out;
}

/// Kronecker product of raw amplitude vectors (big-endian, left is high).
inline std::vector<Complex> kron(const std::vector<Complex>& l, const std::vector<Complex>& r) {
    std::vector<Complex> out(l.size() * r.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            out[i * r.size() + j] = l[i] * r[j];
        }
    }
    return out;
}

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

inline std::vector<Complex> ket0() { return {1.0, 0.0}; }
inline std::vector<Complex> ket1() { return {0.0, 1.0}; }
inline std::vector<Complex> ket_plus() { return {kInvSqrt2, kInvSqrt2}; }
inline std::vector<Complex> ket_minus() { return {kInvSqrt2, -kInvSqrt2}; }

/// Number of binomial standard deviations between an observed count and its
/// expectation.
inline double binomial_sigmas(std::size_t hits, std::size_t trials, double p) {
    const double mean = p * static_cast<double>(trials);
    const double sd = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
    return sd == 0 ? (static_cast<double>(hits) == mean ? 0.0 : INFINITY) : std::abs(static_cast<double>(hits) - mean) / sd;
}

}  // namespace wshare::testing

#endif
