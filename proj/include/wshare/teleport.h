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

#ifndef WSHARE_TELEPORT_H
#define WSHARE_TELEPORT_H

#include <array>
#include <string_view>
#include <vector>

#include "wshare/rng.h"
#include "wshare/statevec.h"

namespace wshare {

inline constexpr std::string_view kMessageQubit = "m";

/// Coefficients of the unknown qubit a|0> + b|1> that Alice teleports.
struct Message {
    Complex a{1.0};
    Complex b{0.0};

    /// Throws std::invalid_argument unless |a|^2 + |b|^2 = 1 within 1e-9.
    void validate() const;
    StateVector state(std::string_view label = kMessageQubit) const;

    /// Haar-random single-qubit state.
    static Message random(Rng& rng);
};

/// Pauli fix-up applied by the receiver. XZ means X first, then Z.
enum class Correction { I, X, Z, XZ };

std::string_view to_string(Correction correction);
StateVector apply_correction(const StateVector& state, std::string_view qubit, Correction correction);

/// Receiver corrections indexed by the sender's Bell outcome on (m, a), for a
/// psi+ channel shared on (a, b).
struct CorrectionTable {
    std::array<Correction, 4> entries{};

    Correction operator[](BellState bell) const { return entries[static_cast<std::size_t>(bell)]; }
};

/// Derives the table by trying every Pauli fix-up on each Bell branch of a
/// generic message sent over psi+, keeping the one that restores it exactly.
CorrectionTable build_correction_table();
/// The derived table, computed once.
const CorrectionTable& psi_plus_corrections();

struct TeleportResult {
    BellState outcome = BellState::PhiPlus;
    double probability = 0;
    Correction correction = Correction::I;
    /// Register right after the Bell measurement, before any correction.
    StateVector measured;
    /// Register after the receiver's correction.
    StateVector corrected;
    /// Receiver's reduced-state fidelity to the message.
    double fidelity = 0;
};

/// Teleports `message` over a channel register holding `sender` and
/// `receiver` (possibly entangled with further qubits, e.g. an eavesdropper's).
TeleportResult teleport(const Message& message, const StateVector& channel, Rng& rng,
                        std::string_view sender = "a", std::string_view receiver = "b");

/// Every possible Bell branch of the same procedure, with exact probabilities.
std::vector<TeleportResult> teleport_branches(const Message& message, const StateVector& channel,
                                              std::string_view sender = "a", std::string_view receiver = "b");

/// Probability-weighted receiver fidelity over all branches.
double expected_fidelity(const Message& message, const StateVector& channel, std::string_view sender = "a",
                         std::string_view receiver = "b");

/// The pair left after an entangle-measure attack and a home outcome of 0:
/// (|100> + |011>)/sqrt2 on (a, b, e).
StateVector ema_channel();

struct EmaBranch {
    BellState outcome = BellState::PhiPlus;
    double weight = 0;
    /// Normalized (b, e) state; the phase is kept, so summing
    /// sqrt(weight) |outcome>_ma |residual>_be reassembles the joint state.
    StateVector residual;
};

/// Four-way split of |message>_m (x) ema_channel() in the Bell basis of (m, a).
std::vector<EmaBranch> ema_decomposition(const Message& message);

}  // namespace wshare

#endif
