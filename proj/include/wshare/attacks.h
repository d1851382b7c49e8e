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

#ifndef WSHARE_ATTACKS_H
#define WSHARE_ATTACKS_H

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wshare/rng.h"
#include "wshare/statevec.h"
#include "wshare/teleport.h"

namespace wshare {

// Register labels used for every round.
inline constexpr std::string_view kAliceQubit = "a";
inline constexpr std::string_view kBobQubit = "b";
inline constexpr std::string_view kHomeQubit = "c";
inline constexpr std::string_view kEveQubit = "e";

enum class AttackKind {
    None,
    Imra,  // intercept, measure in Z, resend the matching eigenstate
    Isra,  // intercept, store coherently, resend x|0> + y|1>
    Ema,   // CNOT the travel qubit onto a |0> ancilla
};

std::string_view to_string(AttackKind kind);
/// Accepts "none", "imra", "isra", "ema".
std::optional<AttackKind> parse_attack_kind(std::string_view text);

/// Adversary on the Charlie -> Bob leg. Every round is attacked the same way.
struct AttackModel {
    AttackKind kind = AttackKind::None;
    /// Fake-qubit amplitudes for ISRA (real, x^2 + y^2 = 1).
    double x = 1.0;
    double y = 0.0;

    static AttackModel none() { return {}; }
    static AttackModel imra() { return {AttackKind::Imra, 1.0, 0.0}; }
    static AttackModel isra(double x, double y);
    /// ISRA with x = sqrt(1 - y^2).
    static AttackModel isra(double y);
    static AttackModel ema() { return {AttackKind::Ema, 1.0, 0.0}; }

    void validate() const;
    bool active() const { return kind != AttackKind::None; }
};

/// What Eve keeps from one attacked round.
struct EveRecord {
    std::size_t round = 0;
    AttackKind kind = AttackKind::None;
    /// IMRA: her Z outcome on the intercepted qubit.
    std::optional<int> measured_bit;
    /// ISRA: the stored original qubit. EMA: the ancilla. Lives in the round's
    /// register.
    std::optional<Label> held_qubit;
};

/// A round register after the adversary has acted.
struct Interception {
    /// Register ordered (a, b, c) or (a, b, c, e).
    StateVector state;
    std::optional<EveRecord> record;
    /// Probability of this branch when enumerating (1 for deterministic attacks).
    double probability = 1.0;
};

Interception imra_intercept(const StateVector& round, std::size_t index, Rng& rng);
/// Both IMRA branches with their probabilities.
std::vector<Interception> imra_branches(const StateVector& round, std::size_t index);
Interception isra_intercept(const StateVector& round, double x, double y, std::size_t index);
Interception ema_intercept(const StateVector& round, std::size_t index);

/// Dispatches on the attack kind. A `None` attack returns the round untouched
/// with no record.
Interception intercept(const AttackModel& attack, const StateVector& round, std::size_t index, Rng& rng);
std::vector<Interception> enumerate_interceptions(const AttackModel& attack, const StateVector& round,
                                                  std::size_t index);

/// Raised when an operation is invoked in the wrong protocol phase.
class StateError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Fidelity of Eve's best stand-in for Bob's qubit after Alice's teleport.
///
/// Eve hears the broadcast Bell bits and applies Bob's correction to the qubit
/// she holds: the stored original (ISRA), her ancilla (EMA), or a fresh copy
/// of the eigenstate she measured (IMRA). Returns nothing when there is no
/// attack. Throws StateError if `teleported` is empty.
std::optional<double> eve_recover_attempt(const AttackModel& attack, const std::optional<EveRecord>& record,
                                          const std::optional<TeleportResult>& teleported, const Message& message);

/// eve_recover_attempt averaged over every Bell branch of a teleport through
/// `channel` (a distilled round register).
std::optional<double> eve_expected_recovery(const AttackModel& attack, const std::optional<EveRecord>& record,
                                            const StateVector& channel, const Message& message);

}  // namespace wshare

#endif
