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

#include "wshare/attacks.h"

#include <cmath>
#include <string>

namespace wshare {

namespace {

const std::vector<Label> kThreeParty = {Label(kAliceQubit), Label(kBobQubit), Label(kHomeQubit)};
const std::vector<Label> kFourParty = {Label(kAliceQubit), Label(kBobQubit), Label(kHomeQubit), Label(kEveQubit)};

void check_round(const StateVector& round) {
    round.position(kBobQubit);
    if (round.has(kEveQubit)) {
        throw std::invalid_argument("round register already holds an eavesdropper qubit");
    }
}

Interception resend_after_measurement(const MeasurementBranch& branch, std::size_t index) {
    // The intercepted qubit is gone; Bob receives a fresh eigenstate.
    const auto rest = drop_qubit(*branch.post_state, kBobQubit);
    auto forwarded = basis_ket(Basis::Z, branch.outcome, Label(kBobQubit));
    Interception out{reorder(tensor(rest, forwarded), kThreeParty), EveRecord{}, branch.probability};
    out.record->round = index;
    out.record->kind = AttackKind::Imra;
    out.record->measured_bit = branch.outcome;
    return out;
}

}  // namespace

std::string_view to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::None:
            return "none";
        case AttackKind::Imra:
            return "imra";
        case AttackKind::Isra:
            return "isra";
        case AttackKind::Ema:
            return "ema";
    }
    return "?";
}

std::optional<AttackKind> parse_attack_kind(std::string_view text) {
    for (AttackKind k : {AttackKind::None, AttackKind::Imra, AttackKind::Isra, AttackKind::Ema}) {
        if (text == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

AttackModel AttackModel::isra(double x, double y) {
    AttackModel m{AttackKind::Isra, x, y};
    m.validate();
    return m;
}

AttackModel AttackModel::isra(double y) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::invalid_argument("ISRA amplitude y must lie in [0, 1]");
    }
    return isra(std::sqrt(1.0 - y * y), y);
}

void AttackModel::validate() const {
    if (kind != AttackKind::Isra) {
        return;
    }
    if (!std::isfinite(x) || !std::isfinite(y) || std::abs(x * x + y * y - 1.0) > 1e-9) {
        throw std::invalid_argument("ISRA fake qubit needs x^2 + y^2 = 1 (got x=" + std::to_string(x) +
                                    ", y=" + std::to_string(y) + ")");
    }
}

Interception imra_intercept(const StateVector& round, std::size_t index, Rng& rng) {
    check_round(round);
    return resend_after_measurement(measure_qubit(round, kBobQubit, Basis::Z, rng), index);
}

std::vector<Interception> imra_branches(const StateVector& round, std::size_t index) {
    check_round(round);
    std::vector<Interception> out;
    for (const auto& branch : enumerate_qubit(round, kBobQubit, Basis::Z)) {
        if (branch.post_state) {
            out.push_back(resend_after_measurement(branch, index));
        }
    }
    return out;
}

Interception isra_intercept(const StateVector& round, double x, double y, std::size_t index) {
    AttackModel::isra(x, y);
    check_round(round);
    const auto stored = relabel(round, kBobQubit, Label(kEveQubit));
    const auto fake = make_qubit(x, y, Label(kBobQubit));
    Interception out{reorder(tensor(stored, fake), kFourParty), EveRecord{}, 1.0};
    out.record->round = index;
    out.record->kind = AttackKind::Isra;
    out.record->held_qubit = Label(kEveQubit);
    return out;
}

Interception ema_intercept(const StateVector& round, std::size_t index) {
    check_round(round);
    const auto ancilla = basis_ket(Basis::Z, 0, Label(kEveQubit));
    const auto entangled = apply_cnot(tensor(round, ancilla), kBobQubit, kEveQubit);
    Interception out{reorder(entangled, kFourParty), EveRecord{}, 1.0};
    out.record->round = index;
    out.record->kind = AttackKind::Ema;
    out.record->held_qubit = Label(kEveQubit);
    return out;
}

Interception intercept(const AttackModel& attack, const StateVector& round, std::size_t index, Rng& rng) {
    switch (attack.kind) {
        case AttackKind::None:
            return Interception{round, std::nullopt, 1.0};
        case AttackKind::Imra:
            return imra_intercept(round, index, rng);
        case AttackKind::Isra:
            return isra_intercept(round, attack.x, attack.y, index);
        case AttackKind::Ema:
            return ema_intercept(round, index);
    }
    throw std::invalid_argument("unknown attack kind");
}

std::vector<Interception> enumerate_interceptions(const AttackModel& attack, const StateVector& round,
                                                  std::size_t index) {
    switch (attack.kind) {
        case AttackKind::None:
            return {Interception{round, std::nullopt, 1.0}};
        case AttackKind::Imra:
            return imra_branches(round, index);
        case AttackKind::Isra:
            return {isra_intercept(round, attack.x, attack.y, index)};
        case AttackKind::Ema:
            return {ema_intercept(round, index)};
    }
    throw std::invalid_argument("unknown attack kind");
}

std::optional<double> eve_recover_attempt(const AttackModel& attack, const std::optional<EveRecord>& record,
                                          const std::optional<TeleportResult>& teleported, const Message& message) {
    if (!attack.active()) {
        return std::nullopt;
    }
    if (!teleported) {
        throw StateError("Eve's recovery needs a completed teleportation");
    }
    if (!record || record->kind != attack.kind) {
        throw std::invalid_argument("missing or mismatched Eve record for this attack");
    }

    StateVector held = teleported->measured;
    if (attack.kind == AttackKind::Imra) {
        if (!record->measured_bit) {
            throw std::invalid_argument("IMRA record without a measured bit");
        }
        held = tensor(held, basis_ket(Basis::Z, *record->measured_bit, Label(kEveQubit)));
    } else if (!held.has(kEveQubit)) {
        throw StateError("Eve's qubit is not part of the teleported register");
    }
    const auto fixed = apply_correction(held, kEveQubit, teleported->correction);
    return reduced_fidelity(fixed, kEveQubit, message.state());
}

std::optional<double> eve_expected_recovery(const AttackModel& attack, const std::optional<EveRecord>& record,
                                            const StateVector& channel, const Message& message) {
    if (!attack.active()) {
        return std::nullopt;
    }
    double total = 0;
    for (const auto& branch : teleport_branches(message, channel)) {
        total += branch.probability * *eve_recover_attempt(attack, record, branch, message);
    }
    return total;
}

}  // namespace wshare
