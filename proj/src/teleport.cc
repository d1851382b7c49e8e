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

#include "wshare/teleport.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wshare {

namespace {

constexpr std::array<Correction, 4> kCorrections = {Correction::I, Correction::X, Correction::Z, Correction::XZ};

void check_channel(const StateVector& channel, std::string_view sender, std::string_view receiver) {
    if (sender == receiver) {
        throw std::invalid_argument("sender and receiver qubits must differ");
    }
    channel.position(sender);
    channel.position(receiver);
    if (channel.has(kMessageQubit)) {
        throw std::invalid_argument("channel register already holds a message qubit");
    }
}

TeleportResult finish(const Message& message, const BellOutcome& bell, std::string_view receiver,
                      const CorrectionTable& table) {
    TeleportResult result;
    result.outcome = bell.bell;
    result.probability = bell.probability;
    result.correction = table[bell.bell];
    result.measured = *bell.post_state;
    result.corrected = apply_correction(result.measured, receiver, result.correction);
    result.fidelity = reduced_fidelity(result.corrected, receiver, message.state());
    return result;
}

}  // namespace

void Message::validate() const {
    const double n2 = std::norm(a) + std::norm(b);
    if (std::abs(n2 - 1.0) > 1e-9) {
        throw std::invalid_argument("message coefficients are not normalized (|a|^2+|b|^2 = " + std::to_string(n2) +
                                    ")");
    }
}

StateVector Message::state(std::string_view label) const {
    validate();
    return make_message_state(a, b, Label(label));
}

Message Message::random(Rng& rng) {
    // Uniform on the Bloch sphere.
    const double cos_theta = 1.0 - 2.0 * rng.uniform();
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double half = std::acos(std::clamp(cos_theta, -1.0, 1.0)) / 2.0;
    return Message{Complex{std::cos(half)}, std::polar(std::sin(half), phi)};
}

std::string_view to_string(Correction correction) {
    switch (correction) {
        case Correction::I:
            return "I";
        case Correction::X:
            return "X";
        case Correction::Z:
            return "Z";
        case Correction::XZ:
            return "XZ";
    }
    return "?";
}

StateVector apply_correction(const StateVector& state, std::string_view qubit, Correction correction) {
    switch (correction) {
        case Correction::I:
            return state;
        case Correction::X:
            return apply_x(state, qubit);
        case Correction::Z:
            return apply_z(state, qubit);
        case Correction::XZ:
            return apply_z(apply_x(state, qubit), qubit);
    }
    return state;
}

CorrectionTable build_correction_table() {
    // Generic enough that no two Pauli fix-ups agree on it.
    const Message probe{Complex{0.6}, std::polar(0.8, 0.7)};
    const auto joint = tensor(probe.state(), make_bell_state(BellState::PsiPlus, "a", "b"));
    const auto target = probe.state("b");

    CorrectionTable table;
    for (const auto& bell : enumerate_bell(joint, kMessageQubit, "a")) {
        int found = 0;
        for (Correction c : kCorrections) {
            const auto fixed = apply_correction(*bell.post_state, "b", c);
            if (reduced_fidelity(fixed, "b", target) > 1.0 - 1e-9) {
                table.entries[static_cast<std::size_t>(bell.bell)] = c;
                ++found;
            }
        }
        if (found != 1) {
            throw std::logic_error("no unique correction for Bell outcome " + std::string(to_string(bell.bell)));
        }
    }
    return table;
}

const CorrectionTable& psi_plus_corrections() {
    static const CorrectionTable table = build_correction_table();
    return table;
}

TeleportResult teleport(const Message& message, const StateVector& channel, Rng& rng, std::string_view sender,
                        std::string_view receiver) {
    check_channel(channel, sender, receiver);
    const auto joint = tensor(message.state(), channel);
    const auto bell = bell_measure(joint, kMessageQubit, sender, rng);
    return finish(message, bell, receiver, psi_plus_corrections());
}

std::vector<TeleportResult> teleport_branches(const Message& message, const StateVector& channel,
                                              std::string_view sender, std::string_view receiver) {
    check_channel(channel, sender, receiver);
    const auto joint = tensor(message.state(), channel);
    std::vector<TeleportResult> results;
    for (const auto& bell : enumerate_bell(joint, kMessageQubit, sender)) {
        if (bell.post_state) {
            results.push_back(finish(message, bell, receiver, psi_plus_corrections()));
        }
    }
    return results;
}

double expected_fidelity(const Message& message, const StateVector& channel, std::string_view sender,
                         std::string_view receiver) {
    double total = 0;
    for (const auto& r : teleport_branches(message, channel, sender, receiver)) {
        total += r.probability * r.fidelity;
    }
    return total;
}

StateVector ema_channel() {
    const double h = std::numbers::sqrt2 / 2;
    std::vector<Complex> amps(8);
    amps[0b100] = h;
    amps[0b011] = h;
    return StateVector(std::move(amps), {"a", "b", "e"});
}

std::vector<EmaBranch> ema_decomposition(const Message& message) {
    const auto joint = tensor(message.state(), ema_channel());
    std::vector<EmaBranch> branches;
    for (BellState bell : kBellStates) {
        const auto proj = project_out(joint, make_bell_state(bell, Label(kMessageQubit), "a"));
        EmaBranch branch;
        branch.outcome = bell;
        branch.weight = proj.probability;
        if (proj.remainder) {
            branch.residual = reorder(*proj.remainder, {"b", "e"});
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

}  // namespace wshare
