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

// Supervised W-state entanglement sharing between Alice and Bob.
//
// Charlie prepares n W triples (a_t, b_t, c_t), keeps c_t and sends a_t to
// Alice and b_t to Bob (transmission mode). He then Z-measures a random subset
// of home qubits and publishes the positions with a basis for each (detecting
// mode); Alice and Bob measure their travel qubits in those bases and publish
// the results, which Charlie checks against his own. If the check passes he
// Z-measures the remaining home qubits and announces the positions that came
// out 0: those travel pairs are in psi+ and serve as teleportation channels.

#ifndef WSHARE_PROTOCOL_H
#define WSHARE_PROTOCOL_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wshare/attacks.h"
#include "wshare/rng.h"
#include "wshare/statevec.h"
#include "wshare/teleport.h"

namespace wshare {

enum class CheckerMode {
    /// Z-basis rules only; X-basis rounds always pass.
    PaperAnalytic,
    /// Z-basis rules plus the X-basis correlation rule.
    Strict,
};

std::string_view to_string(CheckerMode mode);
/// Accepts "paper" / "paper_analytic" and "strict".
std::optional<CheckerMode> parse_checker_mode(std::string_view text);

struct ProtocolConfig {
    std::size_t n = 1;
    /// Probability that a home qubit is picked for detection.
    double d = 0.0;
    /// Probability that a detection position is checked in Z (else X).
    double p = 0.0;
    CheckerMode mode = CheckerMode::PaperAnalytic;
    std::uint64_t seed = 0;
    /// When set, Alice teleports this message over every distilled pair.
    std::optional<Message> message;

    void validate() const;
};

/// Positions are 1-based throughout, as announced on the classical channel.
struct DetectionDirective {
    std::size_t position = 0;
    Basis basis = Basis::Z;
};

struct RuleTally {
    std::size_t checked = 0;
    std::size_t violated = 0;
};

struct CheckReport {
    std::vector<std::size_t> offending_rounds;
    RuleTally z_home0;  // Z directive, Rc = 0: Alice and Bob must disagree
    RuleTally z_home1;  // Z directive, Rc = 1: both must read 0
    RuleTally x_home0;  // X directive, Rc = 0: both must agree (strict only)

    bool detected() const { return !offending_rounds.empty(); }
};

enum class Rule { None, ZHome0, ZHome1, XHome0 };

/// The rule a single detection round breaks, if any.
Rule violated_rule(Basis basis, int rc, int ra, int rb, CheckerMode mode);

struct RoundState {
    std::size_t index = 0;
    /// Joint register (a, b, c[, e]) as it evolves through the run.
    StateVector state;
    std::optional<EveRecord> eve;
    bool detection_measured = false;
    std::optional<Basis> directive;
    std::optional<int> rc;
    std::optional<int> ra;
    std::optional<int> rb;
    /// Charlie's confirmation-phase Z outcome on an unmeasured home qubit.
    std::optional<int> home_outcome;
};

struct DistilledPair {
    std::size_t round = 0;
    /// Round register with the home qubit removed: (a, b) or (a, b, e).
    StateVector state;
    /// <psi+| rho_ab |psi+>.
    double bell_fidelity = 0;
};

struct DistilledPairSet {
    /// Indices into the sequence of unmeasured home qubits (1-based).
    std::vector<std::size_t> sequence_positions;
    std::vector<DistilledPair> pairs;
};

struct TeleportRecord {
    std::size_t round = 0;
    BellState outcome = BellState::PhiPlus;
    Correction correction = Correction::I;
    double fidelity = 0;
    std::optional<double> eve_fidelity;
};

/// One classical broadcast.
struct ChannelMessage {
    std::string sender;
    std::string topic;
    std::string payload;
};

struct RunOutcome {
    ProtocolConfig config;
    AttackModel attack;
    std::vector<std::size_t> detection_positions;
    std::vector<DetectionDirective> directives;
    CheckReport report;
    DistilledPairSet distilled;
    std::vector<TeleportRecord> teleports;
    std::vector<RoundState> rounds;
    std::vector<ChannelMessage> transcript;

    bool aborted() const { return report.detected(); }
    std::size_t unmeasured_count() const { return rounds.size() - detection_positions.size(); }
};

std::vector<std::size_t> select_detection_positions(std::size_t n, double d, Rng& rng);
std::vector<DetectionDirective> assign_bases(std::span<const std::size_t> positions, double p, Rng& rng);

/// Sequences are aligned by index with `directives`. Throws
/// std::invalid_argument on a length mismatch or a non-bit value.
CheckReport evaluate_checks(std::span<const DetectionDirective> directives, std::span<const int> rc,
                            std::span<const int> ra, std::span<const int> rb, CheckerMode mode);

/// 1-based positions whose home outcome is 0.
std::vector<std::size_t> distill_positions(std::span<const int> home_results);

/// Collects the travel pairs of the given rounds (1-based round indices).
/// Throws std::invalid_argument for a detection-measured round or one whose
/// home qubit has not come out 0.
DistilledPairSet extract_pairs(std::span<const RoundState> rounds, std::span<const std::size_t> round_positions);

RunOutcome run_protocol(const ProtocolConfig& config, const AttackModel& attack);

}  // namespace wshare

#endif
