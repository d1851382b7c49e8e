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

#include "wshare/protocol.h"

#include <cmath>
#include <stdexcept>

namespace wshare {

namespace {

std::string join_bits(std::span<const int> bits) {
    std::string out;
    out.reserve(bits.size());
    for (int b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

std::string join_positions(std::span<const std::size_t> positions) {
    std::string out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i) {
            out.push_back(' ');
        }
        out += std::to_string(positions[i]);
    }
    return out;
}

std::string join_directives(std::span<const DetectionDirective> directives) {
    std::string out;
    for (std::size_t i = 0; i < directives.size(); ++i) {
        if (i) {
            out.push_back(' ');
        }
        out += std::to_string(directives[i].position);
        out.push_back(':');
        out += to_string(directives[i].basis);
    }
    return out;
}

void check_probability(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

void check_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("measurement results must be bits");
    }
}

}  // namespace

std::string_view to_string(CheckerMode mode) {
    return mode == CheckerMode::Strict ? "strict" : "paper";
}

std::optional<CheckerMode> parse_checker_mode(std::string_view text) {
    if (text == "paper" || text == "paper_analytic") {
        return CheckerMode::PaperAnalytic;
    }
    if (text == "strict") {
        return CheckerMode::Strict;
    }
    return std::nullopt;
}

void ProtocolConfig::validate() const {
    if (n < 1) {
        throw std::invalid_argument("n must be at least 1");
    }
    check_probability(d, "d");
    check_probability(p, "p");
    if (message) {
        message->validate();
    }
}

Rule violated_rule(Basis basis, int rc, int ra, int rb, CheckerMode mode) {
    check_bit(rc);
    check_bit(ra);
    check_bit(rb);
    if (basis == Basis::Z) {
        if (rc == 0) {
            return (ra ^ rb) == 1 ? Rule::None : Rule::ZHome0;
        }
        return (ra == 0 && rb == 0) ? Rule::None : Rule::ZHome1;
    }
    if (mode == CheckerMode::Strict && rc == 0 && ra != rb) {
        return Rule::XHome0;
    }
    return Rule::None;
}

std::vector<std::size_t> select_detection_positions(std::size_t n, double d, Rng& rng) {
    check_probability(d, "d");
    std::vector<std::size_t> positions;
    for (std::size_t t = 1; t <= n; ++t) {
        if (rng.bernoulli(d)) {
            positions.push_back(t);
        }
    }
    return positions;
}

std::vector<DetectionDirective> assign_bases(std::span<const std::size_t> positions, double p, Rng& rng) {
    check_probability(p, "p");
    std::vector<DetectionDirective> out;
    out.reserve(positions.size());
    for (std::size_t k : positions) {
        out.push_back({k, rng.bernoulli(p) ? Basis::Z : Basis::X});
    }
    return out;
}

CheckReport evaluate_checks(std::span<const DetectionDirective> directives, std::span<const int> rc,
                            std::span<const int> ra, std::span<const int> rb, CheckerMode mode) {
    if (rc.size() != directives.size() || ra.size() != directives.size() || rb.size() != directives.size()) {
        throw std::invalid_argument("check sequences are misaligned");
    }
    CheckReport report;
    for (std::size_t i = 0; i < directives.size(); ++i) {
        const Rule rule = violated_rule(directives[i].basis, rc[i], ra[i], rb[i], mode);
        if (directives[i].basis == Basis::Z) {
            auto& tally = rc[i] == 0 ? report.z_home0 : report.z_home1;
            ++tally.checked;
            tally.violated += rule != Rule::None;
        } else if (mode == CheckerMode::Strict && rc[i] == 0) {
            ++report.x_home0.checked;
            report.x_home0.violated += rule != Rule::None;
        }
        if (rule != Rule::None) {
            report.offending_rounds.push_back(directives[i].position);
        }
    }
    return report;
}

std::vector<std::size_t> distill_positions(std::span<const int> home_results) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < home_results.size(); ++i) {
        check_bit(home_results[i]);
        if (home_results[i] == 0) {
            out.push_back(i + 1);
        }
    }
    return out;
}

DistilledPairSet extract_pairs(std::span<const RoundState> rounds, std::span<const std::size_t> round_positions) {
    static const StateVector kPsiPlus = make_bell_state(BellState::PsiPlus, Label(kAliceQubit), Label(kBobQubit));
    DistilledPairSet set;
    for (std::size_t pos : round_positions) {
        if (pos < 1 || pos > rounds.size()) {
            throw std::invalid_argument("round position " + std::to_string(pos) + " out of range");
        }
        const auto& round = rounds[pos - 1];
        if (round.detection_measured) {
            throw std::invalid_argument("round " + std::to_string(pos) + " was consumed by detection");
        }
        if (round.home_outcome != 0) {
            throw std::invalid_argument("round " + std::to_string(pos) + " has no home outcome 0");
        }
        DistilledPair pair;
        pair.round = pos;
        pair.state = drop_qubit(round.state, kHomeQubit);
        pair.bell_fidelity =
            fidelity(reduced_density(pair.state, {Label(kAliceQubit), Label(kBobQubit)}), kPsiPlus);
        set.pairs.push_back(std::move(pair));
    }
    return set;
}

RunOutcome run_protocol(const ProtocolConfig& config, const AttackModel& attack) {
    config.validate();
    attack.validate();
    Rng rng(config.seed);

    RunOutcome out;
    out.config = config;
    out.attack = attack;
    auto say = [&out](std::string sender, std::string topic, std::string payload) {
        out.transcript.push_back({std::move(sender), std::move(topic), std::move(payload)});
    };

    // Transmission mode.
    say("charlie", "mode", "transmission");
    out.rounds.reserve(config.n);
    const auto w = make_w_state({Label(kAliceQubit), Label(kBobQubit), Label(kHomeQubit)});
    for (std::size_t t = 1; t <= config.n; ++t) {
        auto icp = intercept(attack, w, t, rng);
        RoundState round;
        round.index = t;
        round.state = std::move(icp.state);
        round.eve = std::move(icp.record);
        out.rounds.push_back(std::move(round));
    }
    say("charlie", "distributed", std::to_string(config.n));

    // Detecting mode: Charlie's home measurements are always Z.
    say("charlie", "mode", "detecting");
    out.detection_positions = select_detection_positions(config.n, config.d, rng);
    std::vector<int> rc;
    rc.reserve(out.detection_positions.size());
    for (std::size_t k : out.detection_positions) {
        auto& round = out.rounds[k - 1];
        auto branch = measure_qubit(round.state, kHomeQubit, Basis::Z, rng);
        round.state = std::move(*branch.post_state);
        round.detection_measured = true;
        round.rc = branch.outcome;
        rc.push_back(branch.outcome);
    }
    out.directives = assign_bases(out.detection_positions, config.p, rng);
    say("charlie", "directives", join_directives(out.directives));

    std::vector<int> ra;
    std::vector<int> rb;
    for (const auto& dir : out.directives) {
        auto& round = out.rounds[dir.position - 1];
        round.directive = dir.basis;
        auto alice = measure_qubit(round.state, kAliceQubit, dir.basis, rng);
        auto bob = measure_qubit(*alice.post_state, kBobQubit, dir.basis, rng);
        round.state = std::move(*bob.post_state);
        round.ra = alice.outcome;
        round.rb = bob.outcome;
        ra.push_back(alice.outcome);
        rb.push_back(bob.outcome);
    }
    say("alice", "results", join_bits(ra));
    say("bob", "results", join_bits(rb));

    out.report = evaluate_checks(out.directives, rc, ra, rb, config.mode);
    if (out.report.detected()) {
        say("charlie", "verdict", "abort " + join_positions(out.report.offending_rounds));
        return out;
    }
    say("charlie", "verdict", "pass");

    // Teleportation confirmation.
    std::vector<std::size_t> remaining;
    std::vector<int> home;
    for (auto& round : out.rounds) {
        if (round.detection_measured) {
            continue;
        }
        auto branch = measure_qubit(round.state, kHomeQubit, Basis::Z, rng);
        round.state = std::move(*branch.post_state);
        round.home_outcome = branch.outcome;
        remaining.push_back(round.index);
        home.push_back(branch.outcome);
    }
    const auto selected = distill_positions(home);
    std::vector<std::size_t> selected_rounds;
    selected_rounds.reserve(selected.size());
    for (std::size_t s : selected) {
        selected_rounds.push_back(remaining[s - 1]);
    }
    say("charlie", "distilled", join_positions(selected));
    out.distilled = extract_pairs(out.rounds, selected_rounds);
    out.distilled.sequence_positions = selected;

    if (config.message) {
        for (const auto& pair : out.distilled.pairs) {
            auto result = teleport(*config.message, pair.state, rng);
            const auto& eve = out.rounds[pair.round - 1].eve;
            TeleportRecord rec;
            rec.round = pair.round;
            rec.outcome = result.outcome;
            rec.correction = result.correction;
            rec.fidelity = result.fidelity;
            rec.eve_fidelity = eve_recover_attempt(attack, eve, result, *config.message);
            const auto bits = bell_bits(result.outcome);
            say("alice", "bell", std::to_string(pair.round) + ":" + std::to_string(bits[0]) + std::to_string(bits[1]));
            out.teleports.push_back(rec);
        }
    }
    return out;
}

}  // namespace wshare
