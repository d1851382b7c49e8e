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

#include "wshare/analytic.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wshare {

namespace {

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

StateVector fresh_round() {
    return make_w_state({Label(kAliceQubit), Label(kBobQubit), Label(kHomeQubit)});
}

struct Weighted {
    double home_probability = 0;  // P(home outcome), summed over attack branches
    double violation = 0;         // P(home outcome and rule broken)
};

/// Sums over Eve's branches, Charlie's Z outcome and both travel outcomes.
Weighted enumerate_round(const AttackModel& attack, Basis basis, int home_outcome, CheckerMode mode) {
    Weighted w;
    for (const auto& icp : enumerate_interceptions(attack, fresh_round(), 1)) {
        const auto home = enumerate_qubit(icp.state, kHomeQubit, Basis::Z)[static_cast<std::size_t>(home_outcome)];
        if (!home.post_state) {
            continue;
        }
        const double p_home = icp.probability * home.probability;
        w.home_probability += p_home;
        for (const auto& alice : enumerate_qubit(*home.post_state, kAliceQubit, basis)) {
            if (!alice.post_state) {
                continue;
            }
            for (const auto& bob : enumerate_qubit(*alice.post_state, kBobQubit, basis)) {
                if (violated_rule(basis, home_outcome, alice.outcome, bob.outcome, mode) != Rule::None) {
                    w.violation += p_home * alice.probability * bob.probability;
                }
            }
        }
    }
    return w;
}

}  // namespace

void IsraParams::validate() const {
    check_unit(y, "y");
    check_unit(p, "p");
    check_unit(d, "d");
    if (n < 1) {
        throw std::invalid_argument("n must be at least 1");
    }
}

double bell_yield() {
    return 2.0 / 3.0;
}

std::array<double, 2> imra_outcome_probs() {
    return {2.0 / 3.0, 1.0 / 3.0};
}

IsraCaseProbs isra_case_probs(double y, double p, double d) {
    check_unit(y, "y");
    check_unit(p, "p");
    check_unit(d, "d");
    return {p * d * y * y / 3.0, p * d / 3.0};
}

double isra_success_single(double y, double p, double d) {
    const auto c = isra_case_probs(y, p, d);
    return 1.0 - c.home1 - c.home0;
}

double isra_success_sequence(const IsraParams& params) {
    params.validate();
    return std::pow(isra_success_single(params.y, params.p, params.d), static_cast<double>(params.n));
}

double round_detection_probability(const AttackModel& attack, double p, double d, CheckerMode mode) {
    check_unit(p, "p");
    check_unit(d, "d");
    attack.validate();
    double total = 0;
    for (int home : {0, 1}) {
        total += p * enumerate_round(attack, Basis::Z, home, mode).violation;
        total += (1.0 - p) * enumerate_round(attack, Basis::X, home, mode).violation;
    }
    return d * total;
}

std::optional<double> conditional_detection_probability(const AttackModel& attack, Basis basis, int home_outcome,
                                                        CheckerMode mode) {
    if (home_outcome != 0 && home_outcome != 1) {
        throw std::invalid_argument("home outcome must be 0 or 1");
    }
    attack.validate();
    const auto w = enumerate_round(attack, basis, home_outcome, mode);
    if (w.home_probability <= kZeroProbability) {
        return std::nullopt;
    }
    return w.violation / w.home_probability;
}

double ema_x_round_detection() {
    return *conditional_detection_probability(AttackModel::ema(), Basis::X, 0, CheckerMode::Strict);
}

double isra_x_round_detection(double x, double y) {
    return *conditional_detection_probability(AttackModel::isra(x, y), Basis::X, 0, CheckerMode::Strict);
}

}  // namespace wshare
