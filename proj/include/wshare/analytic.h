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

#ifndef WSHARE_ANALYTIC_H
#define WSHARE_ANALYTIC_H

#include <array>
#include <cstddef>
#include <optional>

#include "wshare/attacks.h"
#include "wshare/protocol.h"

namespace wshare {

/// Store-and-resend attack parameters; x = sqrt(1 - y^2) is implied.
struct IsraParams {
    double y = 0;
    double p = 0;
    double d = 0;
    std::size_t n = 1;

    void validate() const;
};

/// Probability that a home Z measurement on |W> leaves a psi+ pair: 2/3.
double bell_yield();

/// Eve's Z outcome probabilities on an intercepted W travel qubit: (2/3, 1/3).
std::array<double, 2> imra_outcome_probs();

struct IsraCaseProbs {
    /// Caught through |011>: home outcome 1, Z directive.
    double home1 = 0;
    /// Caught through x|000> + y|110>: home outcome 0, Z directive.
    double home0 = 0;
};

/// (p d y^2 / 3, p d / 3).
IsraCaseProbs isra_case_probs(double y, double p, double d);
/// 1 - p d (1 + y^2) / 3: one round escapes detection.
double isra_success_single(double y, double p, double d);
/// isra_success_single ^ n: the whole sequence escapes detection.
double isra_success_sequence(const IsraParams& params);

// The quantities below come from exhaustive branch enumeration with the
// state-vector simulator, not from closed forms.

/// Probability that one attacked round is selected for detection and breaks a
/// checking rule.
double round_detection_probability(const AttackModel& attack, double p, double d, CheckerMode mode);

/// Probability that a detection round breaks a rule, given its directive basis
/// and Charlie's home outcome. Empty if that home outcome cannot occur.
std::optional<double> conditional_detection_probability(const AttackModel& attack, Basis basis, int home_outcome,
                                                        CheckerMode mode);

/// Strict-mode detection of an entangle-measure round with an X directive and
/// home outcome 0 (enumerates to 1/2).
double ema_x_round_detection();

/// Strict-mode detection of a store-and-resend round with an X directive and
/// home outcome 0 (enumerates to 1/2 for every x, y).
double isra_x_round_detection(double x, double y);

}  // namespace wshare

#endif
