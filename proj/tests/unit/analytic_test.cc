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

#include <gtest/gtest.h>

#include <cmath>

using namespace wshare;

namespace {

constexpr double kTol = 1e-12;

}  // namespace

TEST(analytic, constants) {
    EXPECT_NEAR(bell_yield(), 2.0 / 3.0, kTol);
    auto probs = imra_outcome_probs();
    EXPECT_NEAR(probs[0], 2.0 / 3.0, kTol);
    EXPECT_NEAR(probs[1], 1.0 / 3.0, kTol);
}

TEST(isra_case_probs, examples) {
    auto c = isra_case_probs(1.0, 1.0, 1.0);
    EXPECT_NEAR(c.home1, 1.0 / 3.0, kTol);
    EXPECT_NEAR(c.home0, 1.0 / 3.0, kTol);
    auto z = isra_case_probs(0.0, 0.5, 0.5);
    EXPECT_NEAR(z.home1, 0.0, kTol);
    EXPECT_NEAR(z.home0, 0.25 / 3.0, kTol);
}

TEST(isra_success, examples) {
    EXPECT_NEAR(isra_success_single(1, 1, 1), 1.0 / 3.0, kTol);
    EXPECT_NEAR(isra_success_single(0, 0, 0), 1.0, kTol);
    EXPECT_NEAR(isra_success_single(0.5, 0.5, 0.5), 1.0 - 0.25 * 1.25 / 3.0, kTol);
    EXPECT_NEAR(isra_success_sequence({1, 1, 1, 13}), std::pow(1.0 / 3.0, 13), 1e-18);
    EXPECT_LT(isra_success_sequence({1, 1, 1, 13}), 1e-6);
    EXPECT_GT(isra_success_sequence({1, 1, 1, 200}), 0.0);
    EXPECT_NEAR(isra_success_sequence({0.3, 0.0, 0.8, 50}), 1.0, kTol);
    EXPECT_THROW(isra_success_sequence({1.2, 1, 1, 3}), std::invalid_argument);
    EXPECT_THROW(isra_success_sequence({1, 1, 1, 0}), std::invalid_argument);
}

TEST(isra_success, depends_on_p_and_d_only_through_their_product) {
    for (double y : {0.0, 0.3, 1.0}) {
        EXPECT_NEAR(isra_success_single(y, 0.5, 0.8), isra_success_single(y, 0.8, 0.5), kTol);
        EXPECT_NEAR(isra_success_single(y, 0.2, 1.0), isra_success_single(y, 1.0, 0.2), kTol);
    }
}

TEST(isra_success, monotone_and_positive) {
    double prev = 1.0;
    for (std::size_t n = 1; n <= 40; ++n) {
        const double s = isra_success_sequence({0.7, 0.9, 0.6, n});
        EXPECT_LT(s, prev);
        EXPECT_GT(s, 0.0);
        prev = s;
    }
}

TEST(round_detection_probability, isra_enumeration_matches_closed_form) {
    for (int iy = 0; iy < 5; ++iy) {
        for (int ip = 0; ip < 5; ++ip) {
            for (int id = 0; id < 5; ++id) {
                const double y = iy / 4.0;
                const double p = ip / 4.0;
                const double d = id / 4.0;
                const double enumerated =
                    round_detection_probability(AttackModel::isra(y), p, d, CheckerMode::PaperAnalytic);
                EXPECT_NEAR(enumerated, p * d * (1 + y * y) / 3.0, 1e-9) << y << " " << p << " " << d;
                const auto c = isra_case_probs(y, p, d);
                EXPECT_NEAR(enumerated, c.home0 + c.home1, 1e-9);
            }
        }
    }
}

TEST(round_detection_probability, honest_and_ema_in_paper_mode) {
    for (double p : {0.0, 0.5, 1.0}) {
        for (double d : {0.0, 0.5, 1.0}) {
            EXPECT_NEAR(round_detection_probability(AttackModel::none(), p, d, CheckerMode::Strict), 0.0, kTol);
            EXPECT_NEAR(round_detection_probability(AttackModel::ema(), p, d, CheckerMode::PaperAnalytic), 0.0, kTol);
        }
    }
}

TEST(round_detection_probability, imra) {
    // The resent eigenstate always satisfies the Z rules; only X rounds on home 0 catch it.
    for (double p : {0.0, 0.25, 1.0}) {
        for (double d : {0.3, 1.0}) {
            EXPECT_NEAR(round_detection_probability(AttackModel::imra(), p, d, CheckerMode::PaperAnalytic), 0.0,
                        kTol);
            EXPECT_NEAR(round_detection_probability(AttackModel::imra(), p, d, CheckerMode::Strict),
                        (1 - p) * d / 3.0, kTol);
        }
    }
}

TEST(conditional_detection_probability, isra_cases) {
    const double y = 0.6;
    const auto model = AttackModel::isra(y);
    EXPECT_NEAR(*conditional_detection_probability(model, Basis::Z, 1, CheckerMode::PaperAnalytic), y * y, kTol);
    EXPECT_NEAR(*conditional_detection_probability(model, Basis::Z, 0, CheckerMode::PaperAnalytic), 0.5, kTol);
    EXPECT_NEAR(*conditional_detection_probability(model, Basis::X, 0, CheckerMode::PaperAnalytic), 0.0, kTol);
    EXPECT_NEAR(*conditional_detection_probability(model, Basis::X, 1, CheckerMode::Strict), 0.0, kTol);
}

TEST(conditional_detection_probability, strict_x_rounds) {
    EXPECT_NEAR(ema_x_round_detection(), 0.5, kTol);
    // Home 0 leaves psi+ on (a, e) next to the fake qubit on b, so Alice's X
    // outcome is a fair coin independent of Bob's.
    for (double y : {0.0, 0.3, 1.0 / std::sqrt(2.0), 0.9, 1.0}) {
        const double x = std::sqrt(1 - y * y);
        EXPECT_NEAR(isra_x_round_detection(x, y), 0.5, kTol) << y;
    }
    EXPECT_NEAR(*conditional_detection_probability(AttackModel::none(), Basis::X, 0, CheckerMode::Strict), 0.0, kTol);
}
