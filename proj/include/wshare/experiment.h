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

#ifndef WSHARE_EXPERIMENT_H
#define WSHARE_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wshare/attacks.h"
#include "wshare/protocol.h"
#include "wshare/teleport.h"

namespace wshare {

enum class OutputFormat { Text, Csv, Records };

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);

/// Cartesian grid of protocol runs. `y` is only meaningful (and only allowed)
/// for the store-and-resend attack.
struct SweepGrid {
    std::vector<std::size_t> n = {10};
    std::vector<double> d = {0.5};
    std::vector<double> p = {0.5};
    std::vector<double> y;
    AttackKind attack = AttackKind::None;
    CheckerMode mode = CheckerMode::PaperAnalytic;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    Message message{Complex{0.6}, Complex{0.8}};
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 1;

    /// Throws std::invalid_argument on an empty axis, a misplaced y axis,
    /// out-of-range values or fewer than 100 trials.
    void validate() const;
};

struct SweepRow {
    std::size_t n = 0;
    double d = 0;
    double p = 0;
    AttackKind attack = AttackKind::None;
    std::optional<double> y;
    CheckerMode mode = CheckerMode::PaperAnalytic;
    std::size_t trials = 0;
    std::size_t detections = 0;
    double detection_rate = 0;
    double success_rate = 0;
    /// sqrt(r (1 - r) / trials).
    double std_error = 0;
    /// Distilled pairs over unmeasured rounds, pooled across passing trials.
    std::optional<double> yield;
    std::optional<double> mean_fidelity;
    std::optional<double> mean_eve_fidelity;
    /// Closed-form sequence success probability, store-and-resend rows only.
    std::optional<double> analytic_success;
};

/// Rows come out in grid order (n, d, p, y). Trial t of grid point g uses the
/// seed derive_seed(seed, {g, t}), so results do not depend on threading.
std::vector<SweepRow> run_sweep(const SweepGrid& grid);
void write_sweep(std::ostream& os, std::span<const SweepRow> rows, OutputFormat format);

/// Success-probability curves in three panels: vary y, vary d, vary p.
struct CurveSpec {
    std::vector<double> vary_y = {0.0, 0.5, 1.0};
    std::vector<double> vary_d = {0.25, 0.5, 1.0};
    std::vector<double> vary_p = {0.25, 0.5, 1.0};
    double fixed_y = 1.0;
    double fixed_p = 0.5;
    double fixed_d = 0.5;
    std::vector<std::size_t> n_points = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};

    void validate() const;
};

struct CurveRow {
    std::string panel;  // "y", "d" or "p"
    double y = 0;
    double p = 0;
    double d = 0;
    std::size_t n = 0;
    double success = 0;
};

std::vector<CurveRow> compute_curves(const CurveSpec& spec);
void write_curves(std::ostream& os, std::span<const CurveRow> rows, OutputFormat format);

/// Transcript, per-round table or records for one run.
void write_run(std::ostream& os, const RunOutcome& outcome, OutputFormat format);

/// Every Bell branch of teleporting `message`, over an honest psi+ pair and
/// over the pair left by an entangle-measure attack.
void write_teleport_demo(std::ostream& os, const Message& message, OutputFormat format);

/// Shortest round-trip decimal rendering used by every emitter.
std::string format_number(double value);

}  // namespace wshare

#endif
