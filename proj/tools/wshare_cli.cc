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

// Command-line front end: run | sweep | curves | teleport-demo.
//
// Exit status: 0 success, 1 usage error, 2 protocol aborted (run only).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wshare/analytic.h"
#include "wshare/experiment.h"
#include "wshare/protocol.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAborted = 2;

struct Options {
    std::vector<std::size_t> n;
    std::vector<double> d;
    std::vector<double> p;
    std::vector<double> isra_y;
    std::string mode = "paper";
    std::string attack = "none";
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string out;
    std::size_t threads = 1;
    double msg_a = 0.6;
    double msg_b = 0.8;
    double msg_phase = 0.0;
    std::vector<double> vary_y;
    std::vector<double> vary_d;
    std::vector<double> vary_p;
    std::optional<double> fix_y;
    std::optional<double> fix_p;
    std::optional<double> fix_d;
};

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

template <typename T>
T single(const std::vector<T>& values, const char* name, T fallback) {
    if (values.empty()) {
        return fallback;
    }
    if (values.size() > 1) {
        throw UsageError(std::string("--") + name + " takes a single value for this command");
    }
    return values.front();
}

wshare::CheckerMode mode_of(const Options& o) {
    auto m = wshare::parse_checker_mode(o.mode);
    if (!m) {
        throw UsageError("unknown --mode '" + o.mode + "' (expected paper or strict)");
    }
    return *m;
}

wshare::AttackKind attack_of(const Options& o) {
    auto k = wshare::parse_attack_kind(o.attack);
    if (!k) {
        throw UsageError("unknown --attack '" + o.attack + "' (expected none, imra, isra or ema)");
    }
    return *k;
}

wshare::OutputFormat format_of(const Options& o) {
    auto f = wshare::parse_output_format(o.format);
    if (!f) {
        throw UsageError("unknown --format '" + o.format + "' (expected text, csv or records)");
    }
    return *f;
}

wshare::Message message_of(const Options& o) {
    wshare::Message m{wshare::Complex{o.msg_a}, std::polar(o.msg_b, o.msg_phase)};
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return m;
}

/// Writes to --out when given, stdout otherwise.
template <typename Fn>
void emit(const Options& o, Fn&& fn) {
    if (o.out.empty()) {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file '" + o.out + "'");
    }
    fn(file);
}

int cmd_run(const Options& o) {
    wshare::ProtocolConfig config;
    config.n = single<std::size_t>(o.n, "n", 100);
    config.d = single(o.d, "d", 0.5);
    config.p = single(o.p, "p", 0.5);
    config.mode = mode_of(o);
    config.seed = o.seed;
    config.message = message_of(o);

    wshare::AttackModel attack;
    switch (attack_of(o)) {
        case wshare::AttackKind::None:
            break;
        case wshare::AttackKind::Imra:
            attack = wshare::AttackModel::imra();
            break;
        case wshare::AttackKind::Isra:
            attack = wshare::AttackModel::isra(single(o.isra_y, "isra-y", 1.0));
            break;
        case wshare::AttackKind::Ema:
            attack = wshare::AttackModel::ema();
            break;
    }
    if (!o.isra_y.empty() && attack.kind != wshare::AttackKind::Isra) {
        throw UsageError("--isra-y only applies to --attack isra");
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const auto outcome = wshare::run_protocol(config, attack);
    const auto format = format_of(o);
    emit(o, [&](std::ostream& os) { wshare::write_run(os, outcome, format); });
    return outcome.aborted() ? kExitAborted : kExitOk;
}

int cmd_sweep(const Options& o) {
    wshare::SweepGrid grid;
    if (!o.n.empty()) {
        grid.n = o.n;
    }
    if (!o.d.empty()) {
        grid.d = o.d;
    }
    if (!o.p.empty()) {
        grid.p = o.p;
    }
    grid.attack = attack_of(o);
    grid.y = o.isra_y;
    if (grid.attack == wshare::AttackKind::Isra && grid.y.empty()) {
        grid.y = {1.0};
    }
    grid.mode = mode_of(o);
    grid.trials = o.trials;
    grid.seed = o.seed;
    grid.message = message_of(o);
    grid.threads = o.threads;
    const auto format = format_of(o);
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rows = wshare::run_sweep(grid);
    emit(o, [&](std::ostream& os) { wshare::write_sweep(os, rows, format); });
    return kExitOk;
}

int cmd_curves(const Options& o) {
    wshare::CurveSpec spec;
    if (!o.vary_y.empty()) {
        spec.vary_y = o.vary_y;
    }
    if (!o.vary_d.empty()) {
        spec.vary_d = o.vary_d;
    }
    if (!o.vary_p.empty()) {
        spec.vary_p = o.vary_p;
    }
    spec.fixed_y = o.fix_y.value_or(spec.fixed_y);
    spec.fixed_p = o.fix_p.value_or(spec.fixed_p);
    spec.fixed_d = o.fix_d.value_or(spec.fixed_d);
    if (!o.n.empty()) {
        spec.n_points = o.n;
    }
    const auto format = format_of(o);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rows = wshare::compute_curves(spec);
    emit(o, [&](std::ostream& os) { wshare::write_curves(os, rows, format); });
    return kExitOk;
}

int cmd_teleport_demo(const Options& o) {
    const auto message = message_of(o);
    const auto format = format_of(o);
    emit(o, [&](std::ostream& os) { wshare::write_teleport_demo(os, message, format); });
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supervised W-state entanglement sharing: protocol runs, sweeps and curves", "wshare"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Scenario file of key = value lines mirroring the flags");

    Options o;
    app.add_option("--n", o.n, "W-state sequence length (sweep/curves: comma list)")->delimiter(',');
    app.add_option("--d", o.d, "Detection sampling probability (sweep: comma list)")->delimiter(',');
    app.add_option("--p", o.p, "Probability of a Z-basis directive (sweep: comma list)")->delimiter(',');
    app.add_option("--isra-y", o.isra_y, "Fake-qubit |1> amplitude for isra (sweep: comma list)")->delimiter(',');
    app.add_option("--mode", o.mode, "Checker: paper | strict")->capture_default_str();
    app.add_option("--attack", o.attack, "Adversary: none | imra | isra | ema")->capture_default_str();
    app.add_option("--trials", o.trials, "Trials per grid point")->capture_default_str();
    app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
    app.add_option("--format", o.format, "Output: text | csv | records")->capture_default_str();
    app.add_option("--out", o.out, "Output path (default stdout)");
    app.add_option("--threads", o.threads, "Sweep worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--msg-a", o.msg_a, "Message |0> amplitude (real)")->capture_default_str();
    app.add_option("--msg-b", o.msg_b, "Message |1> amplitude magnitude")->capture_default_str();
    app.add_option("--msg-phase", o.msg_phase, "Message relative phase (radians)")->capture_default_str();
    app.add_option("--vary-y", o.vary_y, "curves: y values of the first panel")->delimiter(',');
    app.add_option("--vary-d", o.vary_d, "curves: d values of the second panel")->delimiter(',');
    app.add_option("--vary-p", o.vary_p, "curves: p values of the third panel")->delimiter(',');
    app.add_option("--fix-y", o.fix_y, "curves: y held fixed in the d and p panels");
    app.add_option("--fix-p", o.fix_p, "curves: p held fixed in the y and d panels");
    app.add_option("--fix-d", o.fix_d, "curves: d held fixed in the y and p panels");

    auto* run = app.add_subcommand("run", "Execute one protocol run and print its transcript")->fallthrough();
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over a parameter grid")->fallthrough();
    auto* curves = app.add_subcommand("curves", "Closed-form eavesdropping success curves")->fallthrough();
    auto* demo = app.add_subcommand("teleport-demo", "Teleport a message through every Bell branch")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(o);
        }
        if (sweep->parsed()) {
            return cmd_sweep(o);
        }
        if (curves->parsed()) {
            return cmd_curves(o);
        }
        if (demo->parsed()) {
            return cmd_teleport_demo(o);
        }
    } catch (const UsageError& e) {
        std::cerr << "wshare: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "wshare: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
