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

#include "wshare/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "wshare/analytic.h"
#include "wshare/rng.h"

namespace wshare {

namespace {

using nlohmann::ordered_json;

void check_unit_axis(const std::vector<double>& axis, const char* name) {
    for (double v : axis) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " values must lie in [0, 1]");
        }
    }
}

void check_n_axis(const std::vector<std::size_t>& axis) {
    for (std::size_t v : axis) {
        if (v < 1) {
            throw std::invalid_argument("n values must be at least 1");
        }
    }
}

std::string opt_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

ordered_json opt_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

struct TrialSummary {
    bool detected = false;
    std::size_t distilled = 0;
    std::size_t unmeasured = 0;
    double fidelity_sum = 0;
    double eve_fidelity_sum = 0;
    std::size_t teleports = 0;
    std::size_t eve_teleports = 0;
};

TrialSummary run_trial(const ProtocolConfig& config, const AttackModel& attack) {
    const auto outcome = run_protocol(config, attack);
    TrialSummary s;
    s.detected = outcome.aborted();
    if (s.detected) {
        return s;
    }
    s.distilled = outcome.distilled.pairs.size();
    s.unmeasured = outcome.unmeasured_count();
    for (const auto& t : outcome.teleports) {
        s.fidelity_sum += t.fidelity;
        ++s.teleports;
        if (t.eve_fidelity) {
            s.eve_fidelity_sum += *t.eve_fidelity;
            ++s.eve_teleports;
        }
    }
    return s;
}

struct GridPoint {
    std::size_t n;
    double d;
    double p;
    std::optional<double> y;
};

std::vector<GridPoint> expand(const SweepGrid& grid) {
    std::vector<GridPoint> points;
    const std::vector<std::optional<double>> ys =
        grid.y.empty() ? std::vector<std::optional<double>>{std::nullopt}
                       : std::vector<std::optional<double>>(grid.y.begin(), grid.y.end());
    for (std::size_t n : grid.n) {
        for (double d : grid.d) {
            for (double p : grid.p) {
                for (const auto& y : ys) {
                    points.push_back({n, d, p, y});
                }
            }
        }
    }
    return points;
}

AttackModel attack_for(AttackKind kind, const std::optional<double>& y) {
    switch (kind) {
        case AttackKind::Imra:
            return AttackModel::imra();
        case AttackKind::Isra:
            return AttackModel::isra(*y);
        case AttackKind::Ema:
            return AttackModel::ema();
        case AttackKind::None:
            break;
    }
    return AttackModel::none();
}

void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            os << (i ? "," : "") << header[i];
        }
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << row[i];
            }
            os << '\n';
        }
        return;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        width[i] = header[i].size();
        for (const auto& row : rows) {
            width[i] = std::max(width[i], row[i].size());
        }
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << (cells[i].empty() ? "-" : cells[i]);
        }
        os << '\n';
    };
    line(header);
    for (const auto& row : rows) {
        line(row);
    }
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string_view to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::Text:
            return "text";
        case OutputFormat::Csv:
            return "csv";
        case OutputFormat::Records:
            return "records";
    }
    return "?";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    for (auto f : {OutputFormat::Text, OutputFormat::Csv, OutputFormat::Records}) {
        if (text == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

void SweepGrid::validate() const {
    if (n.empty() || d.empty() || p.empty()) {
        throw std::invalid_argument("sweep grid needs at least one value for each of n, d and p");
    }
    check_n_axis(n);
    check_unit_axis(d, "d");
    check_unit_axis(p, "p");
    check_unit_axis(y, "isra-y");
    if (attack == AttackKind::Isra && y.empty()) {
        throw std::invalid_argument("an isra sweep needs at least one isra-y value");
    }
    if (attack != AttackKind::Isra && !y.empty()) {
        throw std::invalid_argument("isra-y values given for a non-isra attack");
    }
    if (trials < 100) {
        throw std::invalid_argument("a sweep needs at least 100 trials per grid point");
    }
    message.validate();
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid) {
    grid.validate();
    const auto points = expand(grid);
    std::size_t workers = grid.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : grid.threads;

    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    std::vector<TrialSummary> trials(grid.trials);
    for (std::size_t g = 0; g < points.size(); ++g) {
        const auto& pt = points[g];
        const auto attack = attack_for(grid.attack, pt.y);
        auto work = [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                ProtocolConfig config;
                config.n = pt.n;
                config.d = pt.d;
                config.p = pt.p;
                config.mode = grid.mode;
                config.seed = derive_seed(grid.seed, {g, t});
                config.message = grid.message;
                trials[t] = run_trial(config, attack);
            }
        };
        const std::size_t w = std::min(workers, grid.trials);
        if (w <= 1) {
            work(0, grid.trials);
        } else {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (grid.trials + w - 1) / w;
            for (std::size_t begin = 0; begin < grid.trials; begin += chunk) {
                pool.emplace_back(work, begin, std::min(grid.trials, begin + chunk));
            }
        }

        // Aggregate in trial order so floating-point sums are reproducible.
        SweepRow row;
        row.n = pt.n;
        row.d = pt.d;
        row.p = pt.p;
        row.y = pt.y;
        row.attack = grid.attack;
        row.mode = grid.mode;
        row.trials = grid.trials;
        TrialSummary total;
        for (const auto& s : trials) {
            row.detections += s.detected;
            total.distilled += s.distilled;
            total.unmeasured += s.unmeasured;
            total.fidelity_sum += s.fidelity_sum;
            total.teleports += s.teleports;
            total.eve_fidelity_sum += s.eve_fidelity_sum;
            total.eve_teleports += s.eve_teleports;
        }
        row.detection_rate = static_cast<double>(row.detections) / static_cast<double>(row.trials);
        row.success_rate = static_cast<double>(row.trials - row.detections) / static_cast<double>(row.trials);
        row.std_error = std::sqrt(row.detection_rate * (1.0 - row.detection_rate) / static_cast<double>(row.trials));
        if (total.unmeasured > 0) {
            row.yield = static_cast<double>(total.distilled) / static_cast<double>(total.unmeasured);
        }
        if (total.teleports > 0) {
            row.mean_fidelity = total.fidelity_sum / static_cast<double>(total.teleports);
        }
        if (total.eve_teleports > 0) {
            row.mean_eve_fidelity = total.eve_fidelity_sum / static_cast<double>(total.eve_teleports);
        }
        if (grid.attack == AttackKind::Isra) {
            row.analytic_success = isra_success_sequence({*pt.y, pt.p, pt.d, pt.n});
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep(std::ostream& os, std::span<const SweepRow> rows, OutputFormat format) {
    static const std::vector<std::string> header = {
        "attack",        "mode",         "n",         "d",     "p",
        "y",             "trials",       "detections", "detection_rate", "success_rate",
        "std_error",     "yield",        "mean_fidelity", "mean_eve_fidelity", "analytic_success"};
    if (format == OutputFormat::Records) {
        for (const auto& r : rows) {
            ordered_json j;
            j["attack"] = to_string(r.attack);
            j["mode"] = to_string(r.mode);
            j["n"] = r.n;
            j["d"] = r.d;
            j["p"] = r.p;
            j["y"] = opt_json(r.y);
            j["trials"] = r.trials;
            j["detections"] = r.detections;
            j["detection_rate"] = r.detection_rate;
            j["success_rate"] = r.success_rate;
            j["std_error"] = r.std_error;
            j["yield"] = opt_json(r.yield);
            j["mean_fidelity"] = opt_json(r.mean_fidelity);
            j["mean_eve_fidelity"] = opt_json(r.mean_eve_fidelity);
            j["analytic_success"] = opt_json(r.analytic_success);
            os << j.dump() << '\n';
        }
        return;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        cells.push_back({std::string(to_string(r.attack)), std::string(to_string(r.mode)), std::to_string(r.n),
                         format_number(r.d), format_number(r.p), opt_number(r.y), std::to_string(r.trials),
                         std::to_string(r.detections), format_number(r.detection_rate),
                         format_number(r.success_rate), format_number(r.std_error), opt_number(r.yield),
                         opt_number(r.mean_fidelity), opt_number(r.mean_eve_fidelity),
                         opt_number(r.analytic_success)});
    }
    write_table(os, header, cells, format);
}

void CurveSpec::validate() const {
    if (vary_y.empty() || vary_d.empty() || vary_p.empty() || n_points.empty()) {
        throw std::invalid_argument("curve ranges must not be empty");
    }
    check_unit_axis(vary_y, "y");
    check_unit_axis(vary_d, "d");
    check_unit_axis(vary_p, "p");
    check_unit_axis({fixed_y, fixed_p, fixed_d}, "fixed");
    check_n_axis(n_points);
}

std::vector<CurveRow> compute_curves(const CurveSpec& spec) {
    spec.validate();
    std::vector<CurveRow> rows;
    auto panel = [&](const char* name, const std::vector<double>& values, auto assign) {
        for (double v : values) {
            for (std::size_t n : spec.n_points) {
                CurveRow row{name, spec.fixed_y, spec.fixed_p, spec.fixed_d, n, 0.0};
                assign(row, v);
                row.success = isra_success_sequence({row.y, row.p, row.d, row.n});
                rows.push_back(row);
            }
        }
    };
    panel("y", spec.vary_y, [](CurveRow& r, double v) { r.y = v; });
    panel("d", spec.vary_d, [](CurveRow& r, double v) { r.d = v; });
    panel("p", spec.vary_p, [](CurveRow& r, double v) { r.p = v; });
    return rows;
}

void write_curves(std::ostream& os, std::span<const CurveRow> rows, OutputFormat format) {
    if (format == OutputFormat::Records) {
        for (const auto& r : rows) {
            ordered_json j;
            j["panel"] = r.panel;
            j["y"] = r.y;
            j["p"] = r.p;
            j["d"] = r.d;
            j["n"] = r.n;
            j["success"] = r.success;
            os << j.dump() << '\n';
        }
        return;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        cells.push_back({r.panel, format_number(r.y), format_number(r.p), format_number(r.d), std::to_string(r.n),
                         format_number(r.success)});
    }
    write_table(os, {"panel", "y", "p", "d", "n", "success"}, cells, format);
}

void write_run(std::ostream& os, const RunOutcome& outcome, OutputFormat format) {
    std::map<std::size_t, const TeleportRecord*> teleport_by_round;
    for (const auto& t : outcome.teleports) {
        teleport_by_round[t.round] = &t;
    }
    double fid_sum = 0;
    double eve_sum = 0;
    std::size_t eve_count = 0;
    for (const auto& t : outcome.teleports) {
        fid_sum += t.fidelity;
        if (t.eve_fidelity) {
            eve_sum += *t.eve_fidelity;
            ++eve_count;
        }
    }
    const std::size_t unmeasured = outcome.unmeasured_count();
    std::optional<double> yield;
    if (!outcome.aborted() && unmeasured > 0) {
        yield = static_cast<double>(outcome.distilled.pairs.size()) / static_cast<double>(unmeasured);
    }
    std::optional<double> mean_fid;
    if (!outcome.teleports.empty()) {
        mean_fid = fid_sum / static_cast<double>(outcome.teleports.size());
    }
    std::optional<double> mean_eve;
    if (eve_count > 0) {
        mean_eve = eve_sum / static_cast<double>(eve_count);
    }
    const auto& cfg = outcome.config;

    if (format == OutputFormat::Text) {
        os << "# n=" << cfg.n << " d=" << format_number(cfg.d) << " p=" << format_number(cfg.p)
           << " mode=" << to_string(cfg.mode) << " seed=" << cfg.seed << " attack=" << to_string(outcome.attack.kind);
        if (outcome.attack.kind == AttackKind::Isra) {
            os << " x=" << format_number(outcome.attack.x) << " y=" << format_number(outcome.attack.y);
        }
        os << '\n';
        for (const auto& m : outcome.transcript) {
            os << "[" << m.sender << "] " << m.topic << ": " << m.payload << '\n';
        }
        os << "verdict: " << (outcome.aborted() ? "abort" : "pass") << '\n';
        os << "detection rounds: " << outcome.detection_positions.size() << '\n';
        os << "rule violations: z/home0 " << outcome.report.z_home0.violated << "/" << outcome.report.z_home0.checked
           << ", z/home1 " << outcome.report.z_home1.violated << "/" << outcome.report.z_home1.checked << ", x/home0 "
           << outcome.report.x_home0.violated << "/" << outcome.report.x_home0.checked << '\n';
        os << "distilled pairs: " << outcome.distilled.pairs.size() << " of " << unmeasured << " unmeasured";
        if (yield) {
            os << " (yield " << format_number(*yield) << ")";
        }
        os << '\n';
        if (mean_fid) {
            os << "mean teleport fidelity: " << format_number(*mean_fid) << '\n';
        }
        if (mean_eve) {
            os << "mean eve recovery fidelity: " << format_number(*mean_eve) << '\n';
        }
        return;
    }

    if (format == OutputFormat::Csv) {
        std::vector<std::vector<std::string>> cells;
        auto bit = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
        for (const auto& r : outcome.rounds) {
            const auto it = teleport_by_round.find(r.index);
            const TeleportRecord* t = it == teleport_by_round.end() ? nullptr : it->second;
            cells.push_back({std::to_string(r.index), r.detection_measured ? "1" : "0",
                             r.directive ? std::string(to_string(*r.directive)) : std::string(), bit(r.rc),
                             bit(r.ra), bit(r.rb), bit(r.home_outcome),
                             (r.eve && r.eve->measured_bit) ? std::to_string(*r.eve->measured_bit) : std::string(),
                             t ? std::string(to_string(t->outcome)) : std::string(),
                             t ? format_number(t->fidelity) : std::string(),
                             (t && t->eve_fidelity) ? format_number(*t->eve_fidelity) : std::string()});
        }
        write_table(os,
                    {"round", "detection", "basis", "rc", "ra", "rb", "home", "eve_bit", "bell", "fidelity",
                     "eve_fidelity"},
                    cells, OutputFormat::Csv);
        return;
    }

    for (const auto& m : outcome.transcript) {
        ordered_json j;
        j["record"] = "message";
        j["sender"] = m.sender;
        j["topic"] = m.topic;
        j["payload"] = m.payload;
        os << j.dump() << '\n';
    }
    ordered_json s;
    s["record"] = "summary";
    s["n"] = cfg.n;
    s["d"] = cfg.d;
    s["p"] = cfg.p;
    s["mode"] = to_string(cfg.mode);
    s["seed"] = cfg.seed;
    s["attack"] = to_string(outcome.attack.kind);
    s["verdict"] = outcome.aborted() ? "abort" : "pass";
    s["offending_rounds"] = outcome.report.offending_rounds;
    s["detection_rounds"] = outcome.detection_positions.size();
    s["distilled"] = outcome.distilled.pairs.size();
    s["unmeasured"] = unmeasured;
    s["yield"] = opt_json(yield);
    s["mean_fidelity"] = opt_json(mean_fid);
    s["mean_eve_fidelity"] = opt_json(mean_eve);
    os << s.dump() << '\n';
}

void write_teleport_demo(std::ostream& os, const Message& message, OutputFormat format) {
    message.validate();
    const auto& table = psi_plus_corrections();
    const auto honest = make_bell_state(BellState::PsiPlus, Label(kAliceQubit), Label(kBobQubit));
    const auto ema = ema_channel();
    std::optional<EveRecord> ema_record = EveRecord{1, AttackKind::Ema, std::nullopt, Label(kEveQubit)};

    std::vector<std::vector<std::string>> cells;
    std::vector<ordered_json> records;
    auto add = [&](const char* channel, const TeleportResult& r, std::optional<double> eve) {
        cells.push_back({channel, std::string(to_string(r.outcome)), std::string(to_string(table[r.outcome])),
                         format_number(r.probability), format_number(r.fidelity), opt_number(eve)});
        ordered_json j;
        j["channel"] = channel;
        j["bell"] = to_string(r.outcome);
        j["correction"] = to_string(table[r.outcome]);
        j["probability"] = r.probability;
        j["fidelity"] = r.fidelity;
        j["eve_fidelity"] = opt_json(eve);
        records.push_back(std::move(j));
    };
    for (const auto& r : teleport_branches(message, honest)) {
        add("honest", r, std::nullopt);
    }
    for (const auto& r : teleport_branches(message, ema)) {
        add("ema", r, eve_recover_attempt(AttackModel::ema(), ema_record, r, message));
    }

    if (format == OutputFormat::Records) {
        for (const auto& j : records) {
            os << j.dump() << '\n';
        }
        return;
    }
    if (format == OutputFormat::Text) {
        os << "# message a=" << format_number(message.a.real()) << (message.a.imag() < 0 ? "" : "+")
           << format_number(message.a.imag()) << "i b=" << format_number(message.b.real())
           << (message.b.imag() < 0 ? "" : "+") << format_number(message.b.imag()) << "i\n";
    }
    write_table(os, {"channel", "bell", "correction", "probability", "fidelity", "eve_fidelity"}, cells, format);
}

}  // namespace wshare
