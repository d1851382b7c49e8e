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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wshare/analytic.h"
#include "wshare/attacks.h"
#include "wshare/experiment.h"
#include "wshare/protocol.h"
#include "wshare/statevec.h"
#include "wshare/teleport.h"

namespace py = pybind11;
using namespace wshare;

namespace {

py::list branches_to_list(const std::array<MeasurementBranch, 2>& branches) {
    py::list out;
    for (const auto& b : branches) {
        out.append(py::make_tuple(b.outcome, b.probability, b.post_state));
    }
    return out;
}

py::dict sweep_row_to_dict(const SweepRow& r) {
    py::dict d;
    d["attack"] = std::string(to_string(r.attack));
    d["mode"] = std::string(to_string(r.mode));
    d["n"] = r.n;
    d["d"] = r.d;
    d["p"] = r.p;
    d["y"] = r.y;
    d["trials"] = r.trials;
    d["detections"] = r.detections;
    d["detection_rate"] = r.detection_rate;
    d["success_rate"] = r.success_rate;
    d["std_error"] = r.std_error;
    d["yield"] = r.yield;
    d["mean_fidelity"] = r.mean_fidelity;
    d["mean_eve_fidelity"] = r.mean_eve_fidelity;
    d["analytic_success"] = r.analytic_success;
    return d;
}

}  // namespace

PYBIND11_MODULE(_wshare, m) {
    m.doc() = "Supervised W-state entanglement sharing simulator";

    py::enum_<Basis>(m, "Basis").value("Z", Basis::Z).value("X", Basis::X);
    py::enum_<BellState>(m, "BellState")
        .value("PHI_PLUS", BellState::PhiPlus)
        .value("PHI_MINUS", BellState::PhiMinus)
        .value("PSI_PLUS", BellState::PsiPlus)
        .value("PSI_MINUS", BellState::PsiMinus);
    py::enum_<CheckerMode>(m, "CheckerMode")
        .value("PAPER", CheckerMode::PaperAnalytic)
        .value("STRICT", CheckerMode::Strict);
    py::enum_<AttackKind>(m, "AttackKind")
        .value("NONE", AttackKind::None)
        .value("IMRA", AttackKind::Imra)
        .value("ISRA", AttackKind::Isra)
        .value("EMA", AttackKind::Ema);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<std::vector<Complex>, std::vector<Label>>(), py::arg("amplitudes"), py::arg("labels"))
        .def_property_readonly("amplitudes", &StateVector::amplitudes)
        .def_property_readonly("labels", &StateVector::labels)
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def("amplitude", &StateVector::amplitude, py::arg("bits"))
        .def("norm_squared", &StateVector::norm_squared);

    m.def("make_basis_state", [](const std::vector<int>& bits, std::vector<Label> labels) {
        return make_basis_state(bits, std::move(labels));
    });
    m.def("make_message_state", &make_message_state, py::arg("a"), py::arg("b"), py::arg("label") = "m");
    m.def("make_w_state", &make_w_state, py::arg("labels"));
    m.def("make_bell_state", &make_bell_state);
    m.def("tensor", &tensor);
    m.def("apply_cnot", [](const StateVector& s, const std::string& c, const std::string& t) {
        return apply_cnot(s, c, t);
    });
    m.def("enumerate_qubit", [](const StateVector& s, const std::string& q, Basis basis) {
        return branches_to_list(enumerate_qubit(s, q, basis));
    });
    m.def("reduced_fidelity", [](const StateVector& s, const std::string& q, const StateVector& ref) {
        return reduced_fidelity(s, q, ref);
    });
    m.def("approx_equal", &approx_equal, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-12);
    m.def("z_marginal", &z_marginal);

    py::class_<Message>(m, "Message")
        .def(py::init([](Complex a, Complex b) {
                 Message msg{a, b};
                 msg.validate();
                 return msg;
             }),
             py::arg("a"), py::arg("b"))
        .def_readonly("a", &Message::a)
        .def_readonly("b", &Message::b)
        .def("state", [](const Message& msg) { return msg.state(); });

    py::class_<AttackModel>(m, "AttackModel")
        .def_static("none", &AttackModel::none)
        .def_static("imra", &AttackModel::imra)
        .def_static("isra", py::overload_cast<double>(&AttackModel::isra), py::arg("y"))
        .def_static("ema", &AttackModel::ema)
        .def_readonly("kind", &AttackModel::kind)
        .def_readonly("x", &AttackModel::x)
        .def_readonly("y", &AttackModel::y);

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init([](std::size_t n, double d, double p, CheckerMode mode, std::uint64_t seed,
                         std::optional<Message> message) {
                 ProtocolConfig c{n, d, p, mode, seed, message};
                 c.validate();
                 return c;
             }),
             py::arg("n"), py::arg("d"), py::arg("p"), py::arg("mode") = CheckerMode::PaperAnalytic,
             py::arg("seed") = 0, py::arg("message") = std::nullopt)
        .def_readonly("n", &ProtocolConfig::n)
        .def_readonly("d", &ProtocolConfig::d)
        .def_readonly("p", &ProtocolConfig::p)
        .def_readonly("mode", &ProtocolConfig::mode)
        .def_readonly("seed", &ProtocolConfig::seed);

    py::class_<RunOutcome>(m, "RunOutcome")
        .def_property_readonly("aborted", &RunOutcome::aborted)
        .def_property_readonly("offending_rounds", [](const RunOutcome& o) { return o.report.offending_rounds; })
        .def_readonly("detection_positions", &RunOutcome::detection_positions)
        .def_property_readonly("unmeasured_count", &RunOutcome::unmeasured_count)
        .def_property_readonly("distilled_rounds",
                               [](const RunOutcome& o) {
                                   std::vector<std::size_t> r;
                                   for (const auto& pair : o.distilled.pairs) {
                                       r.push_back(pair.round);
                                   }
                                   return r;
                               })
        .def_property_readonly("pair_fidelities",
                               [](const RunOutcome& o) {
                                   std::vector<double> r;
                                   for (const auto& pair : o.distilled.pairs) {
                                       r.push_back(pair.bell_fidelity);
                                   }
                                   return r;
                               })
        .def_property_readonly("teleport_fidelities",
                               [](const RunOutcome& o) {
                                   std::vector<double> r;
                                   for (const auto& t : o.teleports) {
                                       r.push_back(t.fidelity);
                                   }
                                   return r;
                               })
        .def_property_readonly("transcript",
                               [](const RunOutcome& o) {
                                   py::list out;
                                   for (const auto& msg : o.transcript) {
                                       out.append(py::make_tuple(msg.sender, msg.topic, msg.payload));
                                   }
                                   return out;
                               })
        .def("format", [](const RunOutcome& o, const std::string& format) {
            auto f = parse_output_format(format);
            if (!f) {
                throw py::value_error("unknown format '" + format + "'");
            }
            std::ostringstream os;
            write_run(os, o, *f);
            return os.str();
        });

    m.def("run_protocol", &run_protocol, py::arg("config"), py::arg("attack") = AttackModel::none());

    m.def("bell_yield", &bell_yield);
    m.def("imra_outcome_probs", &imra_outcome_probs);
    m.def("isra_case_probs", [](double y, double p, double d) {
        auto c = isra_case_probs(y, p, d);
        return py::make_tuple(c.home1, c.home0);
    });
    m.def("isra_success_single", &isra_success_single, py::arg("y"), py::arg("p"), py::arg("d"));
    m.def(
        "isra_success_sequence",
        [](double y, double p, double d, std::size_t n) { return isra_success_sequence({y, p, d, n}); },
        py::arg("y"), py::arg("p"), py::arg("d"), py::arg("n"));
    m.def("round_detection_probability", &round_detection_probability, py::arg("attack"), py::arg("p"),
          py::arg("d"), py::arg("mode") = CheckerMode::PaperAnalytic);

    m.def("correction_table", []() {
        py::dict d;
        const auto& table = psi_plus_corrections();
        for (BellState b : kBellStates) {
            d[py::str(std::string(to_string(b)))] = std::string(to_string(table[b]));
        }
        return d;
    });
    m.def(
        "teleport_branches",
        [](const Message& msg, std::optional<StateVector> channel) {
            const auto ch = channel.value_or(make_bell_state(BellState::PsiPlus, "a", "b"));
            py::list out;
            for (const auto& r : teleport_branches(msg, ch)) {
                out.append(py::make_tuple(std::string(to_string(r.outcome)), r.probability,
                                          std::string(to_string(r.correction)), r.fidelity));
            }
            return out;
        },
        py::arg("message"), py::arg("channel") = std::nullopt);
    m.def("ema_decomposition", [](const Message& msg) {
        py::list out;
        for (const auto& b : ema_decomposition(msg)) {
            out.append(py::make_tuple(std::string(to_string(b.outcome)), b.weight, b.residual));
        }
        return out;
    });

    m.def(
        "run_sweep",
        [](std::vector<std::size_t> n, std::vector<double> d, std::vector<double> p, std::vector<double> y,
           AttackKind attack, CheckerMode mode, std::size_t trials, std::uint64_t seed) {
            SweepGrid grid;
            grid.n = std::move(n);
            grid.d = std::move(d);
            grid.p = std::move(p);
            grid.y = std::move(y);
            grid.attack = attack;
            grid.mode = mode;
            grid.trials = trials;
            grid.seed = seed;
            py::list out;
            for (const auto& row : run_sweep(grid)) {
                out.append(sweep_row_to_dict(row));
            }
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("p"), py::arg("y") = std::vector<double>{},
        py::arg("attack") = AttackKind::None, py::arg("mode") = CheckerMode::PaperAnalytic,
        py::arg("trials") = 1000, py::arg("seed") = 0);
}
