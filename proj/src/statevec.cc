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

#include "wshare/statevec.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wshare {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr std::size_t kMaxQubits = 16;

void check_labels(const std::vector<Label>& labels) {
    if (labels.size() > kMaxQubits) {
        throw std::invalid_argument("register too large: " + std::to_string(labels.size()) + " qubits");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty()) {
            throw std::invalid_argument("empty qubit label");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (labels[i] == labels[j]) {
                throw std::invalid_argument("duplicate qubit label '" + labels[i] + "'");
            }
        }
    }
}

double sum_norm(const std::vector<Complex>& amplitudes) {
    double total = 0;
    for (const auto& a : amplitudes) {
        total += std::norm(a);
    }
    return total;
}

/// Masks of `subset` (in subset order) inside a register with `labels`.
std::vector<std::size_t> masks_of(const StateVector& state, const std::vector<Label>& subset) {
    std::vector<std::size_t> masks;
    masks.reserve(subset.size());
    for (const auto& label : subset) {
        masks.push_back(state.mask(label));
    }
    return masks;
}

/// Packs the selected bits of `index` into a big-endian sub-index.
std::size_t gather(std::size_t index, const std::vector<std::size_t>& masks) {
    std::size_t out = 0;
    for (std::size_t m : masks) {
        out = (out << 1) | ((index & m) ? 1U : 0U);
    }
    return out;
}

std::vector<Label> complement(const std::vector<Label>& all, const std::vector<Label>& removed) {
    std::vector<Label> rest;
    for (const auto& label : all) {
        if (std::find(removed.begin(), removed.end(), label) == removed.end()) {
            rest.push_back(label);
        }
    }
    return rest;
}

}  // namespace

std::string_view to_string(Basis basis) {
    return basis == Basis::Z ? "Z" : "X";
}

std::string_view to_string(BellState bell) {
    switch (bell) {
        case BellState::PhiPlus:
            return "phi+";
        case BellState::PhiMinus:
            return "phi-";
        case BellState::PsiPlus:
            return "psi+";
        case BellState::PsiMinus:
            return "psi-";
    }
    return "?";
}

std::array<int, 2> bell_bits(BellState bell) {
    auto v = static_cast<int>(bell);
    return {(v >> 1) & 1, v & 1};
}

StateVector::StateVector(std::vector<Complex> amplitudes, std::vector<Label> labels) {
    check_labels(labels);
    if (amplitudes.size() != (std::size_t{1} << labels.size())) {
        throw std::invalid_argument("amplitude count " + std::to_string(amplitudes.size()) + " does not match " +
                                    std::to_string(labels.size()) + " qubits");
    }
    double n2 = sum_norm(amplitudes);
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
    double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) {
        a *= scale;
    }
    amplitudes_ = std::move(amplitudes);
    labels_ = std::move(labels);
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes, std::vector<Label> labels) {
    check_labels(labels);
    if (amplitudes.size() != (std::size_t{1} << labels.size())) {
        throw std::invalid_argument("amplitude count does not match register size");
    }
    double n2 = sum_norm(amplitudes);
    if (n2 <= kZeroProbability) {
        throw std::invalid_argument("cannot normalize a zero vector");
    }
    double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) {
        a *= scale;
    }
    StateVector s;
    s.amplitudes_ = std::move(amplitudes);
    s.labels_ = std::move(labels);
    return s;
}

bool StateVector::has(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t StateVector::position(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown qubit label '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t StateVector::mask(std::string_view label) const {
    return std::size_t{1} << (labels_.size() - 1 - position(label));
}

Complex StateVector::amplitude(std::string_view bits) const {
    if (bits.size() != labels_.size()) {
        throw std::invalid_argument("bit string length does not match register");
    }
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("bit string must contain only 0 and 1");
        }
        index = (index << 1) | (ch == '1' ? 1U : 0U);
    }
    return amplitudes_[index];
}

double StateVector::norm_squared() const {
    return sum_norm(amplitudes_);
}

StateVector make_basis_state(std::span<const int> bits, std::vector<Label> labels) {
    if (bits.size() != labels.size()) {
        throw std::invalid_argument("bits and labels differ in length");
    }
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("basis bits must be 0 or 1");
        }
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    std::vector<Complex> amps(std::size_t{1} << labels.size());
    amps[index] = 1.0;
    return StateVector(std::move(amps), std::move(labels));
}

StateVector make_qubit(Complex zero, Complex one, Label label) {
    return StateVector({zero, one}, {std::move(label)});
}

StateVector make_message_state(Complex a, Complex b, Label label) {
    return make_qubit(a, b, std::move(label));
}

StateVector make_w_state(std::vector<Label> labels) {
    if (labels.size() != 3) {
        throw std::invalid_argument("a W state needs exactly three labels");
    }
    check_labels(labels);
    const double amp = 1.0 / std::sqrt(3.0);
    std::vector<Complex> amps(8);
    amps[0b100] = amp;
    amps[0b010] = amp;
    amps[0b001] = amp;
    return StateVector(std::move(amps), std::move(labels));
}

StateVector basis_ket(Basis basis, int outcome, Label label) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    if (basis == Basis::Z) {
        return outcome == 0 ? make_qubit(1.0, 0.0, std::move(label)) : make_qubit(0.0, 1.0, std::move(label));
    }
    const double h = std::numbers::sqrt2 / 2;
    return outcome == 0 ? make_qubit(h, h, std::move(label)) : make_qubit(h, -h, std::move(label));
}

StateVector make_bell_state(BellState bell, Label first, Label second) {
    const double h = std::numbers::sqrt2 / 2;
    std::vector<Complex> amps(4);
    switch (bell) {
        case BellState::PhiPlus:
            amps[0b00] = h;
            amps[0b11] = h;
            break;
        case BellState::PhiMinus:
            amps[0b00] = h;
            amps[0b11] = -h;
            break;
        case BellState::PsiPlus:
            amps[0b01] = h;
            amps[0b10] = h;
            break;
        case BellState::PsiMinus:
            amps[0b01] = h;
            amps[0b10] = -h;
            break;
    }
    return StateVector(std::move(amps), {std::move(first), std::move(second)});
}

StateVector tensor(const StateVector& left, const StateVector& right) {
    std::vector<Label> labels = left.labels();
    labels.insert(labels.end(), right.labels().begin(), right.labels().end());
    check_labels(labels);
    const auto& l = left.amplitudes();
    const auto& r = right.amplitudes();
    std::vector<Complex> amps(l.size() * r.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            amps[i * r.size() + j] = l[i] * r[j];
        }
    }
    return StateVector::normalized(std::move(amps), std::move(labels));
}

StateVector apply_cnot(const StateVector& state, std::string_view control, std::string_view target) {
    const std::size_t cm = state.mask(control);
    const std::size_t tm = state.mask(target);
    if (cm == tm) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    std::vector<Complex> amps(state.dimension());
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        amps[(i & cm) ? (i ^ tm) : i] = in[i];
    }
    return StateVector::normalized(std::move(amps), state.labels());
}

StateVector apply_x(const StateVector& state, std::string_view qubit) {
    const std::size_t m = state.mask(qubit);
    std::vector<Complex> amps(state.dimension());
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        amps[i ^ m] = in[i];
    }
    return StateVector::normalized(std::move(amps), state.labels());
}

StateVector apply_z(const StateVector& state, std::string_view qubit) {
    const std::size_t m = state.mask(qubit);
    std::vector<Complex> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & m) {
            amps[i] = -amps[i];
        }
    }
    return StateVector::normalized(std::move(amps), state.labels());
}

StateVector relabel(const StateVector& state, std::string_view from, Label to) {
    std::vector<Label> labels = state.labels();
    labels[state.position(from)] = std::move(to);
    check_labels(labels);
    StateVector out;
    out.amplitudes_ = state.amplitudes();
    out.labels_ = std::move(labels);
    return out;
}

StateVector reorder(const StateVector& state, const std::vector<Label>& order) {
    if (order.size() != state.num_qubits()) {
        throw std::invalid_argument("reorder needs a permutation of the register labels");
    }
    check_labels(order);
    const auto masks = masks_of(state, order);
    std::vector<Complex> amps(state.dimension());
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        amps[gather(i, masks)] = in[i];
    }
    StateVector out;
    out.amplitudes_ = std::move(amps);
    out.labels_ = order;
    return out;
}

Projection project_out(const StateVector& state, const StateVector& bra) {
    const auto bra_masks = masks_of(state, bra.labels());
    std::vector<Label> rest = complement(state.labels(), bra.labels());
    const auto rest_masks = masks_of(state, rest);
    std::vector<Complex> amps(std::size_t{1} << rest.size());
    const auto& in = state.amplitudes();
    const auto& b = bra.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        amps[gather(i, rest_masks)] += std::conj(b[gather(i, bra_masks)]) * in[i];
    }
    Projection out;
    out.probability = sum_norm(amps);
    if (out.probability > kZeroProbability) {
        out.remainder = StateVector::normalized(std::move(amps), std::move(rest));
    } else {
        out.probability = 0;
    }
    return out;
}

StateVector drop_qubit(const StateVector& state, std::string_view qubit) {
    for (int outcome : {0, 1}) {
        auto proj = project_out(state, basis_ket(Basis::Z, outcome, Label(qubit)));
        if (proj.probability > 1.0 - 1e-12) {
            return *proj.remainder;
        }
    }
    throw std::invalid_argument("qubit '" + std::string(qubit) + "' is not in a Z eigenstate");
}

std::array<MeasurementBranch, 2> enumerate_qubit(const StateVector& state, std::string_view qubit,
                                                 Basis basis) {
    std::array<MeasurementBranch, 2> branches;
    for (int outcome : {0, 1}) {
        auto ket = basis_ket(basis, outcome, Label(qubit));
        auto proj = project_out(state, ket);
        auto& branch = branches[static_cast<std::size_t>(outcome)];
        branch.outcome = outcome;
        branch.probability = proj.probability;
        if (proj.remainder) {
            branch.post_state = reorder(tensor(ket, *proj.remainder), state.labels());
        }
    }
    return branches;
}

StateVector project_qubit(const StateVector& state, std::string_view qubit, Basis basis, int outcome) {
    auto ket = basis_ket(basis, outcome, Label(qubit));
    auto proj = project_out(state, ket);
    if (!proj.remainder) {
        throw std::logic_error("projection onto a zero-probability outcome");
    }
    return reorder(tensor(ket, *proj.remainder), state.labels());
}

MeasurementBranch measure_qubit(const StateVector& state, std::string_view qubit, Basis basis, Rng& rng) {
    auto branches = enumerate_qubit(state, qubit, basis);
    const double u = rng.uniform();
    int pick = u < branches[0].probability ? 0 : 1;
    if (!branches[static_cast<std::size_t>(pick)].post_state) {
        pick = 1 - pick;
    }
    return branches[static_cast<std::size_t>(pick)];
}

std::array<BellOutcome, 4> enumerate_bell(const StateVector& state, std::string_view first,
                                          std::string_view second) {
    if (first == second) {
        throw std::invalid_argument("Bell measurement needs two distinct qubits");
    }
    state.position(first);
    state.position(second);
    std::array<BellOutcome, 4> outcomes;
    for (std::size_t k = 0; k < kBellStates.size(); ++k) {
        auto bra = make_bell_state(kBellStates[k], Label(first), Label(second));
        auto proj = project_out(state, bra);
        outcomes[k].bell = kBellStates[k];
        outcomes[k].probability = proj.probability;
        if (proj.remainder) {
            outcomes[k].post_state = reorder(tensor(bra, *proj.remainder), state.labels());
        }
    }
    return outcomes;
}

BellOutcome bell_measure(const StateVector& state, std::string_view first, std::string_view second, Rng& rng) {
    auto outcomes = enumerate_bell(state, first, second);
    const double u = rng.uniform();
    double acc = 0;
    std::size_t last_possible = 0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (!outcomes[k].post_state) {
            continue;
        }
        last_possible = k;
        acc += outcomes[k].probability;
        if (u < acc) {
            return outcomes[k];
        }
    }
    return outcomes[last_possible];
}

double DensityMatrix::trace() const {
    double t = 0;
    for (std::size_t i = 0; i < dimension; ++i) {
        t += (*this)(i, i).real();
    }
    return t;
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double total = 0;
    for (const auto& e : entries) {
        total += std::norm(e);
    }
    return total;
}

DensityMatrix reduced_density(const StateVector& state, const std::vector<Label>& keep) {
    check_labels(keep);
    const auto keep_masks = masks_of(state, keep);
    const auto env = complement(state.labels(), keep);
    const auto env_masks = masks_of(state, env);
    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t de = std::size_t{1} << env.size();

    std::vector<Complex> m(dk * de);
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        m[gather(i, keep_masks) * de + gather(i, env_masks)] = in[i];
    }
    DensityMatrix rho;
    rho.labels = keep;
    rho.dimension = dk;
    rho.entries.assign(dk * dk, Complex{});
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            Complex acc{};
            for (std::size_t e = 0; e < de; ++e) {
                acc += m[r * de + e] * std::conj(m[c * de + e]);
            }
            rho.entries[r * dk + c] = acc;
        }
    }
    return rho;
}

double fidelity(const DensityMatrix& rho, const StateVector& ref) {
    const auto aligned = reorder(ref, rho.labels);
    const auto& v = aligned.amplitudes();
    Complex acc{};
    for (std::size_t r = 0; r < rho.dimension; ++r) {
        for (std::size_t c = 0; c < rho.dimension; ++c) {
            acc += std::conj(v[r]) * rho(r, c) * v[c];
        }
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

double reduced_fidelity(const StateVector& state, std::string_view qubit, const StateVector& ref) {
    if (ref.num_qubits() != 1) {
        throw std::invalid_argument("reference must be a single-qubit state");
    }
    auto rho = reduced_density(state, {Label(qubit)});
    return fidelity(rho, relabel(ref, ref.labels()[0], Label(qubit)));
}

double overlap_fidelity(const StateVector& a, const StateVector& b) {
    const auto aligned = reorder(b, a.labels());
    Complex acc{};
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        acc += std::conj(a.amplitudes()[i]) * aligned.amplitudes()[i];
    }
    return std::min(1.0, std::norm(acc));
}

bool approx_equal(const StateVector& a, const StateVector& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    for (const auto& label : a.labels()) {
        if (!b.has(label)) {
            return false;
        }
    }
    const auto aligned = reorder(b, a.labels());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (std::abs(a.amplitudes()[i] - aligned.amplitudes()[i]) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<double> z_marginal(const StateVector& state, const std::vector<Label>& qubits) {
    check_labels(qubits);
    const auto masks = masks_of(state, qubits);
    std::vector<double> probs(std::size_t{1} << qubits.size());
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        probs[gather(i, masks)] += std::norm(in[i]);
    }
    return probs;
}

}  // namespace wshare
