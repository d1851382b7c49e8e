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

#ifndef WSHARE_STATEVEC_H
#define WSHARE_STATEVEC_H

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wshare/rng.h"

namespace wshare {

using Complex = std::complex<double>;
using Label = std::string;

/// Branches with squared norm at or below this are treated as impossible.
inline constexpr double kZeroProbability = 1e-20;

enum class Basis : std::uint8_t {
    Z,  // |0>, |1>
    X,  // |+>, |->
};

std::string_view to_string(Basis basis);

/// Dense pure state over a small labelled register.
///
/// Amplitude index bit ordering is big-endian in the label list: the first
/// label is the most significant bit, so |1000>_abce has index 8. A register
/// with no labels holds a single unit amplitude.
class StateVector {
   public:
    /// The empty register: no qubits, one unit amplitude.
    StateVector() : amplitudes_{Complex{1.0}} {}

    /// Throws std::invalid_argument unless the sizes agree, labels are unique
    /// and the norm is 1 within 1e-9. The stored vector is renormalized.
    StateVector(std::vector<Complex> amplitudes, std::vector<Label> labels);

    /// Normalizes an arbitrary nonzero vector. Throws std::invalid_argument on
    /// a zero vector.
    static StateVector normalized(std::vector<Complex> amplitudes, std::vector<Label> labels);

    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    const std::vector<Label>& labels() const { return labels_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dimension() const { return amplitudes_.size(); }

    bool has(std::string_view label) const;
    /// Register position of a label. Throws std::invalid_argument if absent.
    std::size_t position(std::string_view label) const;
    /// Bit mask of a label inside an amplitude index.
    std::size_t mask(std::string_view label) const;

    /// Amplitude of a computational basis ket written as a bit string in
    /// register order, e.g. "1000".
    Complex amplitude(std::string_view bits) const;

    double norm_squared() const;

   private:
    friend StateVector relabel(const StateVector&, std::string_view, Label);
    friend StateVector reorder(const StateVector&, const std::vector<Label>&);

    std::vector<Complex> amplitudes_;
    std::vector<Label> labels_;
};

StateVector make_basis_state(std::span<const int> bits, std::vector<Label> labels);
StateVector make_qubit(Complex zero, Complex one, Label label);
StateVector make_message_state(Complex a, Complex b, Label label = "m");
/// (|100> + |010> + |001>)/sqrt(3).
StateVector make_w_state(std::vector<Label> labels);
/// Eigenstate of `basis` with the given outcome bit (0 -> |0> or |+>).
StateVector basis_ket(Basis basis, int outcome, Label label);

enum class BellState : std::uint8_t {
    PhiPlus = 0,   // (|00> + |11>)/sqrt2, bits 00
    PhiMinus = 1,  // (|00> - |11>)/sqrt2, bits 01
    PsiPlus = 2,   // (|01> + |10>)/sqrt2, bits 10
    PsiMinus = 3,  // (|01> - |10>)/sqrt2, bits 11
};

inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus};

std::string_view to_string(BellState bell);
/// Classical bits (parity, phase) announced after a Bell measurement.
std::array<int, 2> bell_bits(BellState bell);
StateVector make_bell_state(BellState bell, Label first, Label second);

StateVector tensor(const StateVector& left, const StateVector& right);
StateVector apply_cnot(const StateVector& state, std::string_view control, std::string_view target);
StateVector apply_x(const StateVector& state, std::string_view qubit);
StateVector apply_z(const StateVector& state, std::string_view qubit);
StateVector relabel(const StateVector& state, std::string_view from, Label to);
/// Same state with the register permuted into `order` (a permutation of the
/// current labels).
StateVector reorder(const StateVector& state, const std::vector<Label>& order);

/// Result of contracting a state with a bra on a subset of its qubits.
struct Projection {
    double probability = 0;
    /// Normalized state of the remaining qubits; empty when the probability
    /// is zero.
    std::optional<StateVector> remainder;
};

/// <bra| (x) 1 applied to `state`; the bra's labels must be a subset.
Projection project_out(const StateVector& state, const StateVector& bra);

/// Removes a qubit that sits in a Z eigenstate. Throws std::invalid_argument
/// if the qubit is in superposition or entangled.
StateVector drop_qubit(const StateVector& state, std::string_view qubit);

struct MeasurementBranch {
    int outcome = 0;
    double probability = 0;
    /// Collapsed state, measured qubit retained. Empty for impossible branches.
    std::optional<StateVector> post_state;
};

/// Both branches of a single-qubit measurement with exact probabilities.
std::array<MeasurementBranch, 2> enumerate_qubit(const StateVector& state, std::string_view qubit, Basis basis);
/// Collapses onto one outcome. Throws std::logic_error for a zero-probability
/// outcome.
StateVector project_qubit(const StateVector& state, std::string_view qubit, Basis basis, int outcome);
MeasurementBranch measure_qubit(const StateVector& state, std::string_view qubit, Basis basis, Rng& rng);

struct BellOutcome {
    BellState bell = BellState::PhiPlus;
    double probability = 0;
    std::optional<StateVector> post_state;
};

std::array<BellOutcome, 4> enumerate_bell(const StateVector& state, std::string_view first, std::string_view second);
BellOutcome bell_measure(const StateVector& state, std::string_view first, std::string_view second, Rng& rng);

/// Row-major density operator over a subset of a register.
struct DensityMatrix {
    std::vector<Label> labels;
    std::size_t dimension = 1;
    std::vector<Complex> entries;

    Complex operator()(std::size_t row, std::size_t col) const { return entries[row * dimension + col]; }
    double trace() const;
    double purity() const;
};

DensityMatrix reduced_density(const StateVector& state, const std::vector<Label>& keep);
/// <ref| rho |ref>, where ref is pure and labelled like rho (any order).
double fidelity(const DensityMatrix& rho, const StateVector& ref);
/// <ref| rho_q |ref> for a single-qubit reference.
double reduced_fidelity(const StateVector& state, std::string_view qubit, const StateVector& ref);
/// |<a|b>|^2 for states over the same label set.
double overlap_fidelity(const StateVector& a, const StateVector& b);
/// Amplitude-wise comparison after aligning label order (phase sensitive).
bool approx_equal(const StateVector& a, const StateVector& b, double tol);

/// Joint Z-basis distribution of `qubits`, indexed big-endian in that order.
std::vector<double> z_marginal(const StateVector& state, const std::vector<Label>& qubits);

}  // namespace wshare

#endif
