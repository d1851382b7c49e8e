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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "test_util.h"

using namespace wshare;
using namespace wshare::testing;

namespace {

constexpr double kTol = 1e-12;

void expect_amplitudes(const StateVector& s, const std::vector<Complex>& expected) {
    ASSERT_EQ(s.dimension(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(std::abs(s.amplitudes()[i] - expected[i]), 0.0, kTol) << "index " << i;
    }
}

}  // namespace

TEST(StateVector, rejects_bad_construction) {
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0}, {"a", "b"}), std::invalid_argument);
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0, 0.0}, {"a", "a"}), std::invalid_argument);
    EXPECT_THROW(StateVector({1.0, 1.0}, {"a"}), std::invalid_argument);
    EXPECT_THROW(StateVector::normalized({0.0, 0.0}, {"a"}), std::invalid_argument);
}

TEST(StateVector, empty_register_is_a_unit_scalar) {
    StateVector s;
    EXPECT_EQ(s.num_qubits(), 0U);
    EXPECT_EQ(s.dimension(), 1U);
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(make_basis_state, examples) {
    auto e = make_basis_state(std::vector<int>{0}, {"e"});
    expect_amplitudes(e, ket0());
    EXPECT_EQ(e.labels(), std::vector<Label>{"e"});

    auto abc = make_basis_state(std::vector<int>{0, 1, 0}, {"a", "b", "c"});
    EXPECT_EQ(abc.amplitude("010"), Complex{1.0});
    EXPECT_DOUBLE_EQ(abc.norm_squared(), 1.0);

    auto abce = make_basis_state(std::vector<int>{1, 0, 0, 0}, {"a", "b", "c", "e"});
    EXPECT_EQ(abce.amplitudes()[8], Complex{1.0});
    EXPECT_EQ(abce.amplitude("1000"), Complex{1.0});
}

TEST(make_basis_state, length_mismatch) {
    EXPECT_THROW(make_basis_state(std::vector<int>{0, 1}, {"a"}), std::invalid_argument);
    EXPECT_THROW(make_basis_state(std::vector<int>{2}, {"a"}), std::invalid_argument);
}

TEST(make_message_state, examples) {
    expect_amplitudes(make_message_state(1.0, 0.0), ket0());
    expect_amplitudes(make_message_state(kInvSqrt2, kInvSqrt2), ket_plus());
    auto s = make_message_state(0.6, Complex{0.0, 0.8});
    // 0.36 + 0.64 = 1
    EXPECT_NEAR(s.norm_squared(), 1.0, kTol);
    EXPECT_EQ(s.labels(), std::vector<Label>{"m"});
    EXPECT_THROW(make_message_state(0.6, 0.6), std::invalid_argument);
}

TEST(make_w_state, z_measurement_of_third_qubit) {
    auto w = make_w_state({"a", "b", "c"});
    auto branches = enumerate_qubit(w, "c", Basis::Z);
    EXPECT_NEAR(branches[0].probability, 2.0 / 3.0, kTol);
    EXPECT_NEAR(branches[1].probability, 1.0 / 3.0, kTol);

    // Outcome 0 leaves (|10> + |01>)/sqrt2 on (a, b).
    expect_amplitudes(*branches[0].post_state, kron(superpose({{kInvSqrt2, kron(ket1(), ket0())},
                                                              {kInvSqrt2, kron(ket0(), ket1())}}),
                                                    ket0()));
    // Outcome 1 leaves |00>.
    expect_amplitudes(*branches[1].post_state, kron(kron(ket0(), ket0()), ket1()));
}

TEST(make_w_state, rejects_duplicate_labels) {
    EXPECT_THROW(make_w_state({"a", "a", "c"}), std::invalid_argument);
    EXPECT_THROW(make_w_state({"a", "b"}), std::invalid_argument);
}

TEST(make_w_state, x_basis_expansion_matches_z_form) {
    // (|++> - |-->)|0>/sqrt3 + (|++> + |+-> + |-+> + |-->)|1>/(2 sqrt3)
    const double c0 = kInvSqrt3;
    const double c1 = kInvSqrt3 / 2.0;
    auto pp = kron(ket_plus(), ket_plus());
    auto pm = kron(ket_plus(), ket_minus());
    auto mp = kron(ket_minus(), ket_plus());
    auto mm = kron(ket_minus(), ket_minus());
    auto expansion = superpose({{c0, kron(pp, ket0())},
                                {-c0, kron(mm, ket0())},
                                {c1, kron(pp, ket1())},
                                {c1, kron(pm, ket1())},
                                {c1, kron(mp, ket1())},
                                {c1, kron(mm, ket1())}});
    expect_amplitudes(make_w_state({"a", "b", "c"}), expansion);

    // Middle line: sqrt(2/3) psi+ |0> + sqrt(1/3) |00>|1>.
    auto psi = superpose({{kInvSqrt2, kron(ket1(), ket0())}, {kInvSqrt2, kron(ket0(), ket1())}});
    auto middle = superpose({{std::sqrt(2.0 / 3.0), kron(psi, ket0())}, {kInvSqrt3, kron(kron(ket0(), ket0()), ket1())}});
    expect_amplitudes(make_w_state({"a", "b", "c"}), middle);
}

TEST(tensor, examples) {
    auto e0 = make_basis_state(std::vector<int>{0}, {"e"});
    auto w = make_w_state({"a", "b", "c"});
    auto joint = tensor(e0, w);
    EXPECT_EQ(joint.dimension(), 16U);
    EXPECT_NEAR(joint.norm_squared(), 1.0, kTol);

    auto pair = tensor(make_message_state(0.6, 0.8), make_bell_state(BellState::PsiPlus, "a", "b"));
    EXPECT_EQ(pair.dimension(), 8U);
    EXPECT_EQ(pair.labels(), (std::vector<Label>{"m", "a", "b"}));

    EXPECT_THROW(tensor(w, make_basis_state(std::vector<int>{0}, {"b"})), std::invalid_argument);
}

TEST(tensor, fake_qubit_times_w_reproduces_the_store_resend_joint_state) {
    const double x = 0.6;
    const double y = 0.8;
    auto upsilon = tensor(make_qubit(x, y, "b"), make_w_state({"a", "e", "c"}));
    auto aecb = reorder(upsilon, {"a", "e", "c", "b"});
    // (x|1000> + y|0101> + x|0100> + y|1001> + x|0010> + y|0011>)/sqrt3 over aecb
    EXPECT_NEAR(std::abs(aecb.amplitude("1000") - x * kInvSqrt3), 0.0, kTol);
    EXPECT_NEAR(std::abs(aecb.amplitude("0101") - y * kInvSqrt3), 0.0, kTol);
    EXPECT_NEAR(std::abs(aecb.amplitude("0100") - x * kInvSqrt3), 0.0, kTol);
    EXPECT_NEAR(std::abs(aecb.amplitude("1001") - y * kInvSqrt3), 0.0, kTol);
    EXPECT_NEAR(std::abs(aecb.amplitude("0010") - x * kInvSqrt3), 0.0, kTol);
    EXPECT_NEAR(std::abs(aecb.amplitude("0011") - y * kInvSqrt3), 0.0, kTol);
    double listed = 0;
    for (auto bits : {"1000", "0101", "0100", "1001", "0010", "0011"}) {
        listed += std::norm(aecb.amplitude(bits));
    }
    EXPECT_NEAR(listed, 1.0, kTol);
}

TEST(apply_cnot, entangling_bob_with_an_ancilla) {
    auto joint = tensor(make_w_state({"a", "b", "c"}), make_basis_state(std::vector<int>{0}, {"e"}));
    auto out = apply_cnot(joint, "b", "e");
    std::vector<Complex> expected(16);
    expected[0b1000] = kInvSqrt3;
    expected[0b0101] = kInvSqrt3;
    expected[0b0010] = kInvSqrt3;
    expect_amplitudes(out, expected);
}

TEST(apply_cnot, identity_on_control_zero_and_involution) {
    auto zz = make_basis_state(std::vector<int>{0, 0}, {"a", "b"});
    expect_amplitudes(apply_cnot(zz, "a", "b"), zz.amplitudes());

    auto& rng = shared_rng();
    for (int k = 0; k < 50; ++k) {
        auto s = random_state({"a", "b"}, rng);
        EXPECT_TRUE(approx_equal(apply_cnot(apply_cnot(s, "a", "b"), "a", "b"), s, kTol));
        EXPECT_TRUE(approx_equal(apply_cnot(apply_cnot(s, "b", "a"), "b", "a"), s, kTol));
    }
    EXPECT_THROW(apply_cnot(zz, "a", "z"), std::invalid_argument);
    EXPECT_THROW(apply_cnot(zz, "a", "a"), std::invalid_argument);
}

TEST(measure_qubit, w_state_home_qubit_frequencies) {
    auto w = make_w_state({"a", "b", "c"});
    Rng rng(7);
    const std::size_t trials = 100000;
    std::size_t zeros = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        zeros += measure_qubit(w, "c", Basis::Z, rng).outcome == 0;
    }
    EXPECT_LT(binomial_sigmas(zeros, trials, 2.0 / 3.0), 4.0);
}

TEST(measure_qubit, plus_in_x_basis_is_certain) {
    auto plus = make_qubit(kInvSqrt2, kInvSqrt2, "q");
    Rng rng(1);
    for (int k = 0; k < 100; ++k) {
        auto b = measure_qubit(plus, "q", Basis::X, rng);
        EXPECT_EQ(b.outcome, 0);
        EXPECT_NEAR(b.probability, 1.0, kTol);
    }
}

TEST(measure_qubit, psi_plus_z_outcomes_always_differ) {
    auto psi = make_bell_state(BellState::PsiPlus, "a", "b");
    for (const auto& a : enumerate_qubit(psi, "a", Basis::Z)) {
        ASSERT_TRUE(a.post_state);
        EXPECT_NEAR(a.probability, 0.5, kTol);
        auto b = enumerate_qubit(*a.post_state, "b", Basis::Z);
        EXPECT_NEAR(b[static_cast<std::size_t>(1 - a.outcome)].probability, 1.0, kTol);
        EXPECT_FALSE(b[static_cast<std::size_t>(a.outcome)].post_state);
    }
}

TEST(measure_qubit, repeated_measurement_is_idempotent) {
    auto& rng = shared_rng();
    for (int k = 0; k < 50; ++k) {
        auto s = random_state({"a", "b", "c"}, rng);
        for (Basis basis : {Basis::Z, Basis::X}) {
            auto first = measure_qubit(s, "b", basis, rng);
            auto again = enumerate_qubit(*first.post_state, "b", basis);
            EXPECT_NEAR(again[static_cast<std::size_t>(first.outcome)].probability, 1.0, kTol);
        }
    }
}

TEST(enumerate_qubit, examples) {
    auto zero = make_basis_state(std::vector<int>{0}, {"q"});
    auto b = enumerate_qubit(zero, "q", Basis::Z);
    EXPECT_EQ(b[0].outcome, 0);
    EXPECT_DOUBLE_EQ(b[0].probability, 1.0);
    EXPECT_EQ(b[1].outcome, 1);
    EXPECT_DOUBLE_EQ(b[1].probability, 0.0);
    EXPECT_FALSE(b[1].post_state);
    EXPECT_THROW(project_qubit(zero, "q", Basis::Z, 1), std::logic_error);
    EXPECT_THROW(enumerate_qubit(zero, "r", Basis::Z), std::invalid_argument);
}

TEST(enumerate_qubit, store_resend_abc_state_home_split) {
    // (x|100> + y|010> + x|000> + y|110> + x|001> + y|011>)/sqrt3, x = y = 1/sqrt2
    const double x = kInvSqrt2;
    const double y = kInvSqrt2;
    std::vector<Complex> amps(8);
    amps[0b100] += x * kInvSqrt3;
    amps[0b010] += y * kInvSqrt3;
    amps[0b000] += x * kInvSqrt3;
    amps[0b110] += y * kInvSqrt3;
    amps[0b001] += x * kInvSqrt3;
    amps[0b011] += y * kInvSqrt3;
    StateVector upsilon(amps, {"a", "b", "c"});
    auto b = enumerate_qubit(upsilon, "c", Basis::Z);
    EXPECT_NEAR(b[0].probability, 2.0 / 3.0, kTol);
    EXPECT_NEAR(b[1].probability, 1.0 / 3.0, kTol);
}

TEST(bell_measure, message_times_psi_plus_is_uniform) {
    auto joint = tensor(make_message_state(0.6, 0.8), make_bell_state(BellState::PsiPlus, "a", "b"));
    for (const auto& o : enumerate_bell(joint, "m", "a")) {
        EXPECT_NEAR(o.probability, 0.25, kTol);
    }
    auto psi = make_bell_state(BellState::PsiPlus, "a", "b");
    auto outcomes = enumerate_bell(psi, "a", "b");
    EXPECT_NEAR(outcomes[static_cast<std::size_t>(BellState::PsiPlus)].probability, 1.0, kTol);
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        EXPECT_EQ(bell_measure(psi, "a", "b", rng).bell, BellState::PsiPlus);
    }
    EXPECT_THROW(enumerate_bell(psi, "a", "a"), std::invalid_argument);
}

TEST(bell_measure, corrupted_pair_leaves_be_in_epsilon_plus) {
    const Complex a{0.6};
    const Complex b{0.0, 0.8};
    std::vector<Complex> phi(8);
    phi[0b100] = kInvSqrt2;
    phi[0b011] = kInvSqrt2;
    auto joint = tensor(make_message_state(a, b), StateVector(phi, {"a", "b", "e"}));
    auto psi_plus = enumerate_bell(joint, "m", "a")[static_cast<std::size_t>(BellState::PsiPlus)];
    ASSERT_TRUE(psi_plus.post_state);
    auto be = project_out(*psi_plus.post_state, make_bell_state(BellState::PsiPlus, "m", "a"));
    std::vector<Complex> eps(4);
    eps[0b00] = a;
    eps[0b11] = b;
    EXPECT_TRUE(approx_equal(*be.remainder, StateVector(eps, {"b", "e"}), kTol));
}

TEST(reduced_fidelity, examples) {
    auto zero = make_basis_state(std::vector<int>{0}, {"q"});
    EXPECT_NEAR(reduced_fidelity(zero, "q", zero), 1.0, kTol);

    auto psi = make_bell_state(BellState::PsiPlus, "a", "b");
    EXPECT_NEAR(reduced_fidelity(psi, "a", zero), 0.5, kTol);
    EXPECT_NEAR(reduced_density(psi, {"a"}).purity(), 0.5, kTol);
    EXPECT_THROW(reduced_fidelity(psi, "a", psi), std::invalid_argument);
}

TEST(reduced_fidelity, honest_teleport_by_hand) {
    // Bell-measure (m, a) of |psi>_m psi+_ab, then fix b with the Pauli that
    // inverts each branch: phi+ X, phi- XZ, psi+ I, psi- Z.
    auto message = make_message_state(0.6, 0.8);
    auto joint = tensor(message, make_bell_state(BellState::PsiPlus, "a", "b"));
    for (const auto& o : enumerate_bell(joint, "m", "a")) {
        StateVector fixed = *o.post_state;
        switch (o.bell) {
            case BellState::PhiPlus:
                fixed = apply_x(fixed, "b");
                break;
            case BellState::PhiMinus:
                fixed = apply_z(apply_x(fixed, "b"), "b");
                break;
            case BellState::PsiPlus:
                break;
            case BellState::PsiMinus:
                fixed = apply_z(fixed, "b");
                break;
        }
        EXPECT_NEAR(reduced_fidelity(fixed, "b", message), 1.0, kTol) << to_string(o.bell);
    }
}

TEST(drop_qubit, only_removes_z_eigenstates) {
    auto s = make_basis_state(std::vector<int>{1, 0}, {"a", "c"});
    auto rest = drop_qubit(s, "c");
    EXPECT_EQ(rest.labels(), std::vector<Label>{"a"});
    expect_amplitudes(rest, ket1());
    EXPECT_THROW(drop_qubit(make_bell_state(BellState::PsiPlus, "a", "b"), "a"), std::invalid_argument);
}

TEST(z_marginal, w_state) {
    auto probs = z_marginal(make_w_state({"a", "b", "c"}), {"c", "a"});
    ASSERT_EQ(probs.size(), 4U);
    EXPECT_NEAR(probs[0b00], 1.0 / 3.0, kTol);  // b = 1
    EXPECT_NEAR(probs[0b01], 1.0 / 3.0, kTol);  // a = 1
    EXPECT_NEAR(probs[0b10], 1.0 / 3.0, kTol);  // c = 1
    EXPECT_NEAR(probs[0b11], 0.0, kTol);
}

TEST(StateVectorProperties, operations_preserve_normalization) {
    auto& rng = shared_rng();
    for (int k = 0; k < 100; ++k) {
        auto s = random_state({"a", "b", "c"}, rng);
        auto t = tensor(s, random_state({"e"}, rng));
        EXPECT_NEAR(t.norm_squared(), 1.0, kTol);
        EXPECT_NEAR(apply_cnot(t, "c", "e").norm_squared(), 1.0, kTol);
        EXPECT_NEAR(apply_x(t, "a").norm_squared(), 1.0, kTol);
        EXPECT_NEAR(apply_z(t, "b").norm_squared(), 1.0, kTol);
        EXPECT_NEAR(reorder(t, {"e", "c", "a", "b"}).norm_squared(), 1.0, kTol);
        for (Basis basis : {Basis::Z, Basis::X}) {
            auto br = enumerate_qubit(t, "b", basis);
            // Born completeness.
            EXPECT_NEAR(br[0].probability + br[1].probability, 1.0, kTol);
            for (const auto& b : br) {
                if (b.post_state) {
                    EXPECT_NEAR(b.post_state->norm_squared(), 1.0, kTol);
                }
            }
        }
        double bell_total = 0;
        for (const auto& o : enumerate_bell(t, "a", "e")) {
            bell_total += o.probability;
            if (o.post_state) {
                EXPECT_NEAR(o.post_state->norm_squared(), 1.0, kTol);
            }
        }
        EXPECT_NEAR(bell_total, 1.0, kTol);
    }
}

TEST(StateVectorProperties, sampling_matches_enumeration) {
    Rng rng(99);
    for (int k = 0; k < 3; ++k) {
        auto s = random_state({"a", "b", "c"}, rng);
        for (Basis basis : {Basis::Z, Basis::X}) {
            const double p0 = enumerate_qubit(s, "a", basis)[0].probability;
            const std::size_t trials = 100000;
            std::size_t zeros = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                zeros += measure_qubit(s, "a", basis, rng).outcome == 0;
            }
            EXPECT_LT(binomial_sigmas(zeros, trials, p0), 4.0) << "p0=" << p0;
        }
    }
}

TEST(StateVectorProperties, reorder_round_trip) {
    auto& rng = shared_rng();
    for (int k = 0; k < 20; ++k) {
        auto s = random_state({"a", "b", "c", "e"}, rng);
        auto r = reorder(reorder(s, {"c", "e", "b", "a"}), {"a", "b", "c", "e"});
        EXPECT_TRUE(approx_equal(s, r, 0.0));
    }
}
