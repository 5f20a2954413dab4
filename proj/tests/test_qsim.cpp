// Copyright 2026 The qconf Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qconf/qsim.hpp"

using namespace qconf;

namespace {

constexpr double kTol = 1e-12;
const double h = 1.0 / std::sqrt(2.0);

PureState random_product(std::size_t n, Rng &rng) {
    std::vector<PureState> parts;
    for (std::size_t i = 0; i < n; i++) {
        parts.push_back(materialize({rng.bit() ? Basis::X : Basis::Z, rng.bit()}));
    }
    return tensor(parts);
}

}  // namespace

TEST(QsimOracle, MaterializeMinus) {
    PureState s = materialize({Basis::X, 1});
    ASSERT_EQ(s.num_qubits(), 1u);
    EXPECT_NEAR(s[0].real(), h, kTol);
    EXPECT_NEAR(s[1].real(), -h, kTol);
    EXPECT_NEAR(s[0].imag(), 0.0, kTol);
}

TEST(QsimOracle, TensorPutsFirstQubitHigh) {
    PureState s = tensor({materialize({Basis::Z, 0}), materialize({Basis::Z, 1})});
    ASSERT_EQ(s.dimension(), 4u);
    EXPECT_NEAR(std::abs(s[1]), 1.0, kTol);
    EXPECT_NEAR(std::abs(s[0]) + std::abs(s[2]) + std::abs(s[3]), 0.0, kTol);
}

TEST(QsimOracle, ThreeQubitBasisVector) {
    JointBasis b(3);
    Outcome o{2, Sign::minus};
    EXPECT_EQ(o.code(), 5u);
    PureState v = b.vector(o.code());
    for (std::size_t i = 0; i < 8; i++) {
        double expected = i == 2 ? h : (i == 5 ? -h : 0.0);
        EXPECT_NEAR(v[i].real(), expected, kTol) << "index " << i;
    }
}

TEST(QsimOracle, CnotMakesBellPair) {
    PureState s = tensor({materialize({Basis::X, 0}), materialize({Basis::Z, 0})});
    PureState bell = apply_cnot(s, 0, 1);
    EXPECT_TRUE(approx_equal(bell, JointBasis(2).vector(0)));
}

TEST(QsimOracle, PauliActions) {
    PureState zero = materialize({Basis::Z, 0});
    EXPECT_TRUE(approx_equal(apply_1q_unitary(zero, pauli::X, 0), materialize({Basis::Z, 1})));
    PureState plus = materialize({Basis::X, 0});
    EXPECT_TRUE(approx_equal(apply_1q_unitary(plus, pauli::Z, 0), materialize({Basis::X, 1})));
    // i*sigma_y maps |0> to -|1>.
    PureState y = apply_1q_unitary(zero, pauli::iY, 0);
    EXPECT_NEAR(y[1].real(), -1.0, kTol);
}

TEST(QsimContract, RejectsBadStates) {
    EXPECT_THROW(PureState(1, {1.0, 1.0}), ContractError);
    EXPECT_THROW(PureState(2, {1.0, 0.0}), ContractError);
    EXPECT_THROW(PureState::computational(17, 0), ResourceLimitError);
    EXPECT_THROW(JointBasis(1), ResourceLimitError);
    EXPECT_THROW(apply_1q_unitary(materialize({Basis::Z, 0}), Matrix2{1.0, 1.0, 0.0, 1.0}, 0), ContractError);
    EXPECT_THROW(apply_cnot(PureState::computational(2, 0), 1, 1), ContractError);
    EXPECT_THROW(JointBasis(2).vector(4), ContractError);
}

TEST(QsimProperty, JointBasisIsOrthonormal) {
    for (std::size_t n = 2; n <= 6; n++) {
        JointBasis b(n);
        auto vs = b.vectors();
        ASSERT_EQ(vs.size(), std::size_t{1} << n);
        for (std::size_t i = 0; i < vs.size(); i++) {
            for (std::size_t j = 0; j < vs.size(); j++) {
                double ip = std::abs(inner_product(vs[i], vs[j]));
                EXPECT_NEAR(ip, i == j ? 1.0 : 0.0, kTol) << "N=" << n << " i=" << i << " j=" << j;
            }
        }
    }
}

TEST(QsimProperty, DistributionsSumToOne) {
    Rng rng(101);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = 2 + rng.below(7);
        PureState s = random_product(n, rng);
        auto p = outcome_distribution(s, JointBasis(n));
        double total = std::accumulate(p.begin(), p.end(), 0.0);
        EXPECT_NEAR(total, 1.0, 1e-10);
        for (double x : p) {
            EXPECT_GE(x, 0.0);
        }
    }
}

TEST(QsimProperty, OverlapMatchesMaterializedVector) {
    Rng rng(5);
    for (int trial = 0; trial < 50; trial++) {
        std::size_t n = 2 + rng.below(4);
        PureState s = random_product(n, rng);
        JointBasis b(n);
        for (std::uint32_t c = 0; c < b.size(); c++) {
            auto direct = inner_product(b.vector(c), s);
            EXPECT_NEAR(std::abs(direct - b.overlap(c, s.amplitudes())), 0.0, kTol);
        }
    }
}

TEST(QsimProperty, TargetedDistributionTracesOutAncilla) {
    // A product with an extra unentangled qubit gives the same statistics.
    Rng rng(9);
    for (int trial = 0; trial < 50; trial++) {
        PureState core = random_product(3, rng);
        PureState full = tensor({core, materialize({Basis::X, 1})});
        std::vector<std::size_t> targets{0, 1, 2};
        auto a = outcome_distribution(core, JointBasis(3));
        auto b = outcome_distribution(full, targets, JointBasis(3));
        for (std::size_t i = 0; i < a.size(); i++) {
            EXPECT_NEAR(a[i], b[i], 1e-12);
        }
    }
}

TEST(QsimProperty, MeasurementCollapsesAndRepeats) {
    Rng rng(77);
    for (int trial = 0; trial < 200; trial++) {
        PureState s = random_product(3, rng);
        std::size_t q = rng.below(3);
        Basis b = rng.bit() ? Basis::X : Basis::Z;
        auto first = measure_qubit(s, q, b, rng);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
        for (int again = 0; again < 3; again++) {
            EXPECT_EQ(measure_qubit(s, q, b, rng), first);
        }
    }
}

TEST(QsimProperty, WrongBasisMeasurementIsFair) {
    Rng rng(2024);
    const int n = 40000;
    int ones = 0;
    for (int i = 0; i < n; i++) {
        PureState s = materialize({Basis::Z, 0});
        ones += measure_qubit(s, 0, Basis::X, rng);
    }
    double se = std::sqrt(0.25 / n);
    EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 5 * se);
}

TEST(QsimProperty, JointSamplingFollowsBornRule) {
    // |+>|+>|+> spreads evenly over the four Phi_j^+ outcomes.
    Rng rng(31);
    PureState s = tensor({materialize({Basis::X, 0}), materialize({Basis::X, 0}), materialize({Basis::X, 0})});
    JointBasis b(3);
    std::vector<int> counts(8, 0);
    const int n = 40000;
    for (int i = 0; i < n; i++) {
        counts[measure_joint(s, b, rng).code()]++;
    }
    double se = std::sqrt(0.25 * 0.75 / n);
    for (std::uint32_t c = 0; c < 8; c++) {
        double expected = (c % 2 == 0) ? 0.25 : 0.0;
        EXPECT_NEAR(counts[c] / static_cast<double>(n), expected, 5 * se) << Outcome::from_code(c).to_string();
    }
}

TEST(QsimProperty, SamplerNeverPicksZeroProbability) {
    Rng rng(3);
    std::vector<double> p{0.0, 0.5, 0.0, 0.5};
    for (int i = 0; i < 10000; i++) {
        auto k = sample_index(p, rng);
        EXPECT_TRUE(k == 1 || k == 3);
    }
}
