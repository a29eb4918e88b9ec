// Copyright 2026 The moegame Authors
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

#include "moegame/qcore.h"

#include <gtest/gtest.h>

#include "moegame/errors.h"
#include "moegame/random_strategies.h"
#include "oracles.h"

namespace moegame {
namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng &rng) {
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    return m;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng &rng) {
    ComplexMatrix a = random_matrix(dim, dim, rng);
    ComplexMatrix h = a + a.adjoint();
    h *= 0.5;
    return h;
}

PauliString random_pauli(int n, Rng &rng) {
    std::vector<Pauli> labels(static_cast<std::size_t>(n));
    for (auto &l : labels) l = static_cast<Pauli>(rng.below(4));
    static const Complex phases[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
    return PauliString(labels, phases[rng.below(4)]);
}

TEST(Kron, IdentityTimesIdentity) {
    const ComplexMatrix k = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    EXPECT_EQ(oracle::max_abs_diff(oracle::from(ComplexMatrix::identity(4)), k), 0.0);
}

TEST(Kron, ZZHasEigenvaluePlusOneOnOneOne) {
    const ComplexMatrix z = PauliString::parse("Z").to_matrix();
    const StateVector v = kron(z, z) * StateVector::basis(4, 3);
    EXPECT_EQ(v[3], Complex(1.0));
}

TEST(Kron, XZMatchesEntrywiseTable) {
    const ComplexMatrix k =
        kron(PauliString::parse("X").to_matrix(), PauliString::parse("Z").to_matrix());
    // X (x) Z written out by hand.
    const oracle::Dense expected = {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    EXPECT_EQ(oracle::max_abs_diff(expected, k), 0.0);
}

TEST(Kron, RejectsDimensionsBeyondCap) {
    const ComplexMatrix a = ComplexMatrix::identity(64);
    EXPECT_THROW(kron(a, a, 1024), SizeError);
}

TEST(PauliString, ParsesPhasePrefixes) {
    EXPECT_EQ(PauliString::parse("-iXY").phase(), Complex(0, -1));
    EXPECT_EQ(PauliString::parse("+Z").phase(), Complex(1));
    EXPECT_THROW(PauliString::parse("XQ"), InputError);
}

TEST(PauliString, RejectsNonUnitPhase) {
    EXPECT_THROW(PauliString({Pauli::X}, 2.0), ContractError);
}

TEST(PauliString, HermitianIffRealPhase) {
    EXPECT_TRUE(PauliString::parse("-XYZ").is_hermitian());
    EXPECT_FALSE(PauliString::parse("iXYZ").is_hermitian());
    EXPECT_TRUE(PauliString::parse("-XYZ").to_matrix().is_hermitian());
    EXPECT_FALSE(PauliString::parse("iXYZ").to_matrix().is_hermitian());
}

TEST(PauliString, AllZOnBasisStateGivesParitySign) {
    const int n = 4;
    const PauliString z = PauliString::parse("ZZZZ");
    for (std::size_t x = 0; x < 16; ++x) {
        const StateVector w = apply_pauli_string(z, StateVector::basis(16, x));
        const double sign = parity64(x) ? -1.0 : 1.0;
        EXPECT_EQ(w[x], Complex(sign)) << x;
        (void)n;
    }
}

TEST(PauliString, ApplyMatchesDenseKronOracle) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(5));
        const PauliString p = random_pauli(n, rng);
        const StateVector v = random_state(std::size_t{1} << n, rng);
        const oracle::Dense dense = oracle::dense_pauli(p);
        EXPECT_LT(oracle::max_abs_diff(dense, p.to_matrix()), 1e-15);
        const StateVector w = apply_pauli_string(p, v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            Complex acc = 0;
            for (std::size_t j = 0; j < v.size(); ++j) acc += dense[i][j] * v[j];
            EXPECT_NEAR(std::abs(acc - w[i]), 0.0, 1e-12);
        }
    }
}

TEST(PauliString, CompositionMatchesSequentialApplication) {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        const PauliString p = random_pauli(n, rng), q = random_pauli(n, rng);
        const StateVector v = random_state(std::size_t{1} << n, rng);
        const StateVector a = apply_pauli_string(p, apply_pauli_string(q, v));
        const StateVector b = apply_pauli_string(p * q, v);
        for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-12);
    }
}

TEST(PauliString, ApplyRejectsWrongDimension) {
    EXPECT_THROW(apply_pauli_string(PauliString::parse("XX"), StateVector(8)), ContractError);
}

TEST(LambdaMax, IdentityAndRankOneProjector) {
    EXPECT_NEAR(lambda_max(ComplexMatrix::identity(7)), 1.0, 1e-12);
    Rng rng(3);
    EXPECT_NEAR(lambda_max(ComplexMatrix::outer(random_state(9, rng))), 1.0, 1e-12);
}

TEST(LambdaMax, MatchesJacobiOracleOnRandomHermitian) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix h = random_hermitian(8, rng);
        const auto expected = oracle::jacobi_eigenvalues(oracle::from(h));
        EXPECT_NEAR(lambda_max(h), expected.back(), 1e-8);
        EXPECT_NEAR(lambda_min(h), expected.front(), 1e-8);
        const auto all = hermitian_eigenvalues(h);
        for (std::size_t k = 0; k < all.size(); ++k) EXPECT_NEAR(all[k], expected[k], 1e-8);
    }
}

TEST(LambdaMax, TopEigenpairSatisfiesEigenEquation) {
    Rng rng(5);
    const ComplexMatrix h = random_hermitian(6, rng);
    const EigenPair top = top_eigenpair(h);
    const StateVector hv = h * top.vector;
    for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(hv[k] - top.value * top.vector[k]), 0.0, 1e-10);
    EXPECT_NEAR(top.vector.norm_squared(), 1.0, 1e-12);
}

TEST(LambdaMax, InvariantUnderPauliConjugation) {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = random_hermitian(16, rng);
        const ComplexMatrix u = random_pauli(4, rng).to_matrix();
        EXPECT_NEAR(lambda_max(u * h * u.adjoint()), lambda_max(h), 1e-9);
    }
}

TEST(LambdaMax, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::identity(3);
    m(0, 1) = 1.0;
    EXPECT_THROW(lambda_max(m), ContractError);
}

TEST(OperatorNorm, ZeroPauliAndSingularValueOracle) {
    EXPECT_EQ(operator_norm(ComplexMatrix(5, 3)), 0.0);
    Rng rng(7);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(operator_norm(random_pauli(n, rng).to_matrix()), 1.0, 1e-12);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_matrix(4, 4, rng);
        EXPECT_NEAR(operator_norm(a), oracle::singular_value_max(oracle::from(a)), 1e-8);
    }
    const ComplexMatrix tall = random_matrix(6, 2, rng);
    EXPECT_NEAR(operator_norm(tall), oracle::singular_value_max(oracle::from(tall)), 1e-8);
}

TEST(OperatorNorm, Submultiplicative) {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = random_matrix(5, 5, rng), b = random_matrix(5, 5, rng);
        EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) + 1e-9);
    }
}

TEST(StateVector, NormalizationAndPhaseComparison) {
    StateVector v(std::vector<Complex>{3.0, Complex(0, 4)});
    EXPECT_FALSE(v.is_normalized());
    const StateVector u = v.normalized();
    EXPECT_TRUE(u.is_normalized());
    EXPECT_TRUE(equal_up_to_phase(u, Complex(0, 1) * u));
    EXPECT_FALSE(equal_up_to_phase(u, StateVector::basis(2, 0)));
    EXPECT_THROW(StateVector(3).normalized(), ContractError);
}

}  // namespace
}  // namespace moegame
