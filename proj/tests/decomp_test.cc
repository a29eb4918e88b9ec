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

#include "moegame/decomp.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "moegame/errors.h"
#include "moegame/random_strategies.h"
#include "oracles.h"

namespace moegame {
namespace {

const GameSpec kGl1{GameVariant::kGl, 1};

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return b == 0 ? a : gcd(b, a % b); }

/// Count of (theta, r) in S straight from the definition, bit by bit.
std::uint64_t count_S(int n) {
    std::uint64_t count = 0;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t)
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) {
            bool any_h = false, r_on_h = false;
            for (int i = 0; i < n; ++i) {
                if ((t >> i) & 1) {
                    any_h = true;
                    if ((r >> i) & 1) r_on_h = true;
                }
            }
            count += any_h && r_on_h;
        }
    return count;
}

TEST(InS, Membership) {
    int members = 0;
    for (const char *t : {"0", "1"})
        for (const char *r : {"0", "1"}) {
            const bool in = in_S(BasisChoice::parse(t), BitString::parse(r));
            members += in;
            EXPECT_EQ(in, std::string(t) == "1" && std::string(r) == "1");
        }
    EXPECT_EQ(members, 1);
    for (std::uint64_t r = 0; r < 8; ++r) EXPECT_FALSE(in_S(BasisChoice::parse("000"), BitString(3, r)));
    EXPECT_FALSE(in_S(BasisChoice::parse("111"), BitString::parse("000")));
    EXPECT_TRUE(in_S(BasisChoice::parse("010"), BitString::parse("011")));
    EXPECT_FALSE(in_S(BasisChoice::parse("010"), BitString::parse("101")));
}

TEST(ProbS, SmallCasesAndLowestTerms) {
    EXPECT_EQ(prob_S(1), (Rational{1, 4}));
    EXPECT_EQ(prob_S(2), (Rational{7, 16}));
    for (int n = 1; n <= kMaxEnumeratedS; ++n) {
        const std::uint64_t total = std::uint64_t{1} << (2 * n), c = count_S(n), g = gcd(c, total);
        EXPECT_EQ(prob_S(n), (Rational{c / g, total / g})) << n;
        const ChallengeSet s = ChallengeSet::enumerate(n);
        EXPECT_EQ(s.size, c);
        EXPECT_DOUBLE_EQ(s.delta, (1 - s.prob.value()) / s.prob.value());
    }
    EXPECT_THROW(prob_S(kMaxEnumeratedS + 1), SizeError);
    EXPECT_THROW(prob_S(0), SizeError);
}

TEST(ProbS, AuditAgainstClosedForms) {
    for (int n = 1; n <= 8; ++n) {
        const SSetAudit a = audit_s_set(n);
        EXPECT_TRUE(a.matches_three_quarters) << n;
        EXPECT_FALSE(a.matches_two_pow) << n;
        EXPECT_DOUBLE_EQ(a.one_minus_two_pow, 1 - std::ldexp(1.0, -n));
        EXPECT_NEAR(a.one_minus_three_quarters, 1 - std::pow(0.75, n), 1e-15);
        EXPECT_NEAR(a.delta_two_pow, std::ldexp(1.0, -n) / (1 - std::ldexp(1.0, -n)), 1e-15);
    }
}

TEST(SumXor, ClosedFormExamples) {
    EXPECT_EQ(sum_xor(3, BitString::parse("111"), BitString::parse("000"), 0), 4);
    EXPECT_EQ(sum_xor(3, BitString::parse("111"), BitString::parse("111"), 1), -4);
    EXPECT_EQ(sum_xor(2, BitString::parse("01"), BitString::parse("10"), 0), 0);
    EXPECT_EQ(sum_xor_brute(1, BitString::parse("1"), BitString::parse("0"), 0), 1);
    EXPECT_EQ(sum_xor_brute(1, BitString::parse("1"), BitString::parse("1"), 1), -1);
    EXPECT_THROW(sum_xor(2, BitString::parse("00"), BitString::parse("10"), 0), ContractError);
}

TEST(SumXor, AgreesWithEnumerationExhaustively) {
    for (int N = 1; N <= 6; ++N)
        for (std::uint64_t r = 1; r < (std::uint64_t{1} << N); ++r)
            for (std::uint64_t u = 0; u < (std::uint64_t{1} << N); ++u)
                for (int b = 0; b <= 1; ++b)
                    ASSERT_EQ(sum_xor(N, BitString(N, r), BitString(N, u), b),
                              sum_xor_brute(N, BitString(N, r), BitString(N, u), b));
}

TEST(SliceFamily, RoundTripsJointState) {
    Rng rng(1);
    const StateVector joint = random_state(8 * 4, rng);
    const SliceFamily f = SliceFamily::from_joint_state(3, 4, joint);
    EXPECT_EQ(f.vectors().size(), 8u);
    const StateVector back = f.joint_state();
    for (std::size_t k = 0; k < joint.size(); ++k) EXPECT_EQ(back[k], joint[k]);
    EXPECT_THROW(SliceFamily(1, 1, {StateVector(std::vector<Complex>{1.0}),
                                    StateVector(std::vector<Complex>{1.0})}),
                 ContractError);
}

TEST(AvgProjectorOnS, SandwichedByUnconditionedAverage) {
    Rng rng(2);
    for (int n = 1; n <= 3; ++n) {
        const Measurements m = random_measurements(GameSpec{GameVariant::kGl, n}, 2, 2, rng);
        const ComplexMatrix es = build_avg_projector_on_S(m), e = average_game_projector(m);
        const double pc = ChallengeSet::enumerate(n).complement();
        for (double ev : hermitian_eigenvalues(es)) {
            EXPECT_GE(ev, -1e-10);
            EXPECT_LE(ev, 1 + 1e-10);
        }
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector v = random_state(es.rows(), rng);
            const double vs = inner_product(v, es * v).real(), va = inner_product(v, e * v).real();
            EXPECT_LE(va - pc, vs + 1e-12);
            EXPECT_LE(vs, va + pc + 1e-12);
        }
    }
}

TEST(AvgProjectorOnS, SingleQubitIsTheOneMember) {
    for (std::uint64_t p = 0; p < 16; ++p) {
        const Measurements m = Measurements::semiclassical(AnswerTable::from_packed(kGl1, p));
        const ComplexMatrix es = build_avg_projector_on_S(m);
        const ComplexMatrix pi = gl_game_projector(BasisChoice::parse("1"), BitString::parse("1"), m);
        EXPECT_LT((es - pi).frobenius_norm(), 1e-15);
    }
}

TEST(W1, SemiclassicalIsHalfIdentityAndBoundedByHalf) {
    Rng rng(3);
    const AnswerTable t = random_answer_table(GameSpec{GameVariant::kGl, 3}, rng);
    for (bool cond : {true, false}) {
        ComplexMatrix half = ComplexMatrix::identity(8);
        half *= 0.5;
        EXPECT_LT((build_W1(Measurements::semiclassical(t), cond) - half).frobenius_norm(), 1e-15);
    }
    for (int n = 1; n <= 2; ++n) {
        const Measurements m = random_measurements(GameSpec{GameVariant::kGl, n}, 2, 2, rng);
        for (bool cond : {true, false})
            for (double ev : hermitian_eigenvalues(build_W1(m, cond))) {
                EXPECT_GE(ev, -1e-12);
                EXPECT_LE(ev, 0.5 + 1e-12);
            }
    }
}

TEST(W2, SemiclassicalBlocksAreSignedScalarsSupportedOnHadamardShifts) {
    const int n = 3;
    Rng rng(4);
    const AnswerTable t = random_answer_table(GameSpec{GameVariant::kGl, n}, rng);
    const ComplexMatrix w2 = build_W2_closed_form(Measurements::semiclassical(t));
    const ChallengeSet s = ChallengeSet::enumerate(n);
    // Oracle: entry (i, i ^ Delta) = 1/(2|S|) sum over S with r_H = Delta of
    // (-1)^{r_C.i + c}, evaluated member by member.
    for (std::uint64_t i = 0; i < 8; ++i)
        for (std::uint64_t j = 0; j < 8; ++j) {
            double expected = 0;
            for (std::uint64_t th = 0; th < 8; ++th)
                for (std::uint64_t r = 0; r < 8; ++r) {
                    const BasisChoice theta(BitString(n, th));
                    const BitString rr(n, r);
                    if (!in_S(theta, rr)) continue;
                    const std::uint64_t delta = r & th, rc = r & ~th & 7;
                    if ((i ^ delta) != j) continue;
                    const int c = t.at(theta, rr);
                    expected += (parity64(rc & i) ^ c) ? -1.0 : 1.0;
                }
            expected /= 2.0 * static_cast<double>(s.size);
            EXPECT_NEAR(std::abs(w2(i, j) - expected), 0.0, 1e-14) << i << "," << j;
        }
}

TEST(DecompositionResidual, RandomQuantumStrategies) {
    Rng rng(5);
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 3; ++trial)
            EXPECT_LT(decomposition_residual(random_measurements(GameSpec{GameVariant::kGl, n}, 2, 2, rng)),
                      1e-9);
}

TEST(DecompositionResidual, RandomSemiclassicalAndTrivialStrategies) {
    Rng rng(6);
    for (int n = 1; n <= 5; ++n)
        EXPECT_LT(decomposition_residual(Measurements::semiclassical(
                      random_answer_table(GameSpec{GameVariant::kGl, n}, rng))),
                  1e-9);
    const GameSpec gl{GameVariant::kGl, 2};
    const Measurements zero(gl, MeasurementFamily::deterministic(AnswerTable::constant(gl, 0), 2),
                            MeasurementFamily::deterministic(AnswerTable::constant(gl, 0), 2));
    EXPECT_LT(decomposition_residual(zero), 1e-12);
}

TEST(DecompositionResidual, ThresholdViolationCarriesResidual) {
    Rng rng(7);
    const Measurements m = random_measurements(GameSpec{GameVariant::kGl, 2}, 2, 2, rng);
    try {
        decomposition_residual(m, -1.0);
        FAIL() << "expected a mismatch";
    } catch (const DecompositionMismatch &e) {
        EXPECT_GE(e.residual(), 0.0);
        EXPECT_LT(e.residual(), 1e-9);
    }
}

TEST(DecompositionResidual, RejectsXorGame) {
    const Measurements m =
        Measurements::semiclassical(AnswerTable::constant(GameSpec{GameVariant::kXor, 2}, 0));
    EXPECT_THROW(decomposition_residual(m), ContractError);
}

TEST(W2Norm, BoundedForAllSingleQubitTables) {
    const W2Bound b = w2_bound(1);
    for (std::uint64_t p = 0; p < 16; ++p)
        EXPECT_LE(w2_norm_semiclassical(AnswerTable::from_packed(kGl1, p)), b.exact + 1e-12);
}

TEST(W2Norm, AgreesWithDenseOracle) {
    Rng rng(8);
    for (int n = 1; n <= 3; ++n) {
        const AnswerTable t = random_answer_table(GameSpec{GameVariant::kGl, n}, rng);
        const ComplexMatrix w2 = build_W2_closed_form(Measurements::semiclassical(t));
        EXPECT_NEAR(w2_norm_semiclassical(t), oracle::singular_value_max(oracle::from(w2)), 1e-9);
    }
}

TEST(W2Norm, ConstantTableMatchesSumXorClosedForm) {
    // With c constant the {r : r_H = Delta} sums reduce to sum_xor over C.
    const int n = 3;
    const AnswerTable t = AnswerTable::constant(GameSpec{GameVariant::kGl, n}, 0);
    const ComplexMatrix w2 = build_W2_closed_form(Measurements::semiclassical(t));
    const double size = static_cast<double>(ChallengeSet::enumerate(n).size);
    for (std::uint64_t i = 0; i < 8; ++i)
        for (std::uint64_t delta = 0; delta < 8; ++delta) {
            double expected = 0;
            for (std::uint64_t th = 1; th < 8; ++th) {
                if ((delta & ~th) != 0 || delta == 0) continue;
                const int nc = 3 - std::popcount(th);
                // sum_{r_C} (-1)^{r_C.i_C} = 2^{|C|} [i_C = 0]
                const bool ic_zero = (i & ~th & 7) == 0;
                expected += ic_zero ? std::ldexp(1.0, nc) : 0.0;
            }
            expected /= 2 * size;
            EXPECT_NEAR(w2(i, i ^ delta).real(), expected, 1e-14);
        }
    // The C-sum identity itself: sum_{x} (-1)^{x.u} over all 2^N x is
    // twice sum_xor with b = 0 minus the b = 1 sum, for any r != 0.
    for (std::uint64_t u = 0; u < 8; ++u) {
        const std::int64_t all = sum_xor(3, BitString(3, 5), BitString(3, u), 0) +
                                 sum_xor(3, BitString(3, 5), BitString(3, u), 1);
        EXPECT_EQ(all, u == 0 ? 8 : 0);
    }
}

TEST(W2Bound, ConstantsAndDecay) {
    const double rate = std::sqrt((4 + 2 * std::numbers::sqrt2) / 8);
    EXPECT_NEAR(rate, 0.9238795325, 1e-9);
    EXPECT_LE(rate, 0.93);
    for (int n = 1; n <= 10; ++n) {
        const W2Bound b = w2_bound(n);
        const double delta = ChallengeSet::enumerate(n).delta;
        EXPECT_NEAR(b.exact, 0.5 * (1 + delta) * std::pow(rate, n), 1e-15);
        EXPECT_NEAR(b.headline, 0.5 + std::pow(0.93, n), 1e-15);
        const double dp = std::ldexp(1.0, -n) / (1 - std::ldexp(1.0, -n));
        EXPECT_NEAR(b.published, 0.5 * (1 + dp) * std::pow(0.93, n), 1e-15);
    }
    EXPECT_LT(w2_bound(10).exact, w2_bound(9).exact);
}

TEST(Parseval, ClosedFormCases) {
    const ParsevalResult ones = parseval_check(std::vector<double>(8, 1.0), 3);
    EXPECT_DOUBLE_EQ(ones.lhs, 64);
    EXPECT_DOUBLE_EQ(ones.rhs, 64);
    for (int N = 1; N <= 6; ++N)
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << N); ++a) {
            std::vector<double> f(std::size_t{1} << N);
            for (std::uint64_t r = 0; r < f.size(); ++r) f[r] = parity64(a & r) ? -1 : 1;
            const ParsevalResult p = parseval_check(f, N);
            EXPECT_DOUBLE_EQ(p.lhs, std::ldexp(1.0, 2 * N));
            EXPECT_DOUBLE_EQ(p.rhs, std::ldexp(1.0, 2 * N));
        }
    EXPECT_THROW(parseval_check(std::vector<double>(3), 2), ContractError);
}

TEST(Parseval, FastTransformMatchesDoubleSum) {
    Rng rng(9);
    for (int N = 1; N <= 6; ++N) {
        std::vector<double> f(std::size_t{1} << N);
        for (double &x : f) x = rng.normal();
        double lhs = 0;
        for (std::uint64_t i = 0; i < f.size(); ++i) {
            double s = 0;
            for (std::uint64_t r = 0; r < f.size(); ++r) s += (parity64(i & r) ? -1 : 1) * f[r];
            lhs += s * s;
        }
        const ParsevalResult p = parseval_check(f, N);
        EXPECT_NEAR(p.lhs, lhs, 1e-10 * lhs);
        EXPECT_NEAR(p.lhs, p.rhs, 1e-12 * p.rhs);
    }
}

TEST(BlockNorm, SingleBlockAndDiagonalUnitaries) {
    Rng rng(10);
    ComplexMatrix a(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    const BlockNormResult one = block_norm_bound({{a}});
    EXPECT_NEAR(one.bound, one.actual, 1e-10);
    for (std::size_t k = 1; k <= 4; ++k) {
        std::vector<std::vector<ComplexMatrix>> grid(k, std::vector<ComplexMatrix>(k, ComplexMatrix(2, 2)));
        for (std::size_t i = 0; i < k; ++i) grid[i][i] = PauliString::parse("Y").to_matrix();
        const BlockNormResult r = block_norm_bound(grid);
        EXPECT_NEAR(r.actual, 1.0, 1e-10);
        EXPECT_NEAR(r.bound, std::sqrt(static_cast<double>(k)), 1e-10);
    }
}

TEST(BlockNorm, RandomGridsRespectBound) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<ComplexMatrix>> grid(2, std::vector<ComplexMatrix>(2, ComplexMatrix(2, 2)));
        for (auto &row : grid)
            for (auto &m : row)
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
        const BlockNormResult r = block_norm_bound(grid);
        EXPECT_LE(r.actual, r.bound + 1e-9);
    }
    EXPECT_THROW(block_norm_bound({{ComplexMatrix(2, 2), ComplexMatrix(3, 2)}}), ContractError);
}

TEST(Conjecture, FirstTermAtMostHalf) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(2));
        const Measurements m = random_measurements(GameSpec{GameVariant::kGl, n}, 2, 2, rng);
        const SliceFamily f = SliceFamily::from_joint_state(n, 4, random_state((std::size_t{1} << n) * 4, rng));
        const ConjectureTerms t = conjecture_lhs(m, f);
        EXPECT_LE(t.term1, 0.5 + 1e-12);
        EXPECT_NEAR(t.total, t.term1 + t.term2, 1e-15);
    }
}

TEST(Conjecture, UnitZeroSliceWithZeroAnswers) {
    for (int n = 1; n <= 3; ++n) {
        const GameSpec gl{GameVariant::kGl, n};
        const Measurements m = Measurements::semiclassical(AnswerTable::constant(gl, 0));
        std::vector<StateVector> v(std::size_t{1} << n, StateVector(1));
        v[0] = StateVector(std::vector<Complex>{1.0});
        const ConjectureTerms t = conjecture_lhs(m, SliceFamily(n, 1, v));
        // Only pairs with r_H = 0 can connect v_0 to itself.
        double zero_rh = 0;
        for (std::uint64_t th = 0; th < (std::uint64_t{1} << n); ++th)
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) zero_rh += (r & th) == 0;
        zero_rh /= std::ldexp(1.0, 2 * n);
        EXPECT_NEAR(t.term1, 0.5, 1e-15);
        EXPECT_NEAR(t.term2, 0.5 * zero_rh, 1e-15);
    }
}

TEST(Conjecture, TotalIsUnconditionedValue) {
    Rng rng(13);
    for (int n = 1; n <= 2; ++n) {
        const Measurements m = random_measurements(GameSpec{GameVariant::kGl, n}, 2, 2, rng);
        const StateVector v = random_state((std::size_t{1} << n) * 4, rng);
        const ConjectureTerms t = conjecture_lhs(m, SliceFamily::from_joint_state(n, 4, v));
        EXPECT_NEAR(t.total, inner_product(v, average_game_projector(m) * v).real(), 1e-12);
    }
}

TEST(BoundChain, OwnStateValueBoundedByHalfPlusW2) {
    Rng rng(14);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const SemiClassicalStrategy s = random_semiclassical(GameSpec{GameVariant::kGl, n}, rng);
            const ComplexMatrix w2 = build_W2_closed_form(Measurements::semiclassical(s.answers()));
            const StateVector &u = s.alice_state();
            const double rhs = 0.5 + inner_product(u, w2 * u).real() + ChallengeSet::enumerate(n).complement();
            EXPECT_LE(gl_game_value_semiclassical(s).value, rhs + 1e-12);
        }
}

}  // namespace
}  // namespace moegame
