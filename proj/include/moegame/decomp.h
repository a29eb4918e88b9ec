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

/**
 * @file
 * Decomposition of the GL game operator conditioned on the challenge set
 *
 *     S = {(theta, r) : |H| >= 1 and r_H != 0},
 *
 * into a block-diagonal part W1 = 1/2 I (x) E_S sum_b P_b (x) Q_b and an
 * off-diagonal part W2 = sum_{i, Delta} |i><i + Delta| (x) M_{i, Delta}, the
 * Fourier identities used to bound ||W2||, and the two-term conjectured bound.
 *
 * Every probability over S is the exact enumerated rational; nothing here
 * samples.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "moegame/games.h"

namespace moegame {

/// Largest n for which S is enumerated (4^n pairs).
inline constexpr int kMaxEnumeratedS = 10;

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational &, const Rational &) = default;
};

bool in_S(const BasisChoice &theta, const BitString &r);

/// Exact Pr[(theta, r) in S] by enumeration, in lowest terms. n <= 10.
Rational prob_S(int n);

/// The enumerated S-set with derived constants.
struct ChallengeSet {
    int n = 0;
    std::uint64_t size = 0;  ///< |S|
    Rational prob;           ///< |S| / 4^n
    double delta = 0.0;      ///< (1 - prob) / prob

    static ChallengeSet enumerate(int n);
    bool contains(const BasisChoice &theta, const BitString &r) const { return in_S(theta, r); }
    double complement() const { return 1.0 - prob.value(); }
};

/// prob_S next to the closed forms it is commonly compared against.
struct SSetAudit {
    int n = 0;
    Rational enumerated;
    double enumerated_value = 0.0;
    double one_minus_two_pow = 0.0;         ///< 1 - 2^-n
    double one_minus_three_quarters = 0.0;  ///< 1 - (3/4)^n
    bool matches_two_pow = false;           ///< exact rational comparison
    bool matches_three_quarters = false;
    double delta_enumerated = 0.0;
    double delta_two_pow = 0.0;  ///< 2^-n / (1 - 2^-n)
};

SSetAudit audit_s_set(int n);

/// sum_{x in {0,1}^N : r.x = b} (-1)^{x.u} in closed form. r != 0.
std::int64_t sum_xor(int N, const BitString &r, const BitString &u, int b);
/// The same sum by enumeration, N <= 16.
std::int64_t sum_xor_brute(int N, const BitString &r, const BitString &u, int b);

/// Slices v_i of a joint state sum_i |i>_A |v_i>_BC.
class SliceFamily {
  public:
    /// Checks 2^n vectors of dimension dim_bc with total squared norm 1 (1e-12).
    SliceFamily(int n, std::size_t dim_bc, std::vector<StateVector> vectors);

    static SliceFamily from_joint_state(int n, std::size_t dim_bc, const StateVector &joint);

    int n() const { return n_; }
    std::size_t dim_bc() const { return dim_bc_; }
    const StateVector &operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<StateVector> &vectors() const { return vectors_; }
    StateVector joint_state() const;

  private:
    int n_;
    std::size_t dim_bc_;
    std::vector<StateVector> vectors_;
};

/// E_{(theta,r) in S} Pi^{theta,r}, assembled from game_projector. GL only.
ComplexMatrix build_avg_projector_on_S(const Measurements &m);

/// 1/2 I_A (x) E[sum_b P_b (x) Q_b], over S when `conditioned`, else over all
/// challenges.
ComplexMatrix build_W1(const Measurements &m, bool conditioned);

/// W2 from its closed form:
/// M_{i,Delta} = 1/(2|S|) sum_{(theta,r) in S, r_H = Delta} (-1)^{r_C.i_C}
///               sum_b (-1)^b P_b (x) Q_b.
ComplexMatrix build_W2_closed_form(const Measurements &m);

/// || E_S Pi - W1(conditioned) - W2 ||_F. Throws DecompositionMismatch when
/// the residual exceeds `threshold`.
double decomposition_residual(const Measurements &m, double threshold = 1e-9);

/// ||W2|| for a semi-classical GL table (B and C trivial). n <= 6.
double w2_norm_semiclassical(const AnswerTable &answers);

struct W2Bound {
    /// 1/2 (1 + delta_enumerated) ((4 + 2 sqrt 2) / 8)^{n/2}
    double exact = 0.0;
    /// 1/2 (1 + 2^-n / (1 - 2^-n)) 0.93^n
    double published = 0.0;
    /// 1/2 + 0.93^n
    double headline = 0.0;
};

W2Bound w2_bound(int n);

struct ParsevalResult {
    double lhs = 0.0;  ///< sum_i (sum_r (-1)^{i.r} f(r))^2, by fast Walsh-Hadamard
    double rhs = 0.0;  ///< 2^N sum_r f(r)^2
};

ParsevalResult parseval_check(const std::vector<double> &f, int N);

struct BlockNormResult {
    double bound = 0.0;   ///< sqrt(sum_ij ||M_ij||^2)
    double actual = 0.0;  ///< operator norm of the assembled matrix
};

/// `blocks[i][j]` is block (i, j); all blocks in a block-row share a row
/// count and all blocks in a block-column share a column count.
BlockNormResult block_norm_bound(const std::vector<std::vector<ComplexMatrix>> &blocks);

struct ConjectureTerms {
    double term1 = 0.0;
    double term2 = 0.0;
    double total = 0.0;
};

/// Unconditioned two-term expression with b uniform:
///   term1 = E_{theta,r,b} sum_i <v_i|P_b (x) Q_b|v_i>
///   term2 = E_{theta,r,b} sum_i (-1)^{r_C.i_C + b} <v_i|P_b (x) Q_b|v_{i + r_H}>.
/// Throws ContractError if term2 has an imaginary part above 1e-9.
ConjectureTerms conjecture_lhs(const Measurements &m, const SliceFamily &slices);

}  // namespace moegame
