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
 * Optimization over semi-classical strategies: exhaustive enumeration of
 * answer tables, an alternating state/table ascent for the GL game, and the
 * reduction of an n-qubit XOR strategy to single-qubit branches.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moegame/games.h"

namespace moegame {

inline constexpr int kMaxBruteForceXor = 4;
inline constexpr int kMaxBruteForceGl = 2;
inline constexpr int kMaxAlternatingGl = 6;
inline constexpr int kMaxReduceXor = 6;

enum class SearchMethod { kExhaustive, kAlternating };
const char *to_string(SearchMethod method);

struct SearchReport {
    double best_value = 0.0;
    std::optional<SemiClassicalStrategy> best_strategy;
    /// Exhaustive: packed table index of the reported argmax.
    std::uint64_t best_index = 0;
    /// Exhaustive: every table. Alternating: eigenproblems solved.
    std::uint64_t tables_examined = 0;
    SearchMethod method = SearchMethod::kExhaustive;
    /// Alternating: values after each eigen step of the winning restart.
    std::vector<double> trace;
};

/// Max over all 2^(2^n) tables of lambda_max(E_theta sum_{x: parity(x) = c}
/// |x^theta><x^theta|). Tables are visited in packed-integer order and the
/// first table within 1e-12 of the maximum is reported.
SearchReport brute_force_xor(int n);

/// Max over all 2^(4^n) GL tables of lambda_max(M_c).
SearchReport brute_force_gl(int n);

/// Alternates u <- top eigenvector of M_c and c <- per-challenge majority
/// answer for u (ties answer 0) until the table is stable.
SearchReport alternating_gl_search(int n, int restarts, std::uint64_t seed);

/// One outcome of Alice simulating the referee on qubits 2..n.
struct ReductionBranch {
    BasisChoice theta_rest;
    BitString x_rest;
    /// 2^-(n-1) Pr[x_rest | theta_rest]
    double weight = 0.0;
    /// Post-measurement qubit-1 state with table c(theta_1 theta_rest) + parity(x_rest).
    SemiClassicalStrategy strategy;
};

struct XorReduction {
    std::vector<ReductionBranch> branches;
    /// sum over branches of weight * single-qubit value.
    double value = 0.0;
};

/// Exact branch enumeration of the reduction to XORMonogamy(1). n <= 6.
XorReduction reduce_xor_strategy(const SemiClassicalStrategy &s);

}  // namespace moegame
