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

// Exercises the shared library through its C header only.

#include "moegame/moegame.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

const double kCos2 = std::pow(std::cos(M_PI / 8), 2);

TEST(CApi, VersionAndStatusStrings) {
    EXPECT_NE(std::string(moe_version()), "");
    EXPECT_STREQ(moe_status_string(MOE_OK), "ok");
    EXPECT_NE(std::string(moe_status_string(MOE_ERR_DECOMPOSITION)), "");
}

TEST(CApi, NullArgumentsAreContractErrors) {
    EXPECT_EQ(moe_strategy_attack(nullptr, MOE_ATTACK_PHI, nullptr), MOE_ERR_CONTRACT);
    EXPECT_NE(std::string(moe_last_error_message()), "");
    moe_strategy_destroy(nullptr);
    moe_slices_destroy(nullptr);
    moe_rng_destroy(nullptr);
}

TEST(CApi, AttackStrategyExactAndSimulatedValues) {
    moe_strategy *s = nullptr;
    ASSERT_EQ(moe_strategy_attack("0110", MOE_ATTACK_PHI, &s), MOE_OK);
    moe_strategy_info info;
    ASSERT_EQ(moe_strategy_info_get(s, &info), MOE_OK);
    EXPECT_EQ(info.game, MOE_GAME_XOR);
    EXPECT_EQ(info.n, 4);
    EXPECT_EQ(info.quantum, 0);
    moe_value_report exact, mc, mc2;
    ASSERT_EQ(moe_strategy_exact_value(s, &exact), MOE_OK);
    EXPECT_NEAR(exact.value, kCos2, 1e-12);
    ASSERT_EQ(moe_strategy_simulate(s, 200000, 9, &mc), MOE_OK);
    ASSERT_EQ(moe_strategy_simulate(s, 200000, 9, &mc2), MOE_OK);
    EXPECT_EQ(mc.value, mc2.value);
    EXPECT_EQ(mc.method, MOE_METHOD_MONTE_CARLO);
    EXPECT_LT(std::abs(mc.value - kCos2), 4 * mc.standard_error);
    double reduced = 0;
    size_t branches = 0;
    ASSERT_EQ(moe_reduce_xor_value(s, &reduced, &branches), MOE_OK);
    EXPECT_NEAR(reduced, kCos2, 1e-10);
    EXPECT_GT(branches, 0u);
    moe_strategy_destroy(s);
}

TEST(CApi, AttackBiasAndFaultHook) {
    int predicted = -1;
    double bias = 0;
    ASSERT_EQ(moe_attack_bias("0", "1", MOE_ATTACK_PSI, 0, &predicted, &bias), MOE_OK);
    EXPECT_EQ(predicted, 1);
    EXPECT_NEAR(bias, kCos2, 1e-12);
    ASSERT_EQ(moe_attack_bias("01", "11", MOE_ATTACK_PHI, 1, &predicted, &bias), MOE_OK);
    EXPECT_GT(std::abs(bias - kCos2), 1e-9);
    EXPECT_EQ(moe_attack_bias("01", "1", MOE_ATTACK_PHI, 0, &predicted, &bias), MOE_ERR_CONTRACT);
}

TEST(CApi, JsonRoundTripWithSizeProbe) {
    const char *text = R"({"variant": "gl", "n": 1, "alice_state": [[1, 0], [0, 0]], "answer_table_hex": "0"})";
    moe_strategy *s = nullptr;
    ASSERT_EQ(moe_strategy_from_json(text, std::strlen(text), &s), MOE_OK);
    size_t needed = 0;
    char tiny[4];
    EXPECT_EQ(moe_strategy_to_json(s, tiny, sizeof tiny, &needed), MOE_ERR_SIZE);
    std::vector<char> buf(needed + 1);
    ASSERT_EQ(moe_strategy_to_json(s, buf.data(), buf.size(), &needed), MOE_OK);
    moe_strategy *t = nullptr;
    ASSERT_EQ(moe_strategy_from_json(buf.data(), needed, &t), MOE_OK);
    moe_value_report r;
    ASSERT_EQ(moe_strategy_exact_value(t, &r), MOE_OK);
    EXPECT_NEAR(r.value, 0.875, 1e-15);
    moe_strategy_destroy(s);
    moe_strategy_destroy(t);

    const char *bad = "{\"variant\": ";
    EXPECT_EQ(moe_strategy_from_json(bad, std::strlen(bad), &s), MOE_ERR_INPUT);
    EXPECT_NE(std::string(moe_last_error_message()).find("line"), std::string::npos);
}

TEST(CApi, RandomStrategiesAndDecomposition) {
    moe_strategy *q = nullptr;
    ASSERT_EQ(moe_strategy_random_quantum(MOE_GAME_GL, 2, 2, 2, 5, &q), MOE_OK);
    double residual = 1;
    ASSERT_EQ(moe_decomposition_residual(q, &residual), MOE_OK);
    EXPECT_LT(residual, 1e-9);
    double best = 0;
    moe_value_report r;
    ASSERT_EQ(moe_strategy_exact_value(q, &r), MOE_OK);
    ASSERT_EQ(moe_strategy_optimal_state_value(q, &best), MOE_OK);
    EXPECT_GE(best, r.value - 1e-12);
    EXPECT_EQ(moe_reduce_xor_value(q, &best, nullptr), MOE_ERR_CONTRACT);

    moe_slices *top = nullptr;
    ASSERT_EQ(moe_slices_top_eigenvector(q, &top), MOE_OK);
    moe_conjecture_terms terms;
    ASSERT_EQ(moe_conjecture_lhs(q, top, &terms), MOE_OK);
    EXPECT_LE(terms.term1, 0.5 + 1e-12);
    moe_slices_destroy(top);
    moe_strategy_destroy(q);

    moe_strategy *sc = nullptr;
    ASSERT_EQ(moe_strategy_random_semiclassical(MOE_GAME_XOR, 3, 1, &sc), MOE_OK);
    EXPECT_EQ(moe_decomposition_residual(sc, &residual), MOE_ERR_CONTRACT);
    moe_strategy_destroy(sc);
}

TEST(CApi, ChallengeSetAndBounds) {
    moe_s_audit a;
    ASSERT_EQ(moe_s_audit_get(1, &a), MOE_OK);
    EXPECT_EQ(a.num, 1u);
    EXPECT_EQ(a.den, 4u);
    EXPECT_EQ(a.matches_three_quarters, 1);
    EXPECT_EQ(moe_s_audit_get(11, &a), MOE_ERR_SIZE);
    moe_w2_bound b;
    ASSERT_EQ(moe_w2_bound_get(3, &b), MOE_OK);
    EXPECT_NEAR(b.headline, 0.5 + std::pow(0.93, 3), 1e-15);
    const uint8_t bits[16] = {0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0};
    double w2 = 0;
    ASSERT_EQ(moe_w2_norm_semiclassical(2, bits, 16, &w2), MOE_OK);
    moe_w2_bound b2;
    ASSERT_EQ(moe_w2_bound_get(2, &b2), MOE_OK);
    EXPECT_LE(w2, b2.exact);
    EXPECT_EQ(moe_w2_norm_semiclassical(2, bits, 15, &w2), MOE_ERR_CONTRACT);
    const double f[4] = {1, -1, 2, 0.5};
    double lhs = 0, rhs = 0;
    ASSERT_EQ(moe_parseval_check(f, 2, &lhs, &rhs), MOE_OK);
    EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(CApi, SearchWithHexOutput) {
    moe_search_report r;
    char hex[8];
    size_t needed = 0;
    ASSERT_EQ(moe_brute_force(MOE_GAME_GL, 1, &r, hex, sizeof hex, &needed), MOE_OK);
    EXPECT_NEAR(r.best_value, (1 + kCos2) / 2, 1e-10);
    // Four challenges fit in one hex digit.
    EXPECT_EQ(needed, 1u);
    EXPECT_EQ(std::strlen(hex), 1u);
    EXPECT_EQ(r.tables_examined, 16u);
    EXPECT_EQ(moe_brute_force(MOE_GAME_XOR, 5, &r, nullptr, 0, nullptr), MOE_ERR_SIZE);
    ASSERT_EQ(moe_alternating_search(2, 8, 1, &r, nullptr, 0, &needed), MOE_OK);
    EXPECT_EQ(r.method, MOE_SEARCH_ALTERNATING);
    EXPECT_GT(r.trace_length, 0u);
    EXPECT_EQ(needed, 4u);
}

TEST(CApi, RngIsSeeded) {
    moe_rng *a = nullptr, *b = nullptr;
    ASSERT_EQ(moe_rng_create(3, &a), MOE_OK);
    ASSERT_EQ(moe_rng_create(3, &b), MOE_OK);
    EXPECT_EQ(moe_rng_next_u64(a), moe_rng_next_u64(b));
    uint8_t bits[32];
    ASSERT_EQ(moe_rng_fill_bits(a, bits, sizeof bits), MOE_OK);
    for (uint8_t x : bits) EXPECT_LE(x, 1);
    moe_rng_destroy(a);
    moe_rng_destroy(b);
}

}  // namespace
