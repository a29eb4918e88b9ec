/*
 * Copyright 2026 The moegame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the moegame library.
 *
 * Every fallible call returns a moe_status. On failure the message is
 * available from moe_last_error_message() on the calling thread until the
 * next failing call. Handles are opaque and owned by the caller; destroy
 * functions accept NULL. Output structs are written only on MOE_OK, except
 * moe_decomposition_residual, which reports the residual on
 * MOE_ERR_DECOMPOSITION as well.
 *
 * Bit strings are '0'/'1' text with qubit 1 first. Answer tables are flat
 * bit arrays indexed by the little-endian challenge integer (theta for XOR,
 * theta * 2^n + r for GL).
 */

#ifndef MOEGAME_MOEGAME_H
#define MOEGAME_MOEGAME_H

#include <stddef.h>
#include <stdint.h>

#if defined(MOEGAME_BUILDING_LIBRARY)
#define MOEGAME_API __attribute__((visibility("default")))
#else
#define MOEGAME_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum moe_status {
    MOE_OK = 0,
    MOE_ERR_INPUT = 1,
    MOE_ERR_CONTRACT = 2,
    MOE_ERR_SIZE = 3,
    MOE_ERR_CONVERGENCE = 4,
    MOE_ERR_DECOMPOSITION = 5,
    MOE_ERR_INTERNAL = 6
} moe_status;

typedef enum moe_game { MOE_GAME_XOR = 0, MOE_GAME_GL = 1 } moe_game;
typedef enum moe_attack_variant { MOE_ATTACK_PHI = 0, MOE_ATTACK_PSI = 1 } moe_attack_variant;
typedef enum moe_value_method {
    MOE_METHOD_BORN = 0,
    MOE_METHOD_EIGEN = 1,
    MOE_METHOD_MONTE_CARLO = 2
} moe_value_method;
typedef enum moe_search_method {
    MOE_SEARCH_EXHAUSTIVE = 0,
    MOE_SEARCH_ALTERNATING = 1
} moe_search_method;

typedef struct moe_strategy moe_strategy;
typedef struct moe_slices moe_slices;
typedef struct moe_rng moe_rng;

typedef struct moe_value_report {
    double value;
    moe_value_method method;
    uint64_t trials;
    double standard_error;
} moe_value_report;

typedef struct moe_strategy_info {
    moe_game game;
    int n;
    int quantum; /* 0 for semi-classical strategies */
    size_t dim_b;
    size_t dim_c;
} moe_strategy_info;

typedef struct moe_search_report {
    double best_value;
    uint64_t best_index; /* packed table index, exhaustive search only */
    uint64_t tables_examined;
    moe_search_method method;
    size_t trace_length;
} moe_search_report;

typedef struct moe_s_audit {
    int n;
    uint64_t num;
    uint64_t den;
    double enumerated;
    double one_minus_two_pow;
    double one_minus_three_quarters;
    int matches_two_pow;
    int matches_three_quarters;
    double delta_enumerated;
    double delta_two_pow;
} moe_s_audit;

typedef struct moe_w2_bound {
    double exact;
    double published;
    double headline;
} moe_w2_bound;

typedef struct moe_conjecture_terms {
    double term1;
    double term2;
    double total;
    double value_on_s;       /* <v|E_S Pi|v> */
    double prob_complement;  /* 1 - Pr[S] */
    double delta;            /* (1 - Pr[S]) / Pr[S] */
} moe_conjecture_terms;

MOEGAME_API const char *moe_version(void);
MOEGAME_API const char *moe_status_string(moe_status status);
MOEGAME_API const char *moe_last_error_message(void);

/* Portable seeded generator (mt19937_64). */
MOEGAME_API moe_status moe_rng_create(uint64_t seed, moe_rng **out);
MOEGAME_API void moe_rng_destroy(moe_rng *rng);
MOEGAME_API uint64_t moe_rng_next_u64(moe_rng *rng);
/* Fills `len` entries of `bits` with uniform 0/1 values. */
MOEGAME_API moe_status moe_rng_fill_bits(moe_rng *rng, uint8_t *bits, size_t len);

/* Strategies. */
MOEGAME_API moe_status moe_strategy_from_json(const char *text, size_t len, moe_strategy **out);
MOEGAME_API moe_status moe_strategy_load(const char *path, moe_strategy **out);
/* XOR attack strategy with the predicted-parity answer table. */
MOEGAME_API moe_status moe_strategy_attack(const char *y, moe_attack_variant variant,
                                           moe_strategy **out);
MOEGAME_API moe_status moe_strategy_random_semiclassical(moe_game game, int n, uint64_t seed,
                                                         moe_strategy **out);
MOEGAME_API moe_status moe_strategy_random_quantum(moe_game game, int n, size_t dim_b,
                                                   size_t dim_c, uint64_t seed,
                                                   moe_strategy **out);
MOEGAME_API void moe_strategy_destroy(moe_strategy *s);
MOEGAME_API moe_status moe_strategy_info_get(const moe_strategy *s, moe_strategy_info *out);
/* Writes at most `cap` bytes including the terminator; `needed` receives the
 * full length excluding the terminator. Returns MOE_ERR_SIZE if cap is too
 * small. */
MOEGAME_API moe_status moe_strategy_to_json(const moe_strategy *s, char *buf, size_t cap,
                                            size_t *needed);
MOEGAME_API moe_status moe_strategy_exact_value(const moe_strategy *s, moe_value_report *out);
MOEGAME_API moe_status moe_strategy_simulate(const moe_strategy *s, uint64_t trials,
                                             uint64_t seed, moe_value_report *out);
/* lambda_max of the averaged game projector for the strategy's measurements. */
MOEGAME_API moe_status moe_strategy_optimal_state_value(const moe_strategy *s, double *out);
/* Value of the reduction to one qubit (XOR semi-classical only). */
MOEGAME_API moe_status moe_reduce_xor_value(const moe_strategy *s, double *value,
                                            size_t *branches);

/* Attack verification: bias = Pr[parity = predicted] for the attack state on
 * y measured in theta. `fault` != 0 perturbs amplitude 0 before evaluating
 * (negative control). */
MOEGAME_API moe_status moe_attack_bias(const char *y, const char *theta,
                                       moe_attack_variant variant, int fault, int *predicted,
                                       double *bias);

/* Challenge-set constants and bounds. */
MOEGAME_API moe_status moe_s_audit_get(int n, moe_s_audit *out);
MOEGAME_API moe_status moe_w2_norm_semiclassical(int n, const uint8_t *bits, size_t len,
                                                 double *out);
MOEGAME_API moe_status moe_w2_bound_get(int n, moe_w2_bound *out);
MOEGAME_API moe_status moe_parseval_check(const double *f, int N, double *lhs, double *rhs);
/* Residual of the W1/W2 decomposition for a GL strategy's measurements. */
MOEGAME_API moe_status moe_decomposition_residual(const moe_strategy *s, double *residual);

/* Slices of a joint state. */
MOEGAME_API moe_status moe_slices_load(const char *path, moe_slices **out);
MOEGAME_API moe_status moe_slices_from_json(const char *text, size_t len, moe_slices **out);
/* Slices of the strategy's own state. */
MOEGAME_API moe_status moe_slices_from_strategy(const moe_strategy *s, moe_slices **out);
/* Slices of the top eigenvector of the strategy's averaged game projector. */
MOEGAME_API moe_status moe_slices_top_eigenvector(const moe_strategy *s, moe_slices **out);
MOEGAME_API void moe_slices_destroy(moe_slices *slices);
MOEGAME_API moe_status moe_conjecture_lhs(const moe_strategy *s, const moe_slices *slices,
                                          moe_conjecture_terms *out);

/* Search. `hex` receives the best table as answer-table hex when non-NULL;
 * `hex_needed` the length it requires (excluding the terminator). */
MOEGAME_API moe_status moe_brute_force(moe_game game, int n, moe_search_report *out, char *hex,
                                       size_t hex_cap, size_t *hex_needed);
MOEGAME_API moe_status moe_alternating_search(int n, int restarts, uint64_t seed,
                                              moe_search_report *out, char *hex, size_t hex_cap,
                                              size_t *hex_needed);

#ifdef __cplusplus
}
#endif

#endif /* MOEGAME_MOEGAME_H */
