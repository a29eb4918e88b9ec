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

#include "moegame/moegame.h"

#include <cmath>
#include <cstring>
#include <string>

#include "moegame/decomp.h"
#include "moegame/errors.h"
#include "moegame/random_strategies.h"
#include "moegame/rng.h"
#include "moegame/search.h"
#include "moegame/strategy_io.h"

struct moe_strategy {
    moegame::Strategy strategy;
};

struct moe_slices {
    moegame::SliceFamily slices;
};

struct moe_rng {
    moegame::Rng rng;
};

namespace {

using namespace moegame;

thread_local std::string last_error;

template <typename Fn>
moe_status guard(Fn &&fn) {
    try {
        fn();
        return MOE_OK;
    } catch (const InputError &e) {
        last_error = e.what();
        return MOE_ERR_INPUT;
    } catch (const SizeError &e) {
        last_error = e.what();
        return MOE_ERR_SIZE;
    } catch (const ConvergenceError &e) {
        last_error = e.what();
        return MOE_ERR_CONVERGENCE;
    } catch (const DecompositionMismatch &e) {
        last_error = e.what();
        return MOE_ERR_DECOMPOSITION;
    } catch (const ContractError &e) {
        last_error = e.what();
        return MOE_ERR_CONTRACT;
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return MOE_ERR_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return MOE_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return MOE_ERR_INTERNAL;
    }
}

template <typename T>
void require(const T *p, const char *name) {
    if (p == nullptr) throw ContractError(std::string(name) + " must not be NULL");
}

GameSpec spec_of(moe_game game, int n) {
    if (game != MOE_GAME_XOR && game != MOE_GAME_GL) throw ContractError("unknown game variant");
    GameSpec spec{game == MOE_GAME_XOR ? GameVariant::kXor : GameVariant::kGl, n};
    validate(spec);
    return spec;
}

AttackVariant attack_of(moe_attack_variant v) {
    if (v == MOE_ATTACK_PHI) return AttackVariant::kPhi;
    if (v == MOE_ATTACK_PSI) return AttackVariant::kPsi;
    throw ContractError("unknown attack variant");
}

moe_value_report to_c(const GameValueReport &r) {
    return {r.value, static_cast<moe_value_method>(r.method), r.trials, r.standard_error};
}

// Measurements of either strategy kind; semi-classical tables act on trivial
// B and C registers.
Measurements measurements_of(const Strategy &s) {
    if (const auto *sc = std::get_if<SemiClassicalStrategy>(&s)) {
        return Measurements::semiclassical(sc->answers());
    }
    return std::get<QuantumStrategy>(s).measurements();
}

StateVector state_of(const Strategy &s) {
    if (const auto *sc = std::get_if<SemiClassicalStrategy>(&s)) return sc->alice_state();
    return std::get<QuantumStrategy>(s).joint_state();
}

void write_string(const std::string &text, char *buf, std::size_t cap, std::size_t *needed) {
    if (needed) *needed = text.size();
    if (buf == nullptr) return;
    if (cap < text.size() + 1) throw SizeError("output buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
}

void fill_search(const SearchReport &r, moe_search_report *out, char *hex, std::size_t cap,
                 std::size_t *needed) {
    out->best_value = r.best_value;
    out->best_index = r.best_index;
    out->tables_examined = r.tables_examined;
    out->method = r.method == SearchMethod::kExhaustive ? MOE_SEARCH_EXHAUSTIVE : MOE_SEARCH_ALTERNATING;
    out->trace_length = r.trace.size();
    write_string(r.best_strategy->answers().to_hex(), hex, cap, needed);
}

}  // namespace

extern "C" {

const char *moe_version(void) { return "0.1.0"; }

const char *moe_status_string(moe_status status) {
    switch (status) {
        case MOE_OK: return "ok";
        case MOE_ERR_INPUT: return "input error";
        case MOE_ERR_CONTRACT: return "contract violation";
        case MOE_ERR_SIZE: return "size limit exceeded";
        case MOE_ERR_CONVERGENCE: return "no convergence";
        case MOE_ERR_DECOMPOSITION: return "decomposition mismatch";
        case MOE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char *moe_last_error_message(void) { return last_error.c_str(); }

moe_status moe_rng_create(uint64_t seed, moe_rng **out) {
    return guard([&] {
        require(out, "out");
        *out = new moe_rng{Rng(seed)};
    });
}

void moe_rng_destroy(moe_rng *rng) { delete rng; }

uint64_t moe_rng_next_u64(moe_rng *rng) { return rng ? rng->rng.next_u64() : 0; }

moe_status moe_rng_fill_bits(moe_rng *rng, uint8_t *bits, size_t len) {
    return guard([&] {
        require(rng, "rng");
        require(bits, "bits");
        for (size_t k = 0; k < len; ++k) bits[k] = static_cast<uint8_t>(rng->rng.bits(1));
    });
}

moe_status moe_strategy_from_json(const char *text, size_t len, moe_strategy **out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        *out = new moe_strategy{parse_strategy(std::string_view(text, len))};
    });
}

moe_status moe_strategy_load(const char *path, moe_strategy **out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new moe_strategy{load_strategy(path)};
    });
}

moe_status moe_strategy_attack(const char *y, moe_attack_variant variant, moe_strategy **out) {
    return guard([&] {
        require(y, "y");
        require(out, "out");
        const BitString bits = BitString::parse(y);
        const AttackVariant av = attack_of(variant);
        const GameSpec spec = spec_of(MOE_GAME_XOR, bits.size());
        std::vector<std::uint8_t> table(challenge_count(spec));
        for (std::size_t c = 0; c < table.size(); ++c) {
            table[c] = static_cast<std::uint8_t>(predicted_parity(bits, challenge_at(spec, c).theta, av));
        }
        *out = new moe_strategy{SemiClassicalStrategy(attack_state(bits, av), AnswerTable(spec, table))};
    });
}

moe_status moe_strategy_random_semiclassical(moe_game game, int n, uint64_t seed,
                                             moe_strategy **out) {
    return guard([&] {
        require(out, "out");
        Rng rng(seed);
        *out = new moe_strategy{random_semiclassical(spec_of(game, n), rng)};
    });
}

moe_status moe_strategy_random_quantum(moe_game game, int n, size_t dim_b, size_t dim_c,
                                       uint64_t seed, moe_strategy **out) {
    return guard([&] {
        require(out, "out");
        if (dim_b == 0 || dim_c == 0 || dim_b > 64 || dim_c > 64) {
            throw SizeError("register dimensions must be in [1, 64]");
        }
        Rng rng(seed);
        *out = new moe_strategy{random_quantum(spec_of(game, n), dim_b, dim_c, rng)};
    });
}

void moe_strategy_destroy(moe_strategy *s) { delete s; }

moe_status moe_strategy_info_get(const moe_strategy *s, moe_strategy_info *out) {
    return guard([&] {
        require(s, "strategy");
        require(out, "out");
        const Measurements m = measurements_of(s->strategy);
        out->game = m.spec().variant == GameVariant::kXor ? MOE_GAME_XOR : MOE_GAME_GL;
        out->n = m.spec().n;
        out->quantum = std::holds_alternative<QuantumStrategy>(s->strategy) ? 1 : 0;
        out->dim_b = m.dim_b();
        out->dim_c = m.dim_c();
    });
}

moe_status moe_strategy_to_json(const moe_strategy *s, char *buf, size_t cap, size_t *needed) {
    return guard([&] {
        require(s, "strategy");
        write_string(strategy_to_json(s->strategy), buf, cap, needed);
    });
}

moe_status moe_strategy_exact_value(const moe_strategy *s, moe_value_report *out) {
    return guard([&] {
        require(s, "strategy");
        require(out, "out");
        if (const auto *sc = std::get_if<SemiClassicalStrategy>(&s->strategy)) {
            *out = to_c(game_value(*sc));
        } else {
            *out = to_c(game_value_quantum(std::get<QuantumStrategy>(s->strategy)));
        }
    });
}

moe_status moe_strategy_simulate(const moe_strategy *s, uint64_t trials, uint64_t seed,
                                 moe_value_report *out) {
    return guard([&] {
        require(s, "strategy");
        require(out, "out");
        *out = to_c(std::visit([&](const auto &v) { return simulate_game(v, trials, seed); }, s->strategy));
    });
}

moe_status moe_strategy_optimal_state_value(const moe_strategy *s, double *out) {
    return guard([&] {
        require(s, "strategy");
        require(out, "out");
        *out = p_opt_for_measurements(measurements_of(s->strategy));
    });
}

moe_status moe_reduce_xor_value(const moe_strategy *s, double *value, size_t *branches) {
    return guard([&] {
        require(s, "strategy");
        require(value, "value");
        const auto *sc = std::get_if<SemiClassicalStrategy>(&s->strategy);
        if (!sc) throw ContractError("the reduction is defined for semi-classical strategies");
        const XorReduction r = reduce_xor_strategy(*sc);
        *value = r.value;
        if (branches) *branches = r.branches.size();
    });
}

moe_status moe_attack_bias(const char *y, const char *theta, moe_attack_variant variant, int fault,
                           int *predicted, double *bias) {
    return guard([&] {
        require(y, "y");
        require(theta, "theta");
        require(predicted, "predicted");
        require(bias, "bias");
        const BitString ybits = BitString::parse(y);
        const BasisChoice basis = BasisChoice::parse(theta);
        const AttackVariant av = attack_of(variant);
        StateVector state = attack_state(ybits, av);
        if (fault) {
            state[0] += 0.1;
            state = state.normalized();
        }
        const int bit = predicted_parity(ybits, basis, av);
        const double p0 = parity_bias(state, basis);
        *predicted = bit;
        *bias = bit == 0 ? p0 : 1.0 - p0;
    });
}

moe_status moe_s_audit_get(int n, moe_s_audit *out) {
    return guard([&] {
        require(out, "out");
        const SSetAudit a = audit_s_set(n);
        *out = {a.n,
                a.enumerated.num,
                a.enumerated.den,
                a.enumerated_value,
                a.one_minus_two_pow,
                a.one_minus_three_quarters,
                a.matches_two_pow ? 1 : 0,
                a.matches_three_quarters ? 1 : 0,
                a.delta_enumerated,
                a.delta_two_pow};
    });
}

moe_status moe_w2_norm_semiclassical(int n, const uint8_t *bits, size_t len, double *out) {
    return guard([&] {
        require(bits, "bits");
        require(out, "out");
        const AnswerTable table(spec_of(MOE_GAME_GL, n), std::vector<std::uint8_t>(bits, bits + len));
        *out = w2_norm_semiclassical(table);
    });
}

moe_status moe_w2_bound_get(int n, moe_w2_bound *out) {
    return guard([&] {
        require(out, "out");
        const W2Bound b = w2_bound(n);
        *out = {b.exact, b.published, b.headline};
    });
}

moe_status moe_parseval_check(const double *f, int N, double *lhs, double *rhs) {
    return guard([&] {
        require(f, "f");
        require(lhs, "lhs");
        require(rhs, "rhs");
        if (N < 0 || N > 12) throw SizeError("parseval_check supports N <= 12");
        const ParsevalResult r = parseval_check(std::vector<double>(f, f + (std::size_t{1} << N)), N);
        *lhs = r.lhs;
        *rhs = r.rhs;
    });
}

moe_status moe_decomposition_residual(const moe_strategy *s, double *residual) {
    return guard([&] {
        require(s, "strategy");
        require(residual, "residual");
        try {
            *residual = decomposition_residual(measurements_of(s->strategy));
        } catch (const DecompositionMismatch &e) {
            *residual = e.residual();
            throw;
        }
    });
}

moe_status moe_slices_load(const char *path, moe_slices **out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new moe_slices{load_slices(path)};
    });
}

moe_status moe_slices_from_json(const char *text, size_t len, moe_slices **out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        *out = new moe_slices{parse_slices(std::string_view(text, len))};
    });
}

moe_status moe_slices_from_strategy(const moe_strategy *s, moe_slices **out) {
    return guard([&] {
        require(s, "strategy");
        require(out, "out");
        const Measurements m = measurements_of(s->strategy);
        *out = new moe_slices{SliceFamily::from_joint_state(m.spec().n, m.dim_bc(), state_of(s->strategy))};
    });
}

moe_status moe_slices_top_eigenvector(const moe_strategy *s, moe_slices **out) {
    return guard([&] {
        require(s, "strategy");
        require(out, "out");
        const Measurements m = measurements_of(s->strategy);
        const EigenPair top = top_eigenpair(average_game_projector(m));
        *out = new moe_slices{
            SliceFamily::from_joint_state(m.spec().n, m.dim_bc(), top.vector.normalized())};
    });
}

void moe_slices_destroy(moe_slices *slices) { delete slices; }

moe_status moe_conjecture_lhs(const moe_strategy *s, const moe_slices *slices,
                              moe_conjecture_terms *out) {
    return guard([&] {
        require(s, "strategy");
        require(slices, "slices");
        require(out, "out");
        const Measurements m = measurements_of(s->strategy);
        const ConjectureTerms t = conjecture_lhs(m, slices->slices);
        const StateVector v = slices->slices.joint_state();
        const ChallengeSet set = ChallengeSet::enumerate(m.spec().n);
        out->term1 = t.term1;
        out->term2 = t.term2;
        out->total = t.total;
        out->value_on_s = inner_product(v, build_avg_projector_on_S(m) * v).real();
        out->prob_complement = set.complement();
        out->delta = set.delta;
    });
}

moe_status moe_brute_force(moe_game game, int n, moe_search_report *out, char *hex, size_t hex_cap,
                           size_t *hex_needed) {
    return guard([&] {
        require(out, "out");
        if (game != MOE_GAME_XOR && game != MOE_GAME_GL) throw ContractError("unknown game variant");
        const SearchReport r = game == MOE_GAME_XOR ? brute_force_xor(n) : brute_force_gl(n);
        fill_search(r, out, hex, hex_cap, hex_needed);
    });
}

moe_status moe_alternating_search(int n, int restarts, uint64_t seed, moe_search_report *out,
                                  char *hex, size_t hex_cap, size_t *hex_needed) {
    return guard([&] {
        require(out, "out");
        fill_search(alternating_gl_search(n, restarts, seed), out, hex, hex_cap, hex_needed);
    });
}

}  // extern "C"
