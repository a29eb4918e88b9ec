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

// Batch front end for the moegame C library. Each subcommand builds one
// table, writes it once (CSV or JSON) and exits with
//   0 success, 1 input error, 2 verification failure, 3 bound violation.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moegame/moegame.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerification = 2;
constexpr int kExitBound = 3;

constexpr int kVerifyAttackMaxN = 8;
constexpr int kBoundsSweepMaxN = 5;
constexpr int kProbSMaxN = 10;
constexpr int kParsevalMaxN = 12;
constexpr int kDecompMaxN = 3;
constexpr int kDecompMaxSemiclassicalN = 5;

const double kCos2PiOver8 = (2.0 + std::sqrt(2.0)) / 4.0;

struct InputFailure {
    std::string message;
};

// Throws InputFailure for any non-OK status.
void check(moe_status status) {
    if (status != MOE_OK) {
        throw InputFailure{std::string(moe_status_string(status)) + ": " + moe_last_error_message()};
    }
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

struct Cell {
    std::string text;
    bool quoted = false;
};

Cell num(double v) { return {format_double(v), false}; }
Cell num(std::uint64_t v) { return {std::to_string(v), false}; }
Cell num(int v) { return {std::to_string(v), false}; }
Cell text(std::string s) { return {std::move(s), true}; }
Cell flag(bool b) { return {b ? "true" : "false", false}; }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string json_escape(const std::string &s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string render(const Table &t, const std::string &format) {
    std::string out;
    if (format == "json") {
        out += "[";
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            out += r == 0 ? "\n  {" : ",\n  {";
            for (std::size_t c = 0; c < t.columns.size(); ++c) {
                if (c) out += ", ";
                out += "\"" + t.columns[c] + "\": ";
                const Cell &cell = t.rows[r][c];
                out += cell.quoted ? "\"" + json_escape(cell.text) + "\"" : cell.text;
            }
            out += "}";
        }
        out += t.rows.empty() ? "]\n" : "\n]\n";
        return out;
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += "\n";
    for (const auto &row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c].text;
        out += "\n";
    }
    return out;
}

void emit(const Table &t, const std::string &format, const std::string &out_path) {
    const std::string body = render(t, format);
    if (out_path.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InputFailure{"cannot open output file '" + out_path + "'"};
    f << body;
}

void require_range(const char *name, int value, int lo, int hi) {
    if (value < lo || value > hi) {
        throw InputFailure{std::string(name) + " = " + std::to_string(value) + " outside [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]"};
    }
}

std::string bits_of(std::uint64_t mask, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((mask >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

struct Rng {
    explicit Rng(std::uint64_t seed) { check(moe_rng_create(seed, &handle)); }
    ~Rng() { moe_rng_destroy(handle); }
    Rng(const Rng &) = delete;
    Rng &operator=(const Rng &) = delete;
    std::uint64_t next() { return moe_rng_next_u64(handle); }
    moe_rng *handle = nullptr;
};

struct StrategyHandle {
    ~StrategyHandle() { moe_strategy_destroy(ptr); }
    moe_strategy *ptr = nullptr;
};

struct SlicesHandle {
    ~SlicesHandle() { moe_slices_destroy(ptr); }
    moe_slices *ptr = nullptr;
};

// Shared flags.
struct Options {
    int n = -1;
    int n_max = -1;
    std::string variant = "both";
    std::string game = "xor";
    std::string method = "auto";
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    int samples = -1;
    int restarts = 32;
    std::size_t dim_b = 2;
    std::size_t dim_c = 2;
    bool top_eigenvector = false;
    bool inject_fault = false;
    std::string out;
    std::string format = "csv";
    std::string strategy;
    std::string slices;
};

// ---------------------------------------------------------------------------

int cmd_verify_attack(const Options &o) {
    const int lo = o.n >= 0 ? o.n : 1;
    const int hi = o.n >= 0 ? o.n : (o.n_max >= 0 ? o.n_max : 4);
    require_range("n", hi, 0, kVerifyAttackMaxN);
    std::vector<moe_attack_variant> variants;
    if (o.variant == "phi" || o.variant == "both") variants.push_back(MOE_ATTACK_PHI);
    if (o.variant == "psi" || o.variant == "both") variants.push_back(MOE_ATTACK_PSI);

    Table t{{"n", "variant", "y", "theta", "predicted", "bias", "deviation"}, {}};
    bool failed = false;
    Rng rng(o.seed);
    for (int n = lo; n <= hi && n >= 1; ++n) {
        // y = 0^n, 1^n and 16 random strings (duplicates removed).
        std::vector<std::uint64_t> ys = {0, (std::uint64_t{1} << n) - 1};
        for (int k = 0; k < 16; ++k) {
            const std::uint64_t y = rng.next() >> (64 - n);
            if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
        }
        for (moe_attack_variant v : variants)
            for (std::uint64_t y : ys)
                for (std::uint64_t theta = 0; theta < (std::uint64_t{1} << n); ++theta) {
                    int predicted = 0;
                    double bias = 0;
                    const std::string ys_text = bits_of(y, n), th_text = bits_of(theta, n);
                    check(moe_attack_bias(ys_text.c_str(), th_text.c_str(), v, o.inject_fault ? 1 : 0,
                                          &predicted, &bias));
                    const double dev = std::abs(bias - kCos2PiOver8);
                    failed |= dev > 1e-9;
                    t.rows.push_back({num(n), text(v == MOE_ATTACK_PHI ? "phi" : "psi"), text(ys_text),
                                      text(th_text), num(predicted), num(bias), num(dev)});
                }
    }
    emit(t, o.format, o.out);
    return failed ? kExitVerification : kExitOk;
}

int cmd_bounds_sweep(const Options &o) {
    const int hi = o.n_max >= 0 ? o.n_max : 5;
    require_range("n-max", hi, 1, kBoundsSweepMaxN);
    const int lo = o.n >= 1 ? o.n : 1;
    const int samples = o.samples >= 0 ? o.samples : 200;
    Table t{{"n", "c_id", "w2_norm", "bound_exact", "bound_paper", "pass"}, {}};
    bool violated = false;
    Rng rng(o.seed);
    for (int n = lo; n <= hi; ++n) {
        moe_w2_bound bound;
        check(moe_w2_bound_get(n, &bound));
        const std::size_t len = std::size_t{1} << (2 * n);
        const bool exhaustive =
            o.method == "exhaustive" || (o.method == "auto" && len <= 16);
        if (o.method == "exhaustive" && len > 16) {
            throw InputFailure{"exhaustive sweep supports n <= 2"};
        }
        std::vector<std::uint8_t> bits(len);
        const std::uint64_t count = exhaustive ? (std::uint64_t{1} << len) : static_cast<std::uint64_t>(samples);
        for (std::uint64_t id = 0; id < count; ++id) {
            if (exhaustive) {
                for (std::size_t k = 0; k < len; ++k) bits[k] = static_cast<std::uint8_t>((id >> k) & 1);
            } else {
                check(moe_rng_fill_bits(rng.handle, bits.data(), len));
            }
            double w2 = 0;
            check(moe_w2_norm_semiclassical(n, bits.data(), len, &w2));
            const bool pass = w2 <= bound.exact + 1e-12;
            violated |= !pass;
            t.rows.push_back({num(n), num(id), num(w2), num(bound.exact), num(bound.published), flag(pass)});
        }
    }
    emit(t, o.format, o.out);
    return violated ? kExitBound : kExitOk;
}

int cmd_game(const Options &o) {
    if (o.strategy.empty()) throw InputFailure{"--strategy is required"};
    if (o.trials == 0) throw InputFailure{"--trials must be positive"};
    StrategyHandle s;
    check(moe_strategy_load(o.strategy.c_str(), &s.ptr));
    moe_strategy_info info;
    check(moe_strategy_info_get(s.ptr, &info));
    moe_value_report exact, mc;
    check(moe_strategy_exact_value(s.ptr, &exact));
    check(moe_strategy_simulate(s.ptr, o.trials, o.seed, &mc));
    const double z = mc.standard_error > 0 ? (mc.value - exact.value) / mc.standard_error
                     : (mc.value == exact.value ? 0.0 : INFINITY);
    Table t{{"game", "n", "quantum", "exact_value", "mc_value", "trials", "standard_error", "z_score"}, {}};
    t.rows.push_back({text(info.game == MOE_GAME_XOR ? "xor" : "gl"), num(info.n), flag(info.quantum != 0),
                      num(exact.value), num(mc.value), num(mc.trials), num(mc.standard_error), num(z)});
    emit(t, o.format, o.out);
    return kExitOk;
}

int cmd_brute_force(const Options &o) {
    if (o.n < 1) throw InputFailure{"--n is required"};
    moe_search_report r;
    std::string hex(1 << 12, '\0');
    std::size_t needed = 0;
    std::string method;
    if (o.method == "alternating") {
        if (o.game != "gl") throw InputFailure{"alternating search runs on the GL game"};
        check(moe_alternating_search(o.n, o.restarts, o.seed, &r, hex.data(), hex.size(), &needed));
        method = "alternating";
    } else if (o.method == "auto" || o.method == "exhaustive") {
        const moe_game g = o.game == "gl" ? MOE_GAME_GL : MOE_GAME_XOR;
        check(moe_brute_force(g, o.n, &r, hex.data(), hex.size(), &needed));
        method = "exhaustive";
    } else {
        throw InputFailure{"unknown --method '" + o.method + "'"};
    }
    hex.resize(needed);
    Table t{{"game", "n", "method", "best_value", "best_table_hex", "tables_examined"}, {}};
    t.rows.push_back({text(o.game), num(o.n), text(method), num(r.best_value), text(hex),
                      num(r.tables_examined)});
    emit(t, o.format, o.out);
    return kExitOk;
}

int cmd_decomp_residual(const Options &o) {
    Table t{{"sample", "n", "dim_b", "dim_c", "residual", "pass"}, {}};
    bool failed = false;
    auto run = [&](moe_strategy *s, std::uint64_t id) {
        moe_strategy_info info;
        check(moe_strategy_info_get(s, &info));
        double residual = 0;
        const moe_status st = moe_decomposition_residual(s, &residual);
        if (st != MOE_OK && st != MOE_ERR_DECOMPOSITION) check(st);
        failed |= st == MOE_ERR_DECOMPOSITION;
        t.rows.push_back({num(id), num(info.n), num(static_cast<std::uint64_t>(info.dim_b)),
                          num(static_cast<std::uint64_t>(info.dim_c)), num(residual),
                          flag(st == MOE_OK)});
    };
    if (!o.strategy.empty()) {
        StrategyHandle s;
        check(moe_strategy_load(o.strategy.c_str(), &s.ptr));
        run(s.ptr, 0);
    } else {
        if (o.n < 1) throw InputFailure{"--n or --strategy is required"};
        const bool semi = o.dim_b == 1 && o.dim_c == 1;
        require_range("n", o.n, 1, semi ? kDecompMaxSemiclassicalN : kDecompMaxN);
        const int samples = o.samples >= 0 ? o.samples : 10;
        Rng rng(o.seed);
        for (int k = 0; k < samples; ++k) {
            StrategyHandle s;
            const std::uint64_t seed = rng.next();
            if (semi) check(moe_strategy_random_semiclassical(MOE_GAME_GL, o.n, seed, &s.ptr));
            else check(moe_strategy_random_quantum(MOE_GAME_GL, o.n, o.dim_b, o.dim_c, seed, &s.ptr));
            run(s.ptr, static_cast<std::uint64_t>(k));
        }
    }
    emit(t, o.format, o.out);
    return failed ? kExitVerification : kExitOk;
}

int cmd_prob_s(const Options &o) {
    const int hi = o.n >= 1 ? o.n : (o.n_max >= 0 ? o.n_max : 8);
    const int lo = o.n >= 1 ? o.n : 1;
    require_range("n", hi, 0, kProbSMaxN);
    Table t{{"n", "enumerated", "enumerated_value", "one_minus_2_pow_neg_n", "one_minus_3_4_pow_n",
             "matches_2_pow", "matches_3_4_pow", "delta_enumerated", "delta_2_pow"},
            {}};
    for (int n = lo; n <= hi; ++n) {
        moe_s_audit a;
        check(moe_s_audit_get(n, &a));
        t.rows.push_back({num(n), text(std::to_string(a.num) + "/" + std::to_string(a.den)),
                          num(a.enumerated), num(a.one_minus_two_pow), num(a.one_minus_three_quarters),
                          flag(a.matches_two_pow), flag(a.matches_three_quarters),
                          num(a.delta_enumerated), num(a.delta_two_pow)});
    }
    emit(t, o.format, o.out);
    return kExitOk;
}

int cmd_parseval(const Options &o) {
    const int N = o.n >= 0 ? o.n : 10;
    require_range("n", N, 0, kParsevalMaxN);
    const int samples = o.samples >= 0 ? o.samples : 100;
    Table t{{"sample", "N", "lhs", "rhs", "relative_error", "pass"}, {}};
    bool failed = false;
    Rng rng(o.seed);
    const std::size_t size = std::size_t{1} << N;
    std::vector<double> f(size);
    std::vector<std::uint8_t> bits(size);
    for (int k = 0; k < samples; ++k) {
        check(moe_rng_fill_bits(rng.handle, bits.data(), size));
        for (std::size_t i = 0; i < size; ++i) f[i] = bits[i] ? -1.0 : 1.0;
        double lhs = 0, rhs = 0;
        check(moe_parseval_check(f.data(), N, &lhs, &rhs));
        const double rel = std::abs(lhs - rhs) / rhs;
        const bool pass = rel < 1e-12;
        failed |= !pass;
        t.rows.push_back({num(k), num(N), num(lhs), num(rhs), num(rel), flag(pass)});
    }
    emit(t, o.format, o.out);
    return failed ? kExitVerification : kExitOk;
}

int cmd_conjecture(const Options &o) {
    if (o.strategy.empty()) throw InputFailure{"--strategy is required"};
    StrategyHandle s;
    check(moe_strategy_load(o.strategy.c_str(), &s.ptr));
    SlicesHandle slices;
    if (!o.slices.empty()) check(moe_slices_load(o.slices.c_str(), &slices.ptr));
    else if (o.top_eigenvector) check(moe_slices_top_eigenvector(s.ptr, &slices.ptr));
    else check(moe_slices_from_strategy(s.ptr, &slices.ptr));
    moe_conjecture_terms c;
    check(moe_conjecture_lhs(s.ptr, slices.ptr, &c));
    const bool term1_ok = c.term1 <= 0.5 + 1e-12;
    const bool envelope_ok = std::abs(c.total - c.value_on_s) <= c.delta + c.prob_complement + 1e-9;
    Table t{{"term1", "term2", "total", "value_on_s", "prob_complement", "delta", "term1_ok",
             "envelope_ok"},
            {}};
    t.rows.push_back({num(c.term1), num(c.term2), num(c.total), num(c.value_on_s),
                      num(c.prob_complement), num(c.delta), flag(term1_ok), flag(envelope_ok)});
    emit(t, o.format, o.out);
    return term1_ok && envelope_ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monogamy-of-entanglement game experiments"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--out", o.out, "Output file (default: stdout)");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto *verify = app.add_subcommand("verify-attack", "Check the parity attack on every basis choice");
    verify->add_option("--n", o.n, "Single register size");
    verify->add_option("--n-max", o.n_max, "Largest register size (0 gives an empty table, <= 8)");
    verify->add_option("--variant", o.variant, "Attack variant")->check(CLI::IsMember({"phi", "psi", "both"}));
    verify->add_option("--seed", o.seed, "Seed for the random y strings");
    verify->add_flag("--inject-fault", o.inject_fault)->group("");
    add_output(verify);

    auto *sweep = app.add_subcommand("bounds-sweep", "Compare ||W2|| against the closed-form bound");
    sweep->add_option("--n", o.n, "Smallest register size");
    sweep->add_option("--n-max", o.n_max, "Largest register size (<= 5)");
    sweep->add_option("--samples", o.samples, "Random tables per sampled n (default 200)");
    sweep->add_option("--method", o.method, "Table selection")
        ->check(CLI::IsMember({"auto", "exhaustive", "sample"}));
    sweep->add_option("--seed", o.seed, "Seed");
    add_output(sweep);

    auto *game = app.add_subcommand("game", "Exact and Monte-Carlo value of a strategy file");
    game->add_option("--strategy", o.strategy, "Strategy JSON")->required();
    game->add_option("--trials", o.trials, "Monte-Carlo trials");
    game->add_option("--seed", o.seed, "Seed");
    add_output(game);

    auto *brute = app.add_subcommand("brute-force", "Optimize over semi-classical answer tables");
    brute->add_option("--game", o.game, "Game")->check(CLI::IsMember({"xor", "gl"}));
    brute->add_option("--n", o.n, "Register size")->required();
    brute->add_option("--method", o.method, "Search method")
        ->check(CLI::IsMember({"auto", "exhaustive", "alternating"}));
    brute->add_option("--restarts", o.restarts, "Alternating-search restarts");
    brute->add_option("--seed", o.seed, "Seed");
    add_output(brute);

    auto *decomp = app.add_subcommand("decomp-residual", "Residual of the W1/W2 decomposition");
    decomp->add_option("--strategy", o.strategy, "GL strategy JSON");
    decomp->add_option("--n", o.n, "Register size for random strategies");
    decomp->add_option("--samples", o.samples, "Random strategies (default 10)");
    decomp->add_option("--dim-b", o.dim_b, "Bob's register dimension (1 with --dim-c 1: semi-classical)");
    decomp->add_option("--dim-c", o.dim_c, "Charlie's register dimension");
    decomp->add_option("--seed", o.seed, "Seed");
    add_output(decomp);

    auto *probs = app.add_subcommand("prob-s", "Enumerated Pr[S] against closed forms");
    probs->add_option("--n", o.n, "Single register size");
    probs->add_option("--n-max", o.n_max, "Largest register size (<= 10)");
    add_output(probs);

    auto *parseval = app.add_subcommand("parseval", "Parseval identity on random sign tables");
    parseval->add_option("--n", o.n, "Table bits N (<= 12)");
    parseval->add_option("--samples", o.samples, "Random tables (default 100)");
    parseval->add_option("--seed", o.seed, "Seed");
    add_output(parseval);

    auto *conj = app.add_subcommand("conjecture", "Two-term conjectured bound for a GL strategy");
    conj->add_option("--strategy", o.strategy, "GL strategy JSON")->required();
    conj->add_option("--slices", o.slices, "Slice JSON (default: the strategy's own state)");
    conj->add_flag("--top-eigenvector", o.top_eigenvector,
                   "Use the top eigenvector of the averaged game projector");
    add_output(conj);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*verify) return cmd_verify_attack(o);
        if (*sweep) return cmd_bounds_sweep(o);
        if (*game) return cmd_game(o);
        if (*brute) return cmd_brute_force(o);
        if (*decomp) return cmd_decomp_residual(o);
        if (*probs) return cmd_prob_s(o);
        if (*parseval) return cmd_parseval(o);
        if (*conj) return cmd_conjecture(o);
    } catch (const InputFailure &e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitInput;
    }
    return kExitInput;
}
