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

#include "moegame/search.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "moegame/errors.h"
#include "moegame/rng.h"

namespace moegame {

namespace {

constexpr double kArgmaxTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;
constexpr int kMaxAlternatingSteps = 1000;

// Real symmetric parity observable of each challenge: the operator whose
// expectation is Pr[mask.x = 0] - Pr[mask.x = 1].
std::vector<Eigen::MatrixXd> challenge_observables(const GameSpec &spec) {
    const std::size_t dim = std::size_t{1} << spec.n;
    std::vector<Eigen::MatrixXd> obs;
    for (std::size_t c = 0; c < challenge_count(spec); ++c) {
        const Challenge ch = challenge_at(spec, c);
        const std::uint64_t flip = ch.mask.mask() & ch.theta.bits().mask();
        const std::uint64_t sign = ch.mask.mask() & ~ch.theta.bits().mask();
        Eigen::MatrixXd o = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim));
        for (std::uint64_t k = 0; k < dim; ++k) {
            o(static_cast<Eigen::Index>(k ^ flip), static_cast<Eigen::Index>(k)) =
                parity64(k & sign) ? -1.0 : 1.0;
        }
        obs.push_back(std::move(o));
    }
    return obs;
}

// Splits [0, count) into contiguous ranges, one per worker.
template <typename RangeFn>
void parallel_ranges(std::uint64_t count, RangeFn &&fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, count / 256));
    const std::uint64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (std::uint64_t w = 1; w < workers; ++w) {
        const std::uint64_t begin = w * chunk, end = std::min(count, begin + chunk);
        if (begin < end) pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(0, std::min(count, chunk));
    for (auto &t : pool) t.join();
}

SearchReport exhaustive(const GameSpec &spec) {
    const std::size_t count = challenge_count(spec);
    const std::uint64_t tables = std::uint64_t{1} << count;
    const auto obs = challenge_observables(spec);
    const Eigen::Index dim = static_cast<Eigen::Index>(std::size_t{1} << spec.n);
    const double w = 0.5 / static_cast<double>(count);

    std::vector<double> values(tables);
    std::atomic<bool> failed{false};
    parallel_ranges(tables, [&](std::uint64_t begin, std::uint64_t end) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dim);
        Eigen::MatrixXd m(dim, dim);
        for (std::uint64_t t = begin; t < end; ++t) {
            m = 0.5 * Eigen::MatrixXd::Identity(dim, dim);
            for (std::size_t c = 0; c < count; ++c) {
                if ((t >> c) & 1) m -= w * obs[c];
                else m += w * obs[c];
            }
            solver.compute(m, Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success) failed = true;
            values[t] = solver.eigenvalues()(dim - 1);
        }
    });
    if (failed) throw ConvergenceError("eigensolver failed during exhaustive search");

    // Deterministic reduction: first table within tolerance of the maximum.
    const double best = *std::max_element(values.begin(), values.end());
    std::uint64_t arg = 0;
    while (values[arg] < best - kArgmaxTolerance) ++arg;

    SearchReport report;
    report.method = SearchMethod::kExhaustive;
    report.tables_examined = tables;
    report.best_value = best;
    report.best_index = arg;
    const AnswerTable table = AnswerTable::from_packed(spec, arg);
    EigenPair top = top_eigenpair(semiclassical_operator(table));
    report.best_strategy.emplace(top.vector.normalized(), table);
    return report;
}

// Applies Hadamards to the low register (qubits 2..n) of a 2^n vector.
std::vector<Complex> rotate_rest(std::span<const Complex> v, int n, std::uint64_t theta_rest) {
    std::vector<Complex> a(v.begin(), v.end());
    const std::size_t half = std::size_t{1} << (n - 1);
    const double s = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < n - 1; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (!(theta_rest & bit)) continue;
        for (std::size_t top = 0; top < 2; ++top)
            for (std::uint64_t k = 0; k < half; ++k) {
                if (k & bit) continue;
                Complex &lo = a[top * half + k];
                Complex &hi = a[top * half + (k | bit)];
                const Complex l = lo, h = hi;
                lo = s * (l + h);
                hi = s * (l - h);
            }
    }
    return a;
}

}  // namespace

const char *to_string(SearchMethod method) {
    return method == SearchMethod::kExhaustive ? "exhaustive" : "alternating";
}

SearchReport brute_force_xor(int n) {
    if (n < 1 || n > kMaxBruteForceXor) {
        throw SizeError("brute_force_xor supports 1 <= n <= " + std::to_string(kMaxBruteForceXor));
    }
    return exhaustive({GameVariant::kXor, n});
}

SearchReport brute_force_gl(int n) {
    if (n < 1 || n > kMaxBruteForceGl) {
        throw SizeError("brute_force_gl supports 1 <= n <= " + std::to_string(kMaxBruteForceGl));
    }
    return exhaustive({GameVariant::kGl, n});
}

SearchReport alternating_gl_search(int n, int restarts, std::uint64_t seed) {
    if (n < 1 || n > kMaxAlternatingGl) {
        throw SizeError("alternating_gl_search supports 1 <= n <= " +
                        std::to_string(kMaxAlternatingGl));
    }
    if (restarts < 1) throw ContractError("alternating_gl_search needs at least one restart");
    const GameSpec spec{GameVariant::kGl, n};
    const std::size_t count = challenge_count(spec);
    std::vector<PauliString> obs;
    obs.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        const Challenge ch = challenge_at(spec, c);
        obs.push_back(masked_parity_observable(ch.theta, ch.mask));
    }

    SearchReport report;
    report.method = SearchMethod::kAlternating;
    report.best_value = -1.0;
    for (int restart = 0; restart < restarts; ++restart) {
        Rng rng(Rng::derive_seed(seed, static_cast<std::uint64_t>(restart)));
        std::vector<std::uint8_t> bits(count);
        for (auto &b : bits) b = static_cast<std::uint8_t>(rng.bits(1));
        AnswerTable table(spec, bits);
        std::vector<double> trace;
        StateVector u;
        for (int step = 0; step < kMaxAlternatingSteps; ++step) {
            EigenPair top = top_eigenpair(semiclassical_operator(table));
            ++report.tables_examined;
            u = top.vector.normalized();
            trace.push_back(top.value);
            std::vector<std::uint8_t> next(count);
            for (std::size_t c = 0; c < count; ++c) {
                next[c] = expectation(obs[c], u).real() < -kTieTolerance ? 1 : 0;
            }
            if (next == table.bits()) break;
            table = AnswerTable(spec, std::move(next));
        }
        if (trace.back() > report.best_value + kArgmaxTolerance) {
            report.best_value = trace.back();
            report.best_strategy.emplace(u, table);
            report.trace = std::move(trace);
        }
    }
    return report;
}

XorReduction reduce_xor_strategy(const SemiClassicalStrategy &s) {
    const GameSpec spec = s.spec();
    if (spec.variant != GameVariant::kXor) throw ContractError("reduce_xor_strategy needs an XOR strategy");
    if (spec.n > kMaxReduceXor) {
        throw SizeError("reduce_xor_strategy supports n <= " + std::to_string(kMaxReduceXor));
    }
    const int n = spec.n;
    const int rest = n - 1;
    const std::size_t half = std::size_t{1} << rest;
    const GameSpec one{GameVariant::kXor, 1};
    const double theta_weight = 1.0 / static_cast<double>(half);

    XorReduction out;
    for (std::uint64_t theta_rest = 0; theta_rest < half; ++theta_rest) {
        const auto amps = rotate_rest(s.alice_state().amplitudes(), n, theta_rest);
        for (std::uint64_t x_rest = 0; x_rest < half; ++x_rest) {
            StateVector post(std::vector<Complex>{amps[x_rest], amps[half + x_rest]});
            const double p = post.norm_squared();
            if (p == 0.0) continue;
            std::vector<std::uint8_t> bits(2);
            for (std::uint64_t theta1 = 0; theta1 < 2; ++theta1) {
                const BasisChoice theta(BitString(n, (theta1 << rest) | theta_rest));
                bits[theta1] = static_cast<std::uint8_t>(s.answers().at(theta) ^ parity64(x_rest));
            }
            // The one-qubit table index is theta_1 itself.
            ReductionBranch branch{BasisChoice(BitString(rest, theta_rest)), BitString(rest, x_rest),
                                   theta_weight * p,
                                   SemiClassicalStrategy(post.normalized(), AnswerTable(one, bits))};
            out.value += branch.weight * xor_game_value(branch.strategy).value;
            out.branches.push_back(std::move(branch));
        }
    }
    return out;
}

}  // namespace moegame
