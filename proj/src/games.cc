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

#include "moegame/games.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "moegame/errors.h"
#include "moegame/rng.h"

namespace moegame {

namespace {

constexpr double kProjectorTolerance = 1e-10;
constexpr std::uint64_t kShardTrials = std::uint64_t{1} << 16;

std::uint64_t full_mask(int n) { return BitString::ones(n).mask(); }

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        if (std::abs(a.entries()[k] - b.entries()[k]) > tol) return false;
    return true;
}

void check_measurement(const BinaryMeasurement &m, std::size_t dim, std::size_t challenge) {
    const std::string where = "measurement for challenge " + std::to_string(challenge);
    for (int b = 0; b < 2; ++b) {
        const ComplexMatrix &p = m[b];
        if (p.rows() != dim || p.cols() != dim) {
            throw ContractError(where + ": projector is " + std::to_string(p.rows()) + "x" +
                                std::to_string(p.cols()) + ", expected dimension " +
                                std::to_string(dim));
        }
        if (!p.is_hermitian(kProjectorTolerance)) {
            throw ContractError(where + ": P_" + std::to_string(b) + " is not Hermitian");
        }
        if (!approx_equal(p * p, p, kProjectorTolerance)) {
            throw ContractError(where + ": P_" + std::to_string(b) + " is not idempotent");
        }
    }
    if (!approx_equal(m.p0 + m.p1, ComplexMatrix::identity(dim), kProjectorTolerance)) {
        throw ContractError(where + ": P_0 + P_1 != I");
    }
}

// Amplitudes <x^theta (x) k | v> for all x, k: Hadamards on the H positions of
// the A register (the most significant part of the index).
std::vector<Complex> rotate_to_basis(std::span<const Complex> v, int n, std::uint64_t theta,
                                     std::size_t rest_dim) {
    std::vector<Complex> a(v.begin(), v.end());
    const double s = 1.0 / std::numbers::sqrt2;
    const std::size_t dim_a = std::size_t{1} << n;
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (!(theta & bit)) continue;
        for (std::uint64_t x = 0; x < dim_a; ++x) {
            if (x & bit) continue;
            for (std::size_t k = 0; k < rest_dim; ++k) {
                Complex &lo = a[x * rest_dim + k];
                Complex &hi = a[(x | bit) * rest_dim + k];
                const Complex l = lo, h = hi;
                lo = s * (l + h);
                hi = s * (l - h);
            }
        }
    }
    return a;
}

// Little-endian integer of every n-bit mask.
std::vector<std::uint32_t> little_endian_table(int n) {
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    for (std::uint64_t m = 0; m < t.size(); ++m) {
        t[m] = static_cast<std::uint32_t>(BitString(n, m).little_endian_value());
    }
    return t;
}

template <typename ShardFn>
std::uint64_t run_shards(std::uint64_t trials, ShardFn &&fn) {
    const std::uint64_t shards = (trials + kShardTrials - 1) / kShardTrials;
    std::vector<std::uint64_t> wins(shards, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t s = next++; s < shards; s = next++) {
            const std::uint64_t begin = s * kShardTrials;
            const std::uint64_t count = std::min(kShardTrials, trials - begin);
            wins[s] = fn(s, count);
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::min<std::uint64_t>(hw, shards);
    std::vector<std::thread> pool;
    for (std::uint64_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    std::uint64_t total = 0;
    for (std::uint64_t w : wins) total += w;
    return total;
}

GameValueReport monte_carlo_report(std::uint64_t wins, std::uint64_t trials) {
    GameValueReport r;
    r.method = ValueMethod::kMonteCarlo;
    r.trials = trials;
    r.value = static_cast<double>(wins) / static_cast<double>(trials);
    r.standard_error = std::sqrt(r.value * (1.0 - r.value) / static_cast<double>(trials));
    return r;
}

std::size_t sample_cdf(const std::vector<double> &cdf, std::size_t offset, std::size_t len,
                       double u) {
    const auto first = cdf.begin() + static_cast<std::ptrdiff_t>(offset);
    const auto last = first + static_cast<std::ptrdiff_t>(len);
    const double target = u * *(last - 1);
    auto it = std::upper_bound(first, last, target);
    if (it == last) --it;
    return static_cast<std::size_t>(it - first);
}

}  // namespace

// ---------------------------------------------------------------------------
// Game specs and challenges

void validate(const GameSpec &spec) {
    if (spec.n < 1 || spec.n > kMaxGameQubits) {
        throw ContractError("game size n = " + std::to_string(spec.n) + " outside [1, " +
                            std::to_string(kMaxGameQubits) + "]");
    }
}

std::size_t challenge_count(const GameSpec &spec) {
    validate(spec);
    return spec.variant == GameVariant::kXor ? std::size_t{1} << spec.n
                                             : std::size_t{1} << (2 * spec.n);
}

const char *to_string(GameVariant variant) { return variant == GameVariant::kXor ? "xor" : "gl"; }

const char *to_string(ValueMethod method) {
    switch (method) {
        case ValueMethod::kBorn: return "born";
        case ValueMethod::kEigen: return "eigen";
        case ValueMethod::kMonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

Challenge challenge_at(const GameSpec &spec, std::size_t index) {
    if (index >= challenge_count(spec)) {
        throw ContractError("challenge index " + std::to_string(index) + " out of range");
    }
    if (spec.variant == GameVariant::kXor) {
        return {BasisChoice(BitString::from_little_endian(spec.n, index)), BitString::ones(spec.n)};
    }
    const std::uint64_t low = full_mask(spec.n);
    return {BasisChoice(BitString::from_little_endian(spec.n, index >> spec.n)),
            BitString::from_little_endian(spec.n, index & low)};
}

std::size_t challenge_index(const GameSpec &spec, const BasisChoice &theta, const BitString &r) {
    validate(spec);
    if (theta.size() != spec.n || r.size() != spec.n) {
        throw ContractError("challenge lengths do not match n = " + std::to_string(spec.n));
    }
    if (spec.variant == GameVariant::kXor) return theta.bits().little_endian_value();
    return (theta.bits().little_endian_value() << spec.n) | r.little_endian_value();
}

std::size_t challenge_index(const GameSpec &spec, const BasisChoice &theta) {
    if (spec.variant != GameVariant::kXor) {
        throw ContractError("GL challenges need both theta and r");
    }
    return challenge_index(spec, theta, BitString::ones(spec.n));
}

// ---------------------------------------------------------------------------
// AnswerTable

AnswerTable::AnswerTable(GameSpec spec, std::vector<std::uint8_t> bits)
    : spec_(spec), bits_(std::move(bits)) {
    if (bits_.size() != challenge_count(spec_)) {
        throw ContractError("answer table has " + std::to_string(bits_.size()) +
                            " entries, expected " + std::to_string(challenge_count(spec_)));
    }
    for (std::uint8_t b : bits_) {
        if (b > 1) throw ContractError("answer table entries must be 0 or 1");
    }
}

AnswerTable AnswerTable::constant(GameSpec spec, int bit) {
    return AnswerTable(spec, std::vector<std::uint8_t>(challenge_count(spec),
                                                       static_cast<std::uint8_t>(bit & 1)));
}

AnswerTable AnswerTable::from_packed(GameSpec spec, std::uint64_t packed) {
    const std::size_t count = challenge_count(spec);
    if (count > 64) {
        throw SizeError("packed answer tables hold at most 64 entries, game needs " +
                        std::to_string(count));
    }
    std::vector<std::uint8_t> bits(count);
    for (std::size_t k = 0; k < count; ++k) bits[k] = static_cast<std::uint8_t>((packed >> k) & 1);
    return AnswerTable(spec, std::move(bits));
}

AnswerTable AnswerTable::from_hex(GameSpec spec, std::string_view hex) {
    return AnswerTable(spec, decode_bits_hex(hex, challenge_count(spec)));
}

int AnswerTable::at(const BasisChoice &theta, const BitString &r) const {
    return bits_[challenge_index(spec_, theta, r)];
}

int AnswerTable::at(const BasisChoice &theta) const {
    return bits_[challenge_index(spec_, theta)];
}

std::string AnswerTable::to_hex() const { return encode_bits_hex(bits_); }

AnswerTable AnswerTable::complemented() const {
    std::vector<std::uint8_t> flipped(bits_.size());
    for (std::size_t k = 0; k < bits_.size(); ++k) flipped[k] = bits_[k] ^ 1u;
    return AnswerTable(spec_, std::move(flipped));
}

std::string encode_bits_hex(const std::vector<std::uint8_t> &bits) {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = (bits.size() + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t p = 0; p < digits; ++p) {
        unsigned nibble = 0;
        for (std::size_t t = 0; t < 4 && 4 * p + t < bits.size(); ++t) {
            nibble |= static_cast<unsigned>(bits[4 * p + t] & 1u) << t;
        }
        out[digits - 1 - p] = kDigits[nibble];
    }
    return out;
}

std::vector<std::uint8_t> decode_bits_hex(std::string_view hex, std::size_t length) {
    const std::size_t digits = (length + 3) / 4;
    if (hex.size() != digits) {
        throw InputError("answer table hex has " + std::to_string(hex.size()) +
                         " digits, expected " + std::to_string(digits));
    }
    std::vector<std::uint8_t> bits(length);
    for (std::size_t p = 0; p < digits; ++p) {
        const char ch = hex[digits - 1 - p];
        unsigned nibble;
        if (ch >= '0' && ch <= '9') nibble = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f') nibble = static_cast<unsigned>(ch - 'a' + 10);
        else if (ch >= 'A' && ch <= 'F') nibble = static_cast<unsigned>(ch - 'A' + 10);
        else throw InputError(std::string("invalid hex digit '") + ch + "' in answer table");
        for (std::size_t t = 0; t < 4; ++t) {
            const unsigned bit = (nibble >> t) & 1u;
            if (4 * p + t < length) {
                bits[4 * p + t] = static_cast<std::uint8_t>(bit);
            } else if (bit) {
                throw InputError("answer table hex sets bits beyond the table length");
            }
        }
    }
    return bits;
}

// ---------------------------------------------------------------------------
// Strategies

SemiClassicalStrategy::SemiClassicalStrategy(StateVector alice_state, AnswerTable answers)
    : alice_state_(std::move(alice_state)), answers_(std::move(answers)) {
    const std::size_t dim = std::size_t{1} << spec().n;
    if (alice_state_.size() != dim) {
        throw ContractError("Alice's state has " + std::to_string(alice_state_.size()) +
                            " amplitudes, expected " + std::to_string(dim));
    }
    if (!alice_state_.is_normalized()) {
        throw ContractError("Alice's state is not normalized");
    }
}

MeasurementFamily::MeasurementFamily(std::size_t dim, std::vector<BinaryMeasurement> per_challenge)
    : dim_(dim), per_challenge_(std::move(per_challenge)) {
    if (dim_ == 0) throw ContractError("measurement register dimension must be positive");
    for (std::size_t c = 0; c < per_challenge_.size(); ++c) {
        check_measurement(per_challenge_[c], dim_, c);
    }
}

MeasurementFamily MeasurementFamily::deterministic(const AnswerTable &answers, std::size_t dim) {
    const ComplexMatrix id = ComplexMatrix::identity(dim);
    const ComplexMatrix zero(dim, dim);
    std::vector<BinaryMeasurement> family;
    family.reserve(answers.size());
    for (std::size_t c = 0; c < answers.size(); ++c) {
        family.push_back(answers[c] == 0 ? BinaryMeasurement{id, zero} : BinaryMeasurement{zero, id});
    }
    return MeasurementFamily(dim, std::move(family));
}

Measurements::Measurements(GameSpec spec, MeasurementFamily bob, MeasurementFamily charlie)
    : spec_(spec), bob_(std::move(bob)), charlie_(std::move(charlie)) {
    const std::size_t count = challenge_count(spec_);
    if (bob_.size() != count || charlie_.size() != count) {
        throw ContractError("measurement families must have one entry per challenge (" +
                            std::to_string(count) + ")");
    }
}

Measurements Measurements::semiclassical(const AnswerTable &answers) {
    return Measurements(answers.spec(), MeasurementFamily::deterministic(answers),
                        MeasurementFamily::deterministic(answers));
}

QuantumStrategy::QuantumStrategy(Measurements measurements, StateVector joint_state)
    : measurements_(std::move(measurements)), joint_state_(std::move(joint_state)) {
    const std::size_t dim = (std::size_t{1} << spec().n) * measurements_.dim_bc();
    if (joint_state_.size() != dim) {
        throw ContractError("joint state has " + std::to_string(joint_state_.size()) +
                            " amplitudes, expected " + std::to_string(dim));
    }
    if (!joint_state_.is_normalized()) throw ContractError("joint state is not normalized");
}

QuantumStrategy QuantumStrategy::embed(const SemiClassicalStrategy &s) {
    return QuantumStrategy(Measurements::semiclassical(s.answers()), s.alice_state());
}

// ---------------------------------------------------------------------------
// Exact values

double masked_parity_bias(const StateVector &state, const BasisChoice &theta,
                          const BitString &mask) {
    const std::size_t dim = std::size_t{1} << theta.size();
    if (state.size() != dim) {
        throw ContractError("state has " + std::to_string(state.size()) + " amplitudes, basis has " +
                            std::to_string(theta.size()) + " qubits");
    }
    const Complex e = expectation(masked_parity_observable(theta, mask), state);
    if (std::abs(e.imag()) > 1e-10) {
        throw ContractError("parity expectation has imaginary part " + std::to_string(e.imag()));
    }
    return 0.5 * (1.0 + e.real());
}

double parity_bias(const StateVector &state, const BasisChoice &theta) {
    return masked_parity_bias(state, theta, BitString::ones(theta.size()));
}

GameValueReport xor_game_value(const SemiClassicalStrategy &s) {
    if (s.spec().variant != GameVariant::kXor) {
        throw ContractError("xor_game_value needs an XOR strategy");
    }
    const std::size_t count = challenge_count(s.spec());
    double total = 0;
    for (std::size_t c = 0; c < count; ++c) {
        const Challenge ch = challenge_at(s.spec(), c);
        const double p0 = parity_bias(s.alice_state(), ch.theta);
        total += s.answers()[c] == 0 ? p0 : 1.0 - p0;
    }
    return {total / static_cast<double>(count), ValueMethod::kBorn, 0, 0.0};
}

GameValueReport gl_game_value_semiclassical(const SemiClassicalStrategy &s) {
    if (s.spec().variant != GameVariant::kGl) {
        throw ContractError("gl_game_value_semiclassical needs a GL strategy");
    }
    const ComplexMatrix m = gl_semiclassical_operator(s.spec().n, s.answers());
    const double v = inner_product(s.alice_state(), m * s.alice_state()).real();
    return {v, ValueMethod::kBorn, 0, 0.0};
}

GameValueReport game_value(const SemiClassicalStrategy &s) {
    return s.spec().variant == GameVariant::kXor ? xor_game_value(s)
                                                 : gl_game_value_semiclassical(s);
}

ComplexMatrix outcome_projector(const BasisChoice &theta, const BitString &mask, int bit) {
    const int n = theta.size();
    if (mask.size() != n) throw ContractError("mask length does not match theta");
    const std::size_t dim = std::size_t{1} << n;
    const std::uint64_t h = theta.bits().mask();
    const std::uint64_t c = ~h & full_mask(n);
    ComplexMatrix p(dim, dim);
    std::vector<std::pair<std::uint64_t, double>> support;
    for (std::uint64_t x = 0; x < dim; ++x) {
        if (parity64(x & mask.mask()) != bit) continue;
        // Nonzero amplitudes of |x^theta>.
        const StateVector v = comp_basis_state(BitString(n, x), theta);
        support.clear();
        for (std::uint64_t k = 0; k < dim; ++k) {
            if ((k & c) == (x & c)) support.emplace_back(k, v[k].real());
        }
        for (const auto &[i, ai] : support)
            for (const auto &[j, aj] : support) p(i, j) += ai * aj;
    }
    return p;
}

ComplexMatrix semiclassical_operator(const AnswerTable &answers) {
    const GameSpec &spec = answers.spec();
    const int n = spec.n;
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t count = challenge_count(spec);
    // sum_{x: mask.x = c} |x^theta><x^theta| = (I + (-1)^c O) / 2, where the
    // observable O is Z on C n mask and X on H n mask.
    ComplexMatrix m = ComplexMatrix::identity(dim) * 0.5;
    const double w = 0.5 / static_cast<double>(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const Challenge ch = challenge_at(spec, idx);
        const std::uint64_t flip = ch.mask.mask() & ch.theta.bits().mask();
        const std::uint64_t sign = ch.mask.mask() & ~ch.theta.bits().mask();
        const double coeff = answers[idx] == 0 ? w : -w;
        for (std::uint64_t k = 0; k < dim; ++k) {
            m(k ^ flip, k) += parity64(k & sign) ? -coeff : coeff;
        }
    }
    return m;
}

ComplexMatrix gl_semiclassical_operator(int n, const AnswerTable &answers) {
    if (answers.spec().variant != GameVariant::kGl || answers.spec().n != n) {
        throw ContractError("gl_semiclassical_operator needs a GL table on " + std::to_string(n) +
                            " qubits");
    }
    return semiclassical_operator(answers);
}

ComplexMatrix game_projector(const Measurements &m, std::size_t challenge) {
    const Challenge ch = challenge_at(m.spec(), challenge);
    const std::size_t dim = (std::size_t{1} << m.spec().n) * m.dim_bc();
    ComplexMatrix pi(dim, dim);
    for (int b = 0; b < 2; ++b) {
        const ComplexMatrix bc = kron(m.bob()[challenge][b], m.charlie()[challenge][b]);
        pi += kron(outcome_projector(ch.theta, ch.mask, b), bc);
    }
    return pi;
}

ComplexMatrix gl_game_projector(const BasisChoice &theta, const BitString &r,
                                const Measurements &m) {
    return game_projector(m, challenge_index(m.spec(), theta, r));
}

ComplexMatrix average_game_projector(const Measurements &m) {
    const std::size_t count = challenge_count(m.spec());
    const std::size_t dim = (std::size_t{1} << m.spec().n) * m.dim_bc();
    ComplexMatrix avg(dim, dim);
    for (std::size_t c = 0; c < count; ++c) avg += game_projector(m, c);
    avg *= 1.0 / static_cast<double>(count);
    return avg;
}

GameValueReport game_value_quantum(const QuantumStrategy &s) {
    const Measurements &m = s.measurements();
    const std::size_t count = challenge_count(m.spec());
    double total = 0;
    for (std::size_t c = 0; c < count; ++c) {
        total += inner_product(s.joint_state(), game_projector(m, c) * s.joint_state()).real();
    }
    return {total / static_cast<double>(count), ValueMethod::kBorn, 0, 0.0};
}

GameValueReport gl_game_value_quantum(const QuantumStrategy &s) {
    if (s.spec().variant != GameVariant::kGl) {
        throw ContractError("gl_game_value_quantum needs a GL strategy");
    }
    return game_value_quantum(s);
}

double p_opt_for_measurements(const Measurements &m) {
    return lambda_max(average_game_projector(m));
}

// ---------------------------------------------------------------------------
// Monte Carlo

GameValueReport simulate_game(const SemiClassicalStrategy &s, std::uint64_t trials,
                              std::uint64_t seed) {
    if (trials == 0) throw ContractError("simulate_game needs at least one trial");
    const GameSpec spec = s.spec();
    const int n = spec.n;
    const std::size_t dim = std::size_t{1} << n;
    // Outcome CDF per theta mask.
    std::vector<double> cdf(dim * dim);
    for (std::uint64_t theta = 0; theta < dim; ++theta) {
        const auto amps = rotate_to_basis(s.alice_state().amplitudes(), n, theta, 1);
        double acc = 0;
        for (std::size_t x = 0; x < dim; ++x) {
            acc += std::norm(amps[x]);
            cdf[theta * dim + x] = acc;
        }
    }
    const auto le = little_endian_table(n);
    const bool gl = spec.variant == GameVariant::kGl;
    const AnswerTable &table = s.answers();
    auto bob = [&](std::size_t idx) { return table[idx]; };
    auto charlie = [&](std::size_t idx) { return table[idx]; };

    const std::uint64_t wins = run_shards(trials, [&](std::uint64_t shard, std::uint64_t count) {
        Rng rng(Rng::derive_seed(seed, shard));
        std::uint64_t won = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            const std::uint64_t theta = rng.bits(n);
            const std::uint64_t r = gl ? rng.bits(n) : full_mask(n);
            const std::size_t x = sample_cdf(cdf, theta * dim, dim, rng.uniform());
            const std::size_t idx = gl ? (std::size_t{le[theta]} << n) | le[r] : le[theta];
            const int b = bob(idx);
            const int b2 = charlie(idx);
            if (b == b2 && b == parity64(x & r)) ++won;
        }
        return won;
    });
    return monte_carlo_report(wins, trials);
}

GameValueReport simulate_game(const QuantumStrategy &s, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractError("simulate_game needs at least one trial");
    const Measurements &m = s.measurements();
    const GameSpec spec = m.spec();
    const int n = spec.n;
    const std::size_t dim_a = std::size_t{1} << n;
    const std::size_t db = m.dim_b(), dc = m.dim_c(), dbc = m.dim_bc();

    // Per theta: rotated joint amplitudes (x-major) and the CDF over x.
    std::vector<std::vector<Complex>> rotated(dim_a);
    std::vector<double> cdf(dim_a * dim_a);
    for (std::uint64_t theta = 0; theta < dim_a; ++theta) {
        rotated[theta] = rotate_to_basis(s.joint_state().amplitudes(), n, theta, dbc);
        double acc = 0;
        for (std::size_t x = 0; x < dim_a; ++x) {
            for (std::size_t k = 0; k < dbc; ++k) acc += std::norm(rotated[theta][x * dbc + k]);
            cdf[theta * dim_a + x] = acc;
        }
    }
    const auto le = little_endian_table(n);
    const bool gl = spec.variant == GameVariant::kGl;

    const std::uint64_t wins = run_shards(trials, [&](std::uint64_t shard, std::uint64_t count) {
        Rng rng(Rng::derive_seed(seed, shard));
        std::vector<Complex> w(dbc), after_bob(dbc), tmp(dbc);
        std::uint64_t won = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            const std::uint64_t theta = rng.bits(n);
            const std::uint64_t r = gl ? rng.bits(n) : full_mask(n);
            const std::size_t x = sample_cdf(cdf, theta * dim_a, dim_a, rng.uniform());
            const std::size_t idx = gl ? (std::size_t{le[theta]} << n) | le[r] : le[theta];
            std::copy_n(rotated[theta].begin() + static_cast<std::ptrdiff_t>(x * dbc), dbc,
                        w.begin());

            // Bob measures {P_b} (x) I on B.
            const ComplexMatrix &p0 = m.bob()[idx].p0;
            double norm_w = 0, norm_p0 = 0;
            for (std::size_t i = 0; i < db; ++i)
                for (std::size_t k = 0; k < dc; ++k) {
                    Complex acc = 0;
                    for (std::size_t j = 0; j < db; ++j) acc += p0(i, j) * w[j * dc + k];
                    tmp[i * dc + k] = acc;
                    norm_p0 += std::norm(acc);
                    norm_w += std::norm(w[i * dc + k]);
                }
            const int b = rng.uniform() * norm_w < norm_p0 ? 0 : 1;
            double norm_after = 0;
            for (std::size_t k = 0; k < dbc; ++k) {
                after_bob[k] = b == 0 ? tmp[k] : w[k] - tmp[k];
                norm_after += std::norm(after_bob[k]);
            }

            // Charlie measures I (x) {Q_b} on the post-measurement state.
            const ComplexMatrix &q0 = m.charlie()[idx].p0;
            double norm_q0 = 0;
            for (std::size_t i = 0; i < db; ++i)
                for (std::size_t k = 0; k < dc; ++k) {
                    Complex acc = 0;
                    for (std::size_t l = 0; l < dc; ++l) acc += q0(k, l) * after_bob[i * dc + l];
                    norm_q0 += std::norm(acc);
                }
            const int b2 = rng.uniform() * norm_after < norm_q0 ? 0 : 1;
            if (b == b2 && b == parity64(x & r)) ++won;
        }
        return won;
    });
    return monte_carlo_report(wins, trials);
}

}  // namespace moegame
