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
 * Strategy data model and evaluation of the XOR and Goldreich-Levin
 * monogamy games.
 *
 * In both games the Referee measures Alice's n-qubit register in a random
 * BB84 basis theta, obtaining x. Bob and Charlie must both output a target
 * bit: parity(x) in the XOR game, r.x in the GL game (where r is a second
 * uniformly random challenge string). Internally a challenge is the pair
 * (theta, mask) and the target is mask.x; the XOR game is the GL game with
 * the mask fixed to 1^n.
 *
 * Challenge indexing follows the answer-table serialization: theta and r are
 * read as little-endian integers (theta_1 least significant), the XOR index
 * is theta and the GL index is theta * 2^n + r.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "moegame/bits.h"
#include "moegame/qcore.h"
#include "moegame/states.h"

namespace moegame {

/// Largest register the game evaluators accept.
inline constexpr int kMaxGameQubits = 12;

enum class GameVariant { kXor, kGl };

struct GameSpec {
    GameVariant variant = GameVariant::kXor;
    int n = 1;

    friend bool operator==(const GameSpec &, const GameSpec &) = default;
};

/// Throws ContractError unless 1 <= n <= kMaxGameQubits.
void validate(const GameSpec &spec);
std::size_t challenge_count(const GameSpec &spec);
const char *to_string(GameVariant variant);

struct Challenge {
    BasisChoice theta;
    /// r for the GL game, 1^n for the XOR game.
    BitString mask;
};

Challenge challenge_at(const GameSpec &spec, std::size_t index);
std::size_t challenge_index(const GameSpec &spec, const BasisChoice &theta, const BitString &r);
std::size_t challenge_index(const GameSpec &spec, const BasisChoice &theta);

/// Deterministic answer c(theta[, r]) shared by Bob and Charlie.
class AnswerTable {
  public:
    AnswerTable(GameSpec spec, std::vector<std::uint8_t> bits);

    static AnswerTable constant(GameSpec spec, int bit);
    /// Table whose entry k is bit k of `packed` (at most 64 entries).
    static AnswerTable from_packed(GameSpec spec, std::uint64_t packed);
    /// Hex of the flat bit array read as an integer, most significant nibble
    /// first, exactly ceil(size/4) digits.
    static AnswerTable from_hex(GameSpec spec, std::string_view hex);

    const GameSpec &spec() const { return spec_; }
    std::size_t size() const { return bits_.size(); }
    int operator[](std::size_t index) const { return bits_[index]; }
    int at(const BasisChoice &theta, const BitString &r) const;
    int at(const BasisChoice &theta) const;
    const std::vector<std::uint8_t> &bits() const { return bits_; }

    std::string to_hex() const;
    AnswerTable complemented() const;

    friend bool operator==(const AnswerTable &, const AnswerTable &) = default;

  private:
    GameSpec spec_;
    std::vector<std::uint8_t> bits_;
};

std::string encode_bits_hex(const std::vector<std::uint8_t> &bits);
std::vector<std::uint8_t> decode_bits_hex(std::string_view hex, std::size_t length);

/// Alice's unentangled state plus the common answer table.
class SemiClassicalStrategy {
  public:
    SemiClassicalStrategy(StateVector alice_state, AnswerTable answers);

    const GameSpec &spec() const { return answers_.spec(); }
    const StateVector &alice_state() const { return alice_state_; }
    const AnswerTable &answers() const { return answers_; }

  private:
    StateVector alice_state_;
    AnswerTable answers_;
};

struct BinaryMeasurement {
    ComplexMatrix p0;
    ComplexMatrix p1;

    const ComplexMatrix &operator[](int b) const { return b == 0 ? p0 : p1; }
};

/// One two-outcome projective measurement per challenge, all on a register
/// of dimension dim(). Construction checks P0 + P1 = I and that each P_b is
/// a Hermitian idempotent, to 1e-10.
class MeasurementFamily {
  public:
    MeasurementFamily(std::size_t dim, std::vector<BinaryMeasurement> per_challenge);

    /// P_b = delta_{b = c} I on a register of the given dimension.
    static MeasurementFamily deterministic(const AnswerTable &answers, std::size_t dim = 1);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return per_challenge_.size(); }
    const BinaryMeasurement &operator[](std::size_t challenge) const {
        return per_challenge_[challenge];
    }

  private:
    std::size_t dim_;
    std::vector<BinaryMeasurement> per_challenge_;
};

/// Bob's and Charlie's measurement families for a game.
class Measurements {
  public:
    Measurements(GameSpec spec, MeasurementFamily bob, MeasurementFamily charlie);

    static Measurements semiclassical(const AnswerTable &answers);

    const GameSpec &spec() const { return spec_; }
    const MeasurementFamily &bob() const { return bob_; }
    const MeasurementFamily &charlie() const { return charlie_; }
    std::size_t dim_b() const { return bob_.dim(); }
    std::size_t dim_c() const { return charlie_.dim(); }
    std::size_t dim_bc() const { return bob_.dim() * charlie_.dim(); }

  private:
    GameSpec spec_;
    MeasurementFamily bob_;
    MeasurementFamily charlie_;
};

/// Joint state on A (x) B (x) C (A most significant) plus measurements.
class QuantumStrategy {
  public:
    QuantumStrategy(Measurements measurements, StateVector joint_state);

    /// The semi-classical strategy with one-dimensional B and C.
    static QuantumStrategy embed(const SemiClassicalStrategy &s);

    const GameSpec &spec() const { return measurements_.spec(); }
    const Measurements &measurements() const { return measurements_; }
    const StateVector &joint_state() const { return joint_state_; }

  private:
    Measurements measurements_;
    StateVector joint_state_;
};

enum class ValueMethod { kBorn, kEigen, kMonteCarlo };
const char *to_string(ValueMethod method);

struct GameValueReport {
    double value = 0.0;
    ValueMethod method = ValueMethod::kBorn;
    std::uint64_t trials = 0;
    double standard_error = 0.0;
};

/// Pr[parity(x) = 0] for x from measuring `state` in basis theta.
double parity_bias(const StateVector &state, const BasisChoice &theta);
/// Pr[mask.x = 0].
double masked_parity_bias(const StateVector &state, const BasisChoice &theta,
                          const BitString &mask);

GameValueReport xor_game_value(const SemiClassicalStrategy &s);
GameValueReport gl_game_value_semiclassical(const SemiClassicalStrategy &s);
/// Dispatches on the strategy's variant.
GameValueReport game_value(const SemiClassicalStrategy &s);

/// Sum over x with mask.x = bit of |x^theta><x^theta|.
ComplexMatrix outcome_projector(const BasisChoice &theta, const BitString &mask, int bit);

/// E_challenge sum_{x: mask.x = c} |x^theta><x^theta| for either variant; its
/// top eigenvalue is the best value over Alice's states for this table.
ComplexMatrix semiclassical_operator(const AnswerTable &answers);
/// M_c for the GL game.
ComplexMatrix gl_semiclassical_operator(int n, const AnswerTable &answers);

/// Pi = sum_b sum_{x: mask.x=b} |x^theta><x^theta| (x) P_b (x) Q_b.
ComplexMatrix game_projector(const Measurements &m, std::size_t challenge);
ComplexMatrix gl_game_projector(const BasisChoice &theta, const BitString &r,
                                const Measurements &m);
/// E_challenge Pi.
ComplexMatrix average_game_projector(const Measurements &m);

GameValueReport game_value_quantum(const QuantumStrategy &s);
GameValueReport gl_game_value_quantum(const QuantumStrategy &s);

/// Best value over all joint states for fixed measurements.
double p_opt_for_measurements(const Measurements &m);

/// Monte-Carlo referee. Deterministic in (trials, seed); trials are split into
/// fixed-size shards seeded by Rng::derive_seed(seed, shard).
GameValueReport simulate_game(const SemiClassicalStrategy &s, std::uint64_t trials,
                              std::uint64_t seed);
GameValueReport simulate_game(const QuantumStrategy &s, std::uint64_t trials, std::uint64_t seed);

}  // namespace moegame
