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
 * BB84-basis states, Y-basis states, the parity-attack states and the parity
 * observable for a basis choice theta.
 */

#pragma once

#include "moegame/bits.h"
#include "moegame/qcore.h"

namespace moegame {

/// Per-qubit basis choice: theta_i = 0 is the standard basis, 1 the Hadamard
/// basis.
class BasisChoice {
  public:
    BasisChoice() = default;
    explicit BasisChoice(BitString theta) : theta_(theta) {}
    static BasisChoice parse(std::string_view text) { return BasisChoice(BitString::parse(text)); }

    int size() const { return theta_.size(); }
    const BitString &bits() const { return theta_; }
    /// H = {i : theta_i = 1}, as a mask.
    BitString hadamard_positions() const { return theta_; }
    /// C = {i : theta_i = 0}, as a mask.
    BitString computational_positions() const { return theta_.flipped(); }
    int hadamard_count() const { return theta_.weight(); }

    friend bool operator==(const BasisChoice &, const BasisChoice &) = default;

  private:
    BitString theta_;
};

enum class AttackVariant { kPhi, kPsi };

/// |x^theta> = (x) |x_i^{theta_i}>.
StateVector comp_basis_state(const BitString &x, const BasisChoice &theta);

/// |y^Y> with |0^Y> = (|0> + i|1>)/sqrt2 and |1^Y> = (|0> - i|1>)/sqrt2.
StateVector y_basis_state(const BitString &y);

/// (|y^Y> +/- e^{i pi/4} |ybar^Y>)/sqrt2: plus for kPhi, minus for kPsi.
StateVector attack_state(const BitString &y, AttackVariant variant);

/// Z on C, X on H, phase +1. Its eigenvalue on |x^theta> is (-1)^{parity(x)}.
PauliString parity_observable(const BasisChoice &theta);

/// Like parity_observable but acting trivially where mask is 0; its
/// eigenvalue on |x^theta> is (-1)^{mask.x}.
PauliString masked_parity_observable(const BasisChoice &theta, const BitString &mask);

/// Parity bit that |phi_y> / |psi_y> outputs with probability cos^2(pi/8)
/// when measured in basis theta. For phi this is y.theta when |theta| = 0, 1
/// (mod 4) and its complement otherwise; psi always predicts the complement
/// of phi.
int predicted_parity(const BitString &y, const BasisChoice &theta, AttackVariant variant);

}  // namespace moegame
