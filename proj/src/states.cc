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

#include "moegame/states.h"

#include <cmath>
#include <numbers>
#include <string>

#include "moegame/errors.h"

namespace moegame {

namespace {

const Complex kIPow[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};

}  // namespace

StateVector comp_basis_state(const BitString &x, const BasisChoice &theta) {
    if (x.size() != theta.size()) {
        throw ContractError("comp_basis_state: |x| = " + std::to_string(x.size()) +
                            " but theta has " + std::to_string(theta.size()) + " qubits");
    }
    const std::uint64_t h = theta.bits().mask();
    const std::uint64_t c = ~h & BitString::ones(x.size()).mask();
    const double amp = std::pow(2.0, -0.5 * theta.hadamard_count());
    const std::size_t dim = std::size_t{1} << x.size();
    StateVector v(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        if ((k & c) != (x.mask() & c)) continue;
        v[k] = parity64(k & x.mask() & h) ? -amp : amp;
    }
    return v;
}

StateVector y_basis_state(const BitString &y) {
    const int n = y.size();
    const std::size_t dim = std::size_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * n);
    const std::uint64_t not_y = y.flipped().mask();
    StateVector v(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        // Each set bit k_j contributes +i if y_j = 0 and -i if y_j = 1.
        const int power = std::popcount(k & not_y) + 3 * std::popcount(k & y.mask());
        v[k] = amp * kIPow[power % 4];
    }
    return v;
}

StateVector attack_state(const BitString &y, AttackVariant variant) {
    const double sign = variant == AttackVariant::kPhi ? 1.0 : -1.0;
    const Complex rel = sign * std::polar(1.0, std::numbers::pi / 4);
    StateVector v = y_basis_state(y);
    v += rel * y_basis_state(y.flipped());
    v *= 1.0 / std::numbers::sqrt2;
    return v;
}

PauliString parity_observable(const BasisChoice &theta) {
    return masked_parity_observable(theta, BitString::ones(theta.size()));
}

PauliString masked_parity_observable(const BasisChoice &theta, const BitString &mask) {
    if (mask.size() != theta.size()) {
        throw ContractError("mask length " + std::to_string(mask.size()) + " does not match theta");
    }
    std::vector<Pauli> labels(static_cast<std::size_t>(theta.size()), Pauli::I);
    for (int i = 0; i < theta.size(); ++i) {
        if (!mask.bit(i)) continue;
        labels[static_cast<std::size_t>(i)] = theta.bits().bit(i) ? Pauli::X : Pauli::Z;
    }
    return PauliString(std::move(labels));
}

int predicted_parity(const BitString &y, const BasisChoice &theta, AttackVariant variant) {
    if (y.size() != theta.size()) {
        throw ContractError("predicted_parity: |y| = " + std::to_string(y.size()) +
                            " but theta has " + std::to_string(theta.size()) + " qubits");
    }
    const int base = dot(y, theta.bits());
    const int w = theta.hadamard_count() % 4;
    const int phi = (w == 0 || w == 1) ? base : base ^ 1;
    // The two families differ only in the sign of the cross term, which is
    // all that the parity observable sees, so their predictions are complementary.
    return variant == AttackVariant::kPhi ? phi : phi ^ 1;
}

}  // namespace moegame
