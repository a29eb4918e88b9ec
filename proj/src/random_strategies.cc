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

#include "moegame/random_strategies.h"

#include <cmath>

#include "moegame/errors.h"

namespace moegame {

StateVector random_state(std::size_t dim, Rng &rng) {
    if (dim == 0) throw ContractError("random_state needs a positive dimension");
    std::vector<Complex> amps(dim);
    double norm = 0;
    do {
        for (Complex &a : amps) a = Complex(rng.normal(), rng.normal());
        norm = 0;
        for (const Complex &a : amps) norm += std::norm(a);
    } while (norm == 0.0);
    return StateVector(std::move(amps)).normalized();
}

AnswerTable random_answer_table(const GameSpec &spec, Rng &rng) {
    std::vector<std::uint8_t> bits(challenge_count(spec));
    for (auto &b : bits) b = static_cast<std::uint8_t>(rng.bits(1));
    return AnswerTable(spec, std::move(bits));
}

SemiClassicalStrategy random_semiclassical(const GameSpec &spec, Rng &rng) {
    StateVector u = random_state(std::size_t{1} << spec.n, rng);
    return SemiClassicalStrategy(std::move(u), random_answer_table(spec, rng));
}

BinaryMeasurement random_projector_pair(std::size_t dim, Rng &rng) {
    const std::size_t rank = rng.below(dim + 1);
    // Gram-Schmidt on Gaussian vectors; a near-dependent draw is redrawn.
    std::vector<StateVector> basis;
    while (basis.size() < rank) {
        StateVector v = random_state(dim, rng);
        for (const StateVector &e : basis) {
            const Complex overlap = inner_product(e, v);
            for (std::size_t k = 0; k < dim; ++k) v[k] -= overlap * e[k];
        }
        if (v.norm_squared() < 1e-6) continue;
        basis.push_back(v.normalized());
    }
    ComplexMatrix p0(dim, dim);
    for (const StateVector &e : basis) p0 += ComplexMatrix::outer(e);
    return {p0, ComplexMatrix::identity(dim) - p0};
}

Measurements random_measurements(const GameSpec &spec, std::size_t dim_b, std::size_t dim_c,
                                 Rng &rng) {
    const std::size_t count = challenge_count(spec);
    std::vector<BinaryMeasurement> bob, charlie;
    bob.reserve(count);
    charlie.reserve(count);
    for (std::size_t c = 0; c < count; ++c) bob.push_back(random_projector_pair(dim_b, rng));
    for (std::size_t c = 0; c < count; ++c) charlie.push_back(random_projector_pair(dim_c, rng));
    return Measurements(spec, MeasurementFamily(dim_b, std::move(bob)),
                        MeasurementFamily(dim_c, std::move(charlie)));
}

QuantumStrategy random_quantum(const GameSpec &spec, std::size_t dim_b, std::size_t dim_c,
                               Rng &rng) {
    Measurements m = random_measurements(spec, dim_b, dim_c, rng);
    StateVector v = random_state((std::size_t{1} << spec.n) * dim_b * dim_c, rng);
    return QuantumStrategy(std::move(m), std::move(v));
}

}  // namespace moegame
