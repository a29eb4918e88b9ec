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

#pragma once

#include "moegame/games.h"
#include "moegame/rng.h"

namespace moegame {

/// Haar-random pure state (normalized complex Gaussian vector).
StateVector random_state(std::size_t dim, Rng &rng);

AnswerTable random_answer_table(const GameSpec &spec, Rng &rng);
SemiClassicalStrategy random_semiclassical(const GameSpec &spec, Rng &rng);

/// P0 projects onto a random subspace of uniformly random rank in [0, dim];
/// P1 = I - P0.
BinaryMeasurement random_projector_pair(std::size_t dim, Rng &rng);

Measurements random_measurements(const GameSpec &spec, std::size_t dim_b, std::size_t dim_c,
                                 Rng &rng);
QuantumStrategy random_quantum(const GameSpec &spec, std::size_t dim_b, std::size_t dim_c,
                               Rng &rng);

}  // namespace moegame
