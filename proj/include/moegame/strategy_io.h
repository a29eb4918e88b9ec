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
 * JSON strategy and slice files.
 *
 * Semi-classical strategy:
 *
 *     {"variant": "xor" | "gl", "n": 2,
 *      "alice_state": [[re, im], ...] | {"attack": {"y": "01", "variant": "phi"}},
 *      "answer_table_hex": "6"}
 *
 * "answer_table_hex" may be omitted for an XOR attack state, in which case
 * the predicted-parity table is used. A quantum strategy replaces
 * "alice_state" and "answer_table_hex" with
 *
 *     "dim_b": 2, "dim_c": 2, "joint_state": [[re, im], ...],
 *     "proj_p": [[P0, P1], ...], "proj_q": [[Q0, Q1], ...]
 *
 * with one projector pair per challenge index and each matrix an array of
 * rows of [re, im]. A slice file is {"n", "dim_bc", "slices": [[[re, im],
 * ...], ...]}. All errors are InputError with a line:column or field path.
 */

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "moegame/decomp.h"
#include "moegame/games.h"

namespace moegame {

using Strategy = std::variant<SemiClassicalStrategy, QuantumStrategy>;

Strategy parse_strategy(std::string_view text);
Strategy load_strategy(const std::string &path);

std::string strategy_to_json(const SemiClassicalStrategy &s);
std::string strategy_to_json(const QuantumStrategy &s);
std::string strategy_to_json(const Strategy &s);

SliceFamily parse_slices(std::string_view text);
SliceFamily load_slices(const std::string &path);
std::string slices_to_json(const SliceFamily &slices);

}  // namespace moegame
