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

#include "moegame/strategy_io.h"

#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "moegame/errors.h"

namespace moegame {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw InputError("field '" + path + "': " + message);
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // Convert the byte offset to a 1-based line and column.
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < end; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        // Keep only the parser's description, not its own position prefix.
        std::string detail = e.what();
        const std::size_t cut = detail.find(": ", detail.find("column"));
        if (cut != std::string::npos) detail = detail.substr(cut + 2);
        throw InputError("JSON syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + detail);
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const json &field(const json &obj, const std::string &path, const char *key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

std::string index_path(const std::string &path, std::size_t k) {
    return path + "[" + std::to_string(k) + "]";
}

std::int64_t get_int(const json &v, const std::string &path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

std::string get_string(const json &v, const std::string &path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

Complex get_complex(const json &v, const std::string &path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path, "expected a [re, im] pair of numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Complex> get_vector(const json &v, const std::string &path, std::size_t expected) {
    if (!v.is_array()) fail(path, "expected an array of [re, im] pairs");
    if (v.size() != expected) {
        fail(path, "expected " + std::to_string(expected) + " amplitudes, found " +
                       std::to_string(v.size()));
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(get_complex(v[k], index_path(path, k)));
    return out;
}

ComplexMatrix get_matrix(const json &v, const std::string &path, std::size_t dim) {
    if (!v.is_array() || v.size() != dim) {
        fail(path, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                       " matrix as an array of rows");
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto row = get_vector(v[i], index_path(path, i), dim);
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = row[j];
    }
    return m;
}

json complex_json(const Complex &z) { return json::array({z.real(), z.imag()}); }

json vector_json(std::span<const Complex> v) {
    json out = json::array();
    for (const Complex &z : v) out.push_back(complex_json(z));
    return out;
}

json matrix_json(const ComplexMatrix &m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

json family_json(const MeasurementFamily &f) {
    json out = json::array();
    for (std::size_t c = 0; c < f.size(); ++c) {
        out.push_back(json::array({matrix_json(f[c].p0), matrix_json(f[c].p1)}));
    }
    return out;
}

MeasurementFamily parse_family(const json &v, const std::string &path, std::size_t dim,
                               std::size_t count) {
    if (!v.is_array() || v.size() != count) {
        fail(path, "expected " + std::to_string(count) + " projector pairs, one per challenge");
    }
    std::vector<BinaryMeasurement> family;
    family.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        const std::string p = index_path(path, c);
        if (!v[c].is_array() || v[c].size() != 2) fail(p, "expected a pair [P0, P1]");
        family.push_back({get_matrix(v[c][0], index_path(p, 0), dim),
                          get_matrix(v[c][1], index_path(p, 1), dim)});
    }
    try {
        return MeasurementFamily(dim, std::move(family));
    } catch (const ContractError &e) {
        fail(path, e.what());
    }
}

GameSpec parse_spec(const json &doc) {
    const std::string variant = get_string(field(doc, "", "variant"), "variant");
    GameSpec spec;
    if (variant == "xor") spec.variant = GameVariant::kXor;
    else if (variant == "gl") spec.variant = GameVariant::kGl;
    else fail("variant", "expected \"xor\" or \"gl\", found \"" + variant + "\"");
    const std::int64_t n = get_int(field(doc, "", "n"), "n");
    if (n < 1 || n > kMaxGameQubits) {
        fail("n", "must be in [1, " + std::to_string(kMaxGameQubits) + "], found " + std::to_string(n));
    }
    spec.n = static_cast<int>(n);
    return spec;
}

SemiClassicalStrategy parse_semiclassical(const json &doc, const GameSpec &spec) {
    const std::size_t dim = std::size_t{1} << spec.n;
    const json &state = field(doc, "", "alice_state");
    StateVector u;
    std::optional<AnswerTable> default_table;
    if (state.is_object()) {
        const json &attack = field(state, "alice_state", "attack");
        const std::string y_text = get_string(field(attack, "alice_state.attack", "y"), "alice_state.attack.y");
        const std::string v_text =
            get_string(field(attack, "alice_state.attack", "variant"), "alice_state.attack.variant");
        BitString y;
        try {
            y = BitString::parse(y_text);
        } catch (const Error &e) {
            fail("alice_state.attack.y", e.what());
        }
        if (y.size() != spec.n) {
            fail("alice_state.attack.y", "length " + std::to_string(y.size()) + " does not match n = " +
                                             std::to_string(spec.n));
        }
        AttackVariant av;
        if (v_text == "phi") av = AttackVariant::kPhi;
        else if (v_text == "psi") av = AttackVariant::kPsi;
        else fail("alice_state.attack.variant", "expected \"phi\" or \"psi\"");
        u = attack_state(y, av);
        if (spec.variant == GameVariant::kXor) {
            std::vector<std::uint8_t> bits(challenge_count(spec));
            for (std::size_t c = 0; c < bits.size(); ++c) {
                bits[c] = static_cast<std::uint8_t>(predicted_parity(y, challenge_at(spec, c).theta, av));
            }
            default_table.emplace(spec, std::move(bits));
        }
    } else {
        u = StateVector(get_vector(state, "alice_state", dim));
        if (!u.is_normalized(1e-9)) fail("alice_state", "state is not normalized");
        u = u.normalized();
    }

    auto it = doc.find("answer_table_hex");
    if (it == doc.end()) {
        if (!default_table) fail("answer_table_hex", "missing");
        return SemiClassicalStrategy(std::move(u), *default_table);
    }
    try {
        return SemiClassicalStrategy(std::move(u),
                                     AnswerTable::from_hex(spec, get_string(*it, "answer_table_hex")));
    } catch (const InputError &e) {
        fail("answer_table_hex", e.what());
    }
}

QuantumStrategy parse_quantum(const json &doc, const GameSpec &spec) {
    const std::int64_t db = get_int(field(doc, "", "dim_b"), "dim_b");
    const std::int64_t dc = get_int(field(doc, "", "dim_c"), "dim_c");
    if (db < 1 || db > 64) fail("dim_b", "must be in [1, 64]");
    if (dc < 1 || dc > 64) fail("dim_c", "must be in [1, 64]");
    const std::size_t count = challenge_count(spec);
    MeasurementFamily bob = parse_family(field(doc, "", "proj_p"), "proj_p", static_cast<std::size_t>(db), count);
    MeasurementFamily charlie =
        parse_family(field(doc, "", "proj_q"), "proj_q", static_cast<std::size_t>(dc), count);
    const std::size_t dim = (std::size_t{1} << spec.n) * static_cast<std::size_t>(db * dc);
    StateVector v(get_vector(field(doc, "", "joint_state"), "joint_state", dim));
    if (!v.is_normalized(1e-9)) fail("joint_state", "state is not normalized");
    return QuantumStrategy(Measurements(spec, std::move(bob), std::move(charlie)), v.normalized());
}

}  // namespace

Strategy parse_strategy(std::string_view text) {
    const json doc = parse_document(text);
    if (!doc.is_object()) throw InputError("strategy file must contain a JSON object");
    const GameSpec spec = parse_spec(doc);
    if (doc.contains("joint_state")) return parse_quantum(doc, spec);
    return parse_semiclassical(doc, spec);
}

Strategy load_strategy(const std::string &path) { return parse_strategy(read_file(path)); }

std::string strategy_to_json(const SemiClassicalStrategy &s) {
    json doc;
    doc["variant"] = to_string(s.spec().variant);
    doc["n"] = s.spec().n;
    doc["alice_state"] = vector_json(s.alice_state().amplitudes());
    doc["answer_table_hex"] = s.answers().to_hex();
    return doc.dump(1);
}

std::string strategy_to_json(const QuantumStrategy &s) {
    const Measurements &m = s.measurements();
    json doc;
    doc["variant"] = to_string(s.spec().variant);
    doc["n"] = s.spec().n;
    doc["dim_b"] = m.dim_b();
    doc["dim_c"] = m.dim_c();
    doc["joint_state"] = vector_json(s.joint_state().amplitudes());
    doc["proj_p"] = family_json(m.bob());
    doc["proj_q"] = family_json(m.charlie());
    return doc.dump(1);
}

std::string strategy_to_json(const Strategy &s) {
    return std::visit([](const auto &v) { return strategy_to_json(v); }, s);
}

SliceFamily parse_slices(std::string_view text) {
    const json doc = parse_document(text);
    const std::int64_t n = get_int(field(doc, "", "n"), "n");
    if (n < 1 || n > kMaxGameQubits) fail("n", "out of range");
    const std::int64_t dbc = get_int(field(doc, "", "dim_bc"), "dim_bc");
    if (dbc < 1 || dbc > 4096) fail("dim_bc", "must be in [1, 4096]");
    const json &arr = field(doc, "", "slices");
    const std::size_t count = std::size_t{1} << n;
    if (!arr.is_array() || arr.size() != count) {
        fail("slices", "expected " + std::to_string(count) + " slice vectors");
    }
    std::vector<StateVector> slices;
    slices.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        slices.emplace_back(get_vector(arr[i], index_path("slices", i), static_cast<std::size_t>(dbc)));
    }
    try {
        return SliceFamily(static_cast<int>(n), static_cast<std::size_t>(dbc), std::move(slices));
    } catch (const ContractError &e) {
        fail("slices", e.what());
    }
}

SliceFamily load_slices(const std::string &path) { return parse_slices(read_file(path)); }

std::string slices_to_json(const SliceFamily &slices) {
    json doc;
    doc["n"] = slices.n();
    doc["dim_bc"] = slices.dim_bc();
    json arr = json::array();
    for (const StateVector &v : slices.vectors()) arr.push_back(vector_json(v.amplitudes()));
    doc["slices"] = std::move(arr);
    return doc.dump(1);
}

}  // namespace moegame
