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

#include "moegame/bits.h"

#include "moegame/errors.h"

namespace moegame {

namespace {

std::uint64_t low_mask(int n) { return n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)); }

void require_same_length(const BitString &a, const BitString &b) {
    if (a.size() != b.size()) {
        throw ContractError("bit strings have different lengths: " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
    }
}

}  // namespace

BitString::BitString(int n, std::uint64_t mask) : n_(n), mask_(mask) {
    if (n < 0 || n > kMaxBits) {
        throw SizeError("bit string length " + std::to_string(n) + " outside [0, " +
                        std::to_string(kMaxBits) + "]");
    }
    if ((mask & ~low_mask(n)) != 0) {
        throw ContractError("bit mask has bits set beyond length " + std::to_string(n));
    }
}

BitString BitString::ones(int n) { return BitString(n, low_mask(n)); }

BitString BitString::parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(kMaxBits)) {
        throw InputError("bit string too long: " + std::string(text));
    }
    std::uint64_t mask = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw InputError("invalid bit string '" + std::string(text) + "'");
        }
        mask = (mask << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return BitString(static_cast<int>(text.size()), mask);
}

BitString BitString::flipped() const { return BitString(n_, ~mask_ & low_mask(n_)); }

std::uint64_t BitString::little_endian_value() const {
    std::uint64_t v = 0;
    for (int i = 0; i < n_; ++i) {
        v |= static_cast<std::uint64_t>(bit(i)) << i;
    }
    return v;
}

BitString BitString::from_little_endian(int n, std::uint64_t value) {
    if (n < 0 || n > kMaxBits || (value & ~low_mask(n)) != 0) {
        throw ContractError("little-endian value out of range for length " + std::to_string(n));
    }
    std::uint64_t mask = 0;
    for (int i = 0; i < n; ++i) {
        mask |= ((value >> i) & 1u) << (n - 1 - i);
    }
    return BitString(n, mask);
}

std::string BitString::str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
        if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

BitString operator^(const BitString &a, const BitString &b) {
    require_same_length(a, b);
    return BitString(a.n_, a.mask_ ^ b.mask_);
}

BitString operator&(const BitString &a, const BitString &b) {
    require_same_length(a, b);
    return BitString(a.n_, a.mask_ & b.mask_);
}

int dot(const BitString &a, const BitString &b) {
    require_same_length(a, b);
    return parity64(a.mask() & b.mask());
}

}  // namespace moegame
