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

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace moegame {

/// Maximum length of a BitString.
inline constexpr int kMaxBits = 30;

/// Parity (mod-2 popcount) of a machine word.
inline int parity64(std::uint64_t w) { return std::popcount(w) & 1; }

/// Fixed-length bit string x_1 x_2 ... x_n.
///
/// Ordering convention used everywhere in the library: x_1 (the first
/// character of the textual form, and the leftmost tensor factor) is the most
/// significant bit of mask(), so that mask() is directly the amplitude index
/// of the computational basis state |x_1 ... x_n>.
class BitString {
  public:
    BitString() = default;
    BitString(int n, std::uint64_t mask);

    static BitString zeros(int n) { return BitString(n, 0); }
    static BitString ones(int n);
    /// Parses "0110"; throws InputError on other characters.
    static BitString parse(std::string_view text);

    int size() const { return n_; }
    std::uint64_t mask() const { return mask_; }

    /// Bit x_{i+1} (zero-based position i, i.e. qubit i+1).
    int bit(int i) const { return static_cast<int>((mask_ >> (n_ - 1 - i)) & 1u); }
    int weight() const { return std::popcount(mask_); }
    BitString flipped() const;

    /// Integer value when x_1 is taken as the least significant bit.
    std::uint64_t little_endian_value() const;
    static BitString from_little_endian(int n, std::uint64_t value);

    std::string str() const;

    friend bool operator==(const BitString &, const BitString &) = default;
    friend BitString operator^(const BitString &a, const BitString &b);
    friend BitString operator&(const BitString &a, const BitString &b);

  private:
    int n_ = 0;
    std::uint64_t mask_ = 0;
};

/// Inner product a.b mod 2.
int dot(const BitString &a, const BitString &b);

}  // namespace moegame
