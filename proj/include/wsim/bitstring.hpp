// Copyright 2026 The wsim Authors
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
#include <complex>
#include <cstdint>
#include <string>

#include "wsim/errors.hpp"

namespace wsim {

using Amplitude = std::complex<double>;

/// Largest register the packed representation supports.
inline constexpr int kMaxQubits = 64;

/// Fixed-width bit string indexing the computational basis.
///
/// Qubit 0 is the most significant bit of the packed word, so the packed
/// word read as an unsigned integer equals the dense state-vector index and
/// the QFT integer int(x) = sum_j x_j 2^{n-j} (first qubit most significant).
class BitString {
   public:
    BitString() = default;
    BitString(int width, std::uint64_t word) : word_(word), width_(width) {
        require(width >= 1 && width <= kMaxQubits, ErrorKind::Domain,
                "BitString width must lie in [1, 64], got " + std::to_string(width));
        word_ &= mask(width);
    }

    static BitString zeros(int width) { return BitString(width, 0); }
    static BitString ones(int width) { return BitString(width, mask(width)); }
    /// Parses a string of '0'/'1' characters, qubit 0 first.
    static BitString parse(const std::string &text);

    int width() const noexcept { return width_; }
    std::uint64_t word() const noexcept { return word_; }

    bool bit(int qubit) const noexcept { return (word_ >> shift(qubit)) & 1u; }
    BitString with_bit(int qubit, bool value) const {
        std::uint64_t m = std::uint64_t{1} << shift(qubit);
        return BitString(width_, value ? (word_ | m) : (word_ & ~m));
    }
    BitString flipped(int qubit) const {
        return BitString(width_, word_ ^ (std::uint64_t{1} << shift(qubit)));
    }
    int popcount() const noexcept { return std::popcount(word_); }

    /// Mask with only `qubit` set, in packed-word coordinates.
    std::uint64_t qubit_mask(int qubit) const noexcept { return std::uint64_t{1} << shift(qubit); }

    BitString operator^(const BitString &other) const {
        require(width_ == other.width_, ErrorKind::WidthMismatch, "XOR of BitStrings of different width");
        return BitString(width_, word_ ^ other.word_);
    }
    bool operator==(const BitString &other) const = default;
    auto operator<=>(const BitString &other) const = default;

    /// Concatenation: `*this` occupies the leading (most significant) qubits.
    BitString concat(const BitString &tail) const {
        require(width_ + tail.width_ <= kMaxQubits, ErrorKind::Domain, "concatenated width exceeds 64");
        return BitString(width_ + tail.width_, (word_ << tail.width_) | tail.word_);
    }
    /// Sub-string of `count` qubits starting at `first`.
    BitString slice(int first, int count) const {
        return BitString(count, word_ >> (width_ - first - count));
    }

    std::string to_string() const;

    static constexpr std::uint64_t mask(int width) noexcept {
        return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
    }

   private:
    int shift(int qubit) const noexcept { return width_ - 1 - qubit; }

    std::uint64_t word_ = 0;
    int width_ = 1;
};

inline int parity(std::uint64_t word) noexcept { return std::popcount(word) & 1; }

}  // namespace wsim
