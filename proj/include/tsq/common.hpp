// Copyright 2026 The tsq Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsq {

/// Raised when caller-supplied parameters violate an operation's precondition.
/// The CLI maps it to exit code 2.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical invariant (unitarity, correlation, an identity
/// that must hold to tolerance) is found violated. The CLI maps it to exit code 3.
class InvariantError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw PreconditionError(message);
    }
}

/// Parses an MSB-first bitstring such as "01" into its integer value.
inline std::uint32_t parse_bits(const std::string &text, int width) {
    require(static_cast<int>(text.size()) == width,
            "bitstring '" + text + "' has length " + std::to_string(text.size()) + ", expected " +
                std::to_string(width));
    std::uint32_t value = 0;
    for (char c : text) {
        require(c == '0' || c == '1', "bitstring '" + text + "' contains a non-binary character");
        value = (value << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return value;
}

inline std::string format_bits(std::uint32_t value, int width) {
    std::string out(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; i++) {
        if ((value >> (width - 1 - i)) & 1u) {
            out[static_cast<size_t>(i)] = '1';
        }
    }
    return out;
}

inline int parity(std::uint32_t value) {
    return __builtin_popcount(value) & 1;
}

}  // namespace tsq
