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

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "tsq/common.hpp"

// Bit-vector linear algebra over GF(2). Vectors are register-width masks.
namespace tsq::gf2 {

using Basis = std::vector<std::uint32_t>;

inline int leading_bit(std::uint32_t v) {
    return v == 0 ? -1 : 31 - __builtin_clz(v);
}

/// Reduced row echelon form, sorted ascending. Zero and dependent vectors are dropped.
inline Basis reduce(std::span<const std::uint32_t> vectors) {
    Basis rows;
    for (std::uint32_t v : vectors) {
        for (std::uint32_t r : rows) {
            if ((v >> leading_bit(r)) & 1u) {
                v ^= r;
            }
        }
        if (v == 0) {
            continue;
        }
        int lead = leading_bit(v);
        for (auto &r : rows) {
            if ((r >> lead) & 1u) {
                r ^= v;
            }
        }
        rows.push_back(v);
        // Keep rows ordered by pivot so elimination above stays valid.
        std::sort(rows.begin(), rows.end(), [](std::uint32_t x, std::uint32_t y) {
            return leading_bit(x) > leading_bit(y);
        });
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

inline int rank(std::span<const std::uint32_t> vectors) {
    return static_cast<int>(reduce(vectors).size());
}

inline bool independent(std::span<const std::uint32_t> vectors) {
    return rank(vectors) == static_cast<int>(vectors.size());
}

inline bool in_span(std::uint32_t v, std::span<const std::uint32_t> vectors) {
    Basis all(vectors.begin(), vectors.end());
    int before = rank(all);
    all.push_back(v);
    return rank(all) == before;
}

/// Every element of the span, including zero.
inline std::vector<std::uint32_t> span_of(std::span<const std::uint32_t> vectors) {
    std::vector<std::uint32_t> out{0};
    for (std::uint32_t v : reduce(vectors)) {
        size_t size = out.size();
        for (size_t i = 0; i < size; i++) {
            out.push_back(out[i] ^ v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All rank-r subspaces of GF(2)^width as canonical bases, in lexicographic order.
inline std::vector<Basis> enumerate_subspaces(int width, int r) {
    require(width >= 0 && width <= 30 && r >= 0 && r <= width, "subspace rank out of range");
    std::vector<Basis> out;
    std::vector<int> pivots;
    // Pivot sets are chosen from high bit to low; free entries of each row sit in
    // the non-pivot positions below its pivot.
    auto fill_rows = [&](auto &&self, size_t row, Basis &rows) -> void {
        if (row == pivots.size()) {
            Basis sorted = rows;
            std::sort(sorted.begin(), sorted.end());
            out.push_back(std::move(sorted));
            return;
        }
        int p = pivots[row];
        std::vector<int> free_positions;
        for (int bit = p - 1; bit >= 0; bit--) {
            if (std::find(pivots.begin(), pivots.end(), bit) == pivots.end()) {
                free_positions.push_back(bit);
            }
        }
        std::uint32_t combos = 1u << free_positions.size();
        for (std::uint32_t c = 0; c < combos; c++) {
            std::uint32_t v = 1u << p;
            for (size_t i = 0; i < free_positions.size(); i++) {
                if ((c >> i) & 1u) {
                    v |= 1u << free_positions[i];
                }
            }
            rows.push_back(v);
            self(self, row + 1, rows);
            rows.pop_back();
        }
    };
    auto choose_pivots = [&](auto &&self, int next_bit) -> void {
        if (static_cast<int>(pivots.size()) == r) {
            Basis rows;
            fill_rows(fill_rows, 0, rows);
            return;
        }
        for (int bit = next_bit; bit >= 0; bit--) {
            pivots.push_back(bit);
            self(self, bit - 1);
            pivots.pop_back();
        }
    };
    choose_pivots(choose_pivots, width - 1);
    std::sort(out.begin(), out.end());
    return out;
}

/// Parity bits of `value` under each mask, packed with the first mask most significant.
inline std::uint32_t syndrome(std::uint32_t value, std::span<const std::uint32_t> masks) {
    std::uint32_t out = 0;
    for (std::uint32_t m : masks) {
        out = (out << 1) | static_cast<std::uint32_t>(parity(value & m));
    }
    return out;
}

}  // namespace tsq::gf2
