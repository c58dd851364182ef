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


// Brute-force reference implementations. Nothing here calls the library algorithms
// being checked; only the plain value types are shared.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// rho[i][j] = sum_k psi(i,k) conj(psi(j,k)), explicit index loops. Joint index is (b << n_a) | a.
inline Mat partial_trace(const Vec &psi, int n_b, int n_a, bool keep_b) {
    int db = 1 << n_b;
    int da = 1 << n_a;
    int d = keep_b ? db : da;
    Mat rho = Mat::Zero(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            C acc = 0;
            int other = keep_b ? da : db;
            for (int k = 0; k < other; k++) {
                int ii = keep_b ? (i << n_a) | k : (k << n_a) | i;
                int jj = keep_b ? (j << n_a) | k : (k << n_a) | j;
                acc += psi[ii] * std::conj(psi[jj]);
            }
            rho(i, j) = acc;
        }
    }
    return rho;
}

inline int dot2(std::uint32_t mask, std::uint32_t v) {
    int p = 0;
    for (std::uint32_t x = mask & v; x; x >>= 1) {
        p ^= static_cast<int>(x & 1u);
    }
    return p;
}

/// Span of a vector list as an explicit set, by closing under xor.
inline std::set<std::uint32_t> span_set(const std::vector<std::uint32_t> &vs) {
    std::set<std::uint32_t> s{0};
    for (auto v : vs) {
        std::set<std::uint32_t> next = s;
        for (auto x : s) {
            next.insert(x ^ v);
        }
        s = next;
    }
    return s;
}

/// All rank-r subspaces of GF(2)^width, found by spanning every r-subset of nonzero vectors.
inline std::set<std::set<std::uint32_t>> subspaces(int width, int r) {
    std::set<std::set<std::uint32_t>> out;
    std::uint32_t top = 1u << width;
    std::vector<std::uint32_t> pick;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
        if (static_cast<int>(pick.size()) == r) {
            auto s = span_set(pick);
            if (s.size() == (1u << r)) {
                out.insert(s);
            }
            return;
        }
        for (std::uint32_t v = from; v < top; v++) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(1);
    return out;
}

/// Pairs (S, T) of subspaces with dims r and width - r meeting only in 0.
inline std::size_t complementary_pairs(int width, int r) {
    auto lo = subspaces(width, r);
    auto hi = subspaces(width, width - r);
    std::size_t count = 0;
    for (const auto &s : lo) {
        for (const auto &t : hi) {
            std::vector<std::uint32_t> both;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(both));
            if (both.size() == 1) {
                count++;
            }
        }
    }
    return count;
}

/// Plain minimax over candidate index lists, no memo, no pruning.
inline int minimax(const std::vector<std::vector<int>> &answer, const std::vector<int> &solution,
                   const std::vector<int> &cands) {
    bool constant = true;
    for (int c : cands) {
        constant = constant && solution[c] == solution[cands.front()];
    }
    if (constant) {
        return 0;
    }
    int best = 1 << 20;
    std::size_t queries = answer.front().size();
    for (std::size_t q = 0; q < queries; q++) {
        std::map<int, std::vector<int>> parts;
        for (int c : cands) {
            parts[answer[c][q]].push_back(c);
        }
        if (parts.size() < 2) {
            continue;
        }
        int worst = 0;
        for (const auto &[v, part] : parts) {
            worst = std::max(worst, minimax(answer, solution, part));
        }
        best = std::min(best, 1 + worst);
    }
    return best;
}

/// sin^2((2J+1) theta), theta = asin(1/sqrt N).
inline double grover_success(double N, int J) {
    double theta = std::asin(1.0 / std::sqrt(N));
    return std::pow(std::sin((2 * J + 1) * theta), 2);
}

/// Standard Grover iterate as explicit dense matrices: (2|s><s| - I)(I - 2|b><b|).
inline Vec grover_dense(int n, std::uint32_t target, int J) {
    int N = 1 << n;
    Vec s = Vec::Constant(N, 1.0 / std::sqrt(static_cast<double>(N)));
    Mat oracle_m = Mat::Identity(N, N);
    oracle_m(target, target) = -1;
    Mat diff = 2.0 * s * s.adjoint() - Mat::Identity(N, N);
    Vec x = s;
    for (int j = 0; j < J; j++) {
        x = diff * (oracle_m * x);
    }
    return x;
}

/// Amplitude of |x>|y> = sum over labels with B-parity x and A-parity y.
inline Vec xor_decode_buckets(const Vec &psi) {
    Vec out = Vec::Zero(4);
    for (int b = 0; b < 4; b++) {
        for (int a = 0; a < 4; a++) {
            int x = ((b >> 1) ^ b) & 1;
            int y = ((a >> 1) ^ a) & 1;
            out[(x << 1) | y] += psi[(b << 2) | a];
        }
    }
    return out;
}

inline Vec random_vector(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vec v(dim);
    for (int i = 0; i < dim; i++) {
        v[i] = C(g(rng), g(rng));
    }
    return v;
}

}  // namespace oracle
