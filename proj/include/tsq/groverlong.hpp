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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tsq/qcore.hpp"

namespace tsq {

/// Kronecker-delta oracle over N = 2^n drawers with the ball in `target`.
struct SearchOracle {
    int n = 1;
    std::uint32_t target = 0;

    static SearchOracle make(int n, std::uint32_t target) {
        require(n >= 1 && n <= 16, "search register must have 1..16 bits");
        require((std::size_t{1} << n) <= dimension_cap(), "search register exceeds the dimension cap");
        require(target < (1u << n), "target out of range");
        return {n, target};
    }
    std::size_t size() const {
        return std::size_t{1} << n;
    }
};

enum class SearchVariant { Grover, Long };

inline const char *variant_name(SearchVariant v) {
    return v == SearchVariant::Grover ? "grover" : "long";
}

/// Selective phases: `oracle` multiplies the target, `diffusion` the uniform state.
/// pi/pi is the standard Grover iteration.
struct PhasePair {
    double oracle = std::numbers::pi;
    double diffusion = std::numbers::pi;
};

inline Vector uniform_ket(int n) {
    auto size = static_cast<Eigen::Index>(std::size_t{1} << n);
    return Vector::Constant(size, Complex(1.0 / std::sqrt(static_cast<double>(size)), 0.0));
}

/// One query followed by the generalized inversion about the average,
/// G = -(I - (1 - e^{i beta})|s><s|) (I - (1 - e^{i alpha})|b><b|).
inline Vector grover_iterate(const Vector &state, const SearchOracle &oracle, PhasePair phases) {
    require(static_cast<std::size_t>(state.size()) == oracle.size(), "state size does not match the oracle");
    Vector out = state;
    auto t = static_cast<Eigen::Index>(oracle.target);
    out[t] *= std::polar(1.0, phases.oracle);
    double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(oracle.size()));
    Complex overlap = out.sum() * inv_sqrt_n;
    Complex coeff = (1.0 - std::polar(1.0, phases.diffusion)) * overlap * inv_sqrt_n;
    out = -(out.array() - coeff).matrix();
    return out;
}

struct SearchRun {
    SearchOracle oracle;
    SearchVariant variant = SearchVariant::Grover;
    int iterations = 0;
    /// Phase used for both selective rotations; pi for standard Grover.
    double phase = std::numbers::pi;
    Vector final_state;
    double success_probability = 0.0;
    int query_count = 0;
};

inline double success_of(const Vector &state, std::uint32_t target) {
    return std::norm(state[static_cast<Eigen::Index>(target)]) / state.squaredNorm();
}

/// Norm of everything off the target, computed directly rather than as 1 - success.
inline double miss_amplitude(const Vector &state, std::uint32_t target) {
    Vector rest = state;
    rest[static_cast<Eigen::Index>(target)] = 0.0;
    return rest.norm() / state.norm();
}

inline Vector run_iterations(const SearchOracle &oracle, int iterations, double phase) {
    Vector state = uniform_ket(oracle.n);
    for (int j = 0; j < iterations; j++) {
        state = grover_iterate(state, oracle, {phase, phase});
    }
    return state;
}

/// Angle with sin(theta) = 1/sqrt(N).
inline double search_angle(std::size_t size) {
    return std::asin(1.0 / std::sqrt(static_cast<double>(size)));
}

/// floor(pi / (4 theta)).
inline int grover_iterations(std::size_t size) {
    return std::max(1, static_cast<int>(std::floor(std::numbers::pi / (4.0 * search_angle(size)))));
}

/// Smallest J with (2J + 1) theta >= pi / 2, the count Long's phase matching needs.
inline int long_iterations(std::size_t size) {
    double theta = search_angle(size);
    double real_count = std::numbers::pi / (4.0 * theta) - 0.5;
    return std::max(1, static_cast<int>(std::ceil(real_count - 1e-12)));
}

/// Phase-matching angle: sin(phi / 2) = sin(pi / (4J + 2)) / sin(theta).
inline double long_phase(std::size_t size, int iterations) {
    double theta = search_angle(size);
    double ratio = std::sin(std::numbers::pi / (4.0 * iterations + 2.0)) / std::sin(theta);
    require(ratio <= 1.0 + 1e-12, "too few iterations for a zero-failure search");
    if (ratio >= 1.0 - 1e-14) {
        return std::numbers::pi;
    }
    return 2.0 * std::asin(ratio);
}

inline SearchRun run_grover(const SearchOracle &oracle, std::optional<int> iterations = std::nullopt) {
    int j = iterations.value_or(grover_iterations(oracle.size()));
    require(j >= 1, "iteration count must be >= 1");
    Vector state = run_iterations(oracle, j, std::numbers::pi);
    double p = success_of(state, oracle.target);
    return SearchRun{oracle, SearchVariant::Grover, j, std::numbers::pi, std::move(state), p, j};
}

/// Zero-failure search: closed-form phase, then a golden-section polish of the miss amplitude.
inline SearchRun run_long(const SearchOracle &oracle) {
    int j = long_iterations(oracle.size());
    double phase = long_phase(oracle.size(), j);
    auto miss = [&](double phi) { return miss_amplitude(run_iterations(oracle, j, phi), oracle.target); };
    double best = miss(phase);
    if (best > 1e-13) {
        double lo = std::max(0.0, phase - 1e-3);
        double hi = std::min(std::numbers::pi, phase + 1e-3);
        const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - golden * (hi - lo);
        double x2 = lo + golden * (hi - lo);
        double f1 = miss(x1);
        double f2 = miss(x2);
        for (int it = 0; it < 80; it++) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = miss(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = miss(x2);
            }
        }
        double candidate = f1 < f2 ? x1 : x2;
        if (miss(candidate) < best) {
            phase = candidate;
        }
    }
    Vector state = run_iterations(oracle, j, phase);
    double p = success_of(state, oracle.target);
    return SearchRun{oracle, SearchVariant::Long, j, phase, std::move(state), p, j};
}

/// Walsh-Hadamard transform on n qubits.
inline Matrix hadamard_matrix(int n) {
    auto size = static_cast<Eigen::Index>(std::size_t{1} << n);
    double scale = 1.0 / std::sqrt(static_cast<double>(size));
    Matrix h(size, size);
    for (Eigen::Index r = 0; r < size; r++) {
        for (Eigen::Index c = 0; c < size; c++) {
            h(r, c) = (parity(static_cast<std::uint32_t>(r & c)) ? -scale : scale);
        }
    }
    return h;
}

/// The Long network for a fixed target as a matrix on the search register:
/// Hadamard layer followed by J phase-matched iterations.
inline Matrix long_network_matrix(const SearchOracle &oracle, const SearchRun &run) {
    auto size = static_cast<Eigen::Index>(oracle.size());
    Matrix g = Matrix::Identity(size, size);
    for (Eigen::Index c = 0; c < size; c++) {
        Vector col = g.col(c);
        for (int j = 0; j < run.iterations; j++) {
            col = grover_iterate(col, oracle, {run.phase, run.phase});
        }
        g.col(c) = col;
    }
    return g * hadamard_matrix(oracle.n);
}

/// Lifts the family of Long networks to the joint space: for each setting b the
/// b-targeted network acts on register A.
inline UnitaryOp as_process_unitary(int n) {
    auto layout = RegisterLayout::symmetric(n);
    auto dim = static_cast<Eigen::Index>(layout.dimension());
    auto block = static_cast<Eigen::Index>(layout.register_dimension(Register::A));
    Matrix m = Matrix::Zero(dim, dim);
    for (std::uint32_t b = 0; b < (1u << n); b++) {
        auto oracle = SearchOracle::make(n, b);
        SearchRun run = run_long(oracle);
        if (run.success_probability < 1.0 - 1e-9) {
            throw InvariantError("Long network for target " + format_bits(b, n) + " is not certain");
        }
        m.block(b * block, b * block, block, block) = long_network_matrix(oracle, run);
    }
    return UnitaryOp(layout, std::move(m));
}

}  // namespace tsq
