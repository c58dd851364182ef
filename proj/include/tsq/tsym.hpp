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
#include <string>
#include <vector>

#include "tsq/gf2.hpp"
#include "tsq/process.hpp"

namespace tsq {

/// How the selection of the outcome pair is shared: the initial measurement of B
/// reduces to `initial_part`, the final measurement of A to `final_part`.
struct SelectionSplit {
    ParityObservable initial_part;
    ParityObservable final_part;

    /// "B:[10]/A:[01]".
    std::string name() const {
        return initial_part.spec() + "/" + final_part.spec();
    }
    bool is_even() const {
        int n = initial_part.width();
        int r = initial_part.rank();
        return r == n / 2 || r == (n + 1) / 2;
    }
    bool operator==(const SelectionSplit &) const = default;
};

/// True iff the initial parities of b together with the final parities of s(b)
/// identify b uniquely for every setting.
inline bool non_redundant(const ProcessDescription &process, const ParityObservable &initial_part,
                          const ParityObservable &final_part) {
    std::vector<bool> seen(std::size_t{1} << (initial_part.rank() + final_part.rank()), false);
    for (std::uint32_t b = 0; b < process.setting_count(); b++) {
        std::uint32_t key = (initial_part.syndrome(b) << final_part.rank()) | final_part.syndrome(process.solution(b));
        if (seen[key]) {
            return false;
        }
        seen[key] = true;
    }
    return true;
}

inline SelectionSplit make_split(const ProcessDescription &process, ParityObservable initial_part,
                                 ParityObservable final_part) {
    int n = process.n();
    require(initial_part.reg() == Register::B && final_part.reg() == Register::A,
            "a split pairs a B observable (initial) with an A observable (final)");
    require(initial_part.width() == n && final_part.width() == n, "split observables must span the full registers");
    require(initial_part.rank() + final_part.rank() == n, "split ranks must add up to the register size");
    require(non_redundant(process, initial_part, final_part),
            "split " + initial_part.spec() + "/" + final_part.spec() + " is redundant");
    return SelectionSplit{std::move(initial_part), std::move(final_part)};
}

/// Pairs a final part with the first complementary initial part in canonical order.
inline SelectionSplit complete_split(const ProcessDescription &process, const ParityObservable &final_part) {
    int n = process.n();
    require(final_part.reg() == Register::A && final_part.width() == n, "final part must observe register A");
    for (auto &basis : gf2::enumerate_subspaces(n, n - final_part.rank())) {
        ParityObservable initial(Register::B, n, basis);
        if (non_redundant(process, initial, final_part)) {
            return SelectionSplit{std::move(initial), final_part};
        }
    }
    throw PreconditionError("no complementary initial part exists for " + final_part.spec());
}

/// Initial-part rank of the even split: ceil(n/2), or floor(n/2) when swapped.
inline int even_initial_rank(int n, bool swap = false) {
    return swap ? n / 2 : (n + 1) / 2;
}

enum class SplitFamily {
    /// One split per distinct final part, completed canonically. Solver instances
    /// depend on the final part only, so these are the distinct instances.
    DistinctFinal,
    /// Every complementary, non-redundant (initial, final) pair.
    AllPairs,
};

/// Splits whose initial part has rank `initial_rank`, ordered by final then initial masks.
inline std::vector<SelectionSplit> enumerate_splits(const ProcessDescription &process, int initial_rank,
                                                    SplitFamily family = SplitFamily::DistinctFinal) {
    int n = process.n();
    require(initial_rank >= 0 && initial_rank <= n, "split rank out of range");
    std::vector<SelectionSplit> out;
    auto initial_bases = gf2::enumerate_subspaces(n, initial_rank);
    for (auto &final_basis : gf2::enumerate_subspaces(n, n - initial_rank)) {
        ParityObservable final_part(Register::A, n, final_basis);
        for (auto &initial_basis : initial_bases) {
            ParityObservable initial_part(Register::B, n, initial_basis);
            if (!non_redundant(process, initial_part, final_part)) {
                continue;
            }
            out.push_back(SelectionSplit{initial_part, final_part});
            if (family == SplitFamily::DistinctFinal) {
                break;
            }
        }
    }
    return out;
}

enum class Perspective { External, Solver };

inline const char *perspective_name(Perspective p) {
    return p == Perspective::External ? "external" : "solver";
}

struct TrajectoryStep {
    std::string label;
    TimeTag time;
    StateVector state;
};

/// One time-symmetrization instance: the zigzag trajectory and its bottom line.
struct ZigzagInstance {
    SelectionSplit split;
    std::uint32_t setting;
    std::uint32_t solution;
    Perspective perspective;
    std::vector<TrajectoryStep> trajectory;
    StateVector bottom_in;
    StateVector bottom_out;
    StateVector process_initial;

    /// "B:[10]/A:[01]@01".
    std::string name() const {
        return split.name() + "@" + format_bits(setting, split.initial_part.width());
    }

    /// Settings carrying amplitude in the bottom-line input, ascending.
    std::vector<std::uint32_t> bottom_branches(double rel_tol = 1e-12) const {
        const auto &layout = bottom_in.layout();
        std::vector<double> mass(layout.register_dimension(Register::B), 0.0);
        for (size_t i = 0; i < bottom_in.dimension(); i++) {
            mass[label_of(layout, i).b] += std::norm(bottom_in[i]);
        }
        double total = bottom_in.norm_squared();
        std::vector<std::uint32_t> out;
        for (std::uint32_t b = 0; b < mass.size(); b++) {
            if (mass[b] > rel_tol * total) {
                out.push_back(b);
            }
        }
        return out;
    }
};

namespace detail {

inline void check_instance_args(const ProcessDescription &process, std::uint32_t b, const SelectionSplit &split) {
    require(b < process.setting_count(), "setting out of range");
    require(split.initial_part.width() == process.n() && split.final_part.width() == process.n(),
            "split does not match the process registers");
}

inline StateVector nonzero_or_throw(StateVector s, const std::string &what) {
    if (s.is_zero()) {
        throw PreconditionError("inconsistent split/outcome: zero state after " + what);
    }
    return s;
}

}  // namespace detail

/// Zigzag for an observer who sees the initial selection: project by the initial part,
/// evolve, project by the final part, propagate back.
inline ZigzagInstance external_instance(const ProcessDescription &process, std::uint32_t b,
                                        const SelectionSplit &split) {
    detail::check_instance_args(process, b, split);
    const auto &layout = process.layout();
    std::uint32_t s = process.solution(b);
    auto init_outcome = ParityOutcome::of(split.initial_part, b);
    auto final_outcome = ParityOutcome::of(split.final_part, s);

    StateVector s0 = process.initial_state();
    StateVector s1 = detail::nonzero_or_throw(projector(init_outcome, layout).apply(s0),
                                              "initial projection " + split.initial_part.spec());
    StateVector s2 = apply(process.u12(), s1);
    StateVector s3 = detail::nonzero_or_throw(projector(final_outcome, layout).apply(s2),
                                              "final projection " + split.final_part.spec());
    StateVector s4 = apply_adjoint(process.u12(), s3);

    StateVector full_selection = projector(ParityOutcome::of(process.initial_obs(), b), layout).apply(s0);
    double scale = std::max(1.0, full_selection.norm());
    if (max_abs_diff(s4, full_selection) > 1e-9 * scale) {
        throw InvariantError("external bottom line differs from the full selection of setting " +
                             format_bits(b, layout.n_b));
    }
    std::string ib = init_outcome.bits_string();
    std::string fb = final_outcome.bits_string();
    std::vector<TrajectoryStep> trajectory{
        {"initial state", TimeTag::t1, s0},
        {"after " + split.initial_part.spec() + "=" + ib, TimeTag::t1, s1},
        {"forward U12", TimeTag::t2, s2},
        {"after " + split.final_part.spec() + "=" + fb, TimeTag::t2, s3},
        {"backward U12^dag", TimeTag::t1, s4},
    };
    return ZigzagInstance{split, b, s, Perspective::External, std::move(trajectory), s4, s3, s0};
}

/// Zigzag relativized to the solver: the initial projection is postponed past U12,
/// so only the final part's selection propagates back.
inline ZigzagInstance solver_instance(const ProcessDescription &process, std::uint32_t b,
                                      const SelectionSplit &split) {
    detail::check_instance_args(process, b, split);
    const auto &layout = process.layout();
    std::uint32_t s = process.solution(b);
    auto final_outcome = ParityOutcome::of(split.final_part, s);

    StateVector s0 = process.initial_state();
    StateVector s1 = apply(process.u12(), s0);
    StateVector s2 = detail::nonzero_or_throw(projector(final_outcome, layout).apply(s1),
                                              "final projection " + split.final_part.spec());
    StateVector s3 = apply_adjoint(process.u12(), s2);
    if (s3.is_zero()) {
        throw PreconditionError("inconsistent split/outcome: empty bottom line");
    }
    std::vector<TrajectoryStep> trajectory{
        {"initial state", TimeTag::t1, s0},
        {"forward U12", TimeTag::t2, s1},
        {"after " + split.final_part.spec() + "=" + final_outcome.bits_string(), TimeTag::t2, s2},
        {"backward U12^dag", TimeTag::t1, s3},
    };
    return ZigzagInstance{split, b, s, Perspective::Solver, std::move(trajectory), s3, s2, s0};
}

/// Solver instance whose final part has an arbitrary rank: 0 gives no advance
/// knowledge, n gives all of it.
inline ZigzagInstance uneven_instance(const ProcessDescription &process, std::uint32_t b, int final_rank) {
    int n = process.n();
    require(final_rank >= 0 && final_rank <= n, "final rank out of range");
    auto bases = gf2::enumerate_subspaces(n, final_rank);
    SelectionSplit split = complete_split(process, ParityObservable(Register::A, n, bases.front()));
    return solver_instance(process, b, split);
}

struct RecoveryReport {
    StateVector sum;
    StateVector reference;
    /// c minimizing |sum - c * reference|.
    Complex constant;
    double deviation = 0.0;
    bool proportional = false;
};

/// Sums the instances' bottom-line inputs and compares with the process initial state.
inline RecoveryReport recover_superposition(const std::vector<ZigzagInstance> &instances,
                                            double tol = kOperatorTol) {
    require(!instances.empty(), "no instances to superpose");
    const auto &first = instances.front();
    StateVector sum(first.bottom_in.layout());
    for (const auto &inst : instances) {
        require(inst.perspective == first.perspective, "instances mix perspectives");
        require(inst.process_initial.layout() == first.process_initial.layout() &&
                    max_abs_diff(inst.process_initial, first.process_initial) == 0.0,
                "instances come from different processes");
        sum = sum + inst.bottom_in;
    }
    const StateVector &ref = first.process_initial;
    Complex c = ref.amplitudes().dot(sum.amplitudes()) / ref.norm_squared();
    double deviation = max_abs_diff(sum, ref * c);
    bool proportional = deviation <= tol && std::abs(c) > tol;
    return RecoveryReport{sum, ref, c, deviation, proportional};
}

}  // namespace tsq
