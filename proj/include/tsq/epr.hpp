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
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tsq/measure.hpp"
#include "tsq/tsym.hpp"

namespace tsq {

/// |00>|00> + |01>|01> + |10>|10> + |11>|11>: the one-bit correlated pair written on
/// two-bit registers so its selection can be split evenly.
inline StateVector redundant_encode(RegisterLayout layout) {
    require(layout.n_b == 2 && layout.n_a == 2, "redundant encoding needs two-bit registers");
    std::vector<StateVector::Term> terms;
    for (std::uint32_t v = 0; v < 4; v++) {
        terms.push_back({v, v, 1.0});
    }
    return StateVector::from_terms(layout, terms);
}

/// Collapses each two-bit register to the XOR of its bits, summing amplitudes.
inline StateVector xor_decode(const StateVector &s) {
    require(s.layout().n_b == 2 && s.layout().n_a == 2, "xor_decode needs two-bit registers");
    auto out_layout = RegisterLayout::make(1, 1);
    Vector amps = Vector::Zero(4);
    for (size_t i = 0; i < s.dimension(); i++) {
        BasisLabel l = label_of(s.layout(), i);
        amps[static_cast<Eigen::Index>(index_of(out_layout, {static_cast<std::uint32_t>(parity(l.b)),
                                                             static_cast<std::uint32_t>(parity(l.a))}))] += s[i];
    }
    return StateVector(out_layout, std::move(amps));
}

/// Entangled state at t0 and the evolutions t0 -> t1 and t0 -> t2. The direct
/// evolution t1 -> t2 is derived as u02 * u01^dag.
class EprScenario {
   public:
    EprScenario(StateVector psi_t0, UnitaryOp u01, UnitaryOp u02)
        : psi_t0_(std::move(psi_t0)), u01_(std::move(u01)), u02_(std::move(u02)), u12_(u02_ * u01_.adjoint()) {
        require(psi_t0_.layout() == u01_.layout() && psi_t0_.layout() == u02_.layout(),
                "scenario state and unitaries have different layouts");
        require(!psi_t0_.is_zero(), "scenario state must be nonzero");
        if (factorization_deviation() > kOperatorTol) {
            throw InvariantError("u12 * u01 differs from u02");
        }
    }

    /// Redundantly encoded pair with separation acting on unmodeled degrees of freedom.
    static EprScenario standard() {
        auto layout = RegisterLayout::make(2, 2);
        return EprScenario(redundant_encode(layout), UnitaryOp::identity(layout), UnitaryOp::identity(layout));
    }

    /// Same state, Haar-random u01 and u02 drawn from `seed`.
    static EprScenario seeded(std::uint64_t seed) {
        auto layout = RegisterLayout::make(2, 2);
        std::mt19937_64 rng(seed);
        UnitaryOp u01 = random_unitary(layout, rng);
        UnitaryOp u02 = random_unitary(layout, rng);
        return EprScenario(redundant_encode(layout), std::move(u01), std::move(u02));
    }

    const RegisterLayout &layout() const {
        return psi_t0_.layout();
    }
    const StateVector &psi_t0() const {
        return psi_t0_;
    }
    const UnitaryOp &u01() const {
        return u01_;
    }
    const UnitaryOp &u02() const {
        return u02_;
    }
    const UnitaryOp &u12() const {
        return u12_;
    }
    StateVector state_t1() const {
        return apply(u01_, psi_t0_);
    }
    double factorization_deviation() const {
        return max_abs(u12_.matrix() * u01_.matrix() - u02_.matrix());
    }

   private:
    StateVector psi_t0_;
    UnitaryOp u01_;
    UnitaryOp u02_;
    UnitaryOp u12_;
};

enum class Direction { Forward, Backward };

struct MeasurementEvent {
    TimeTag time;
    std::string observable;
    std::string outcome;
    double probability = 0.0;
};

struct Leg {
    Direction direction;
    TimeTag from;
    TimeTag to;
    std::string op;
    StateVector in;
    StateVector out;
};

struct Snapshot {
    std::string label;
    TimeTag time;
    StateVector state;
};

struct CausalTrace {
    std::string kind;
    std::vector<MeasurementEvent> events;
    std::vector<Leg> legs;
    std::vector<Snapshot> states;
    /// States at t0 changed by a back-propagated measurement: one per causal loop.
    std::vector<Snapshot> t0_changes;
    /// Reduced density operators of B before and after the t1 measurement (costa only).
    std::vector<std::pair<std::string, DensityOperator>> densities;
    StateVector bottom_t1;
    StateVector bottom_t2;
};

namespace detail {

inline MeasurementEvent event_of(const MeasurementRecord &r) {
    return {r.time, r.outcome.observable.display_name(), r.outcome.bits_string(), r.probability};
}

/// Forces the sector with the largest Born weight; in the correlated scenario it is the only one.
inline MeasurementRecord measure_dominant(const StateVector &s, const ParityObservable &obs, TimeTag time) {
    auto weights = sector_weights(s, obs);
    std::uint32_t best = 0;
    for (std::uint32_t k = 1; k < weights.size(); k++) {
        if (weights[k] > weights[best]) {
            best = k;
        }
    }
    return measure(s, obs, ForcedOutcome{best}, time);
}

inline void check_outcome(const EprScenario &sc, std::uint32_t b) {
    require(b < sc.layout().register_dimension(Register::B), "outcome out of range");
}

}  // namespace detail

/// Ordinary description: nonlocal projection at t1, then the direct evolution to t2.
inline CausalTrace direct_trace(const EprScenario &sc, std::uint32_t b) {
    detail::check_outcome(sc, b);
    auto full_b = ParityObservable::full(Register::B, sc.layout().n_b);
    auto full_a = ParityObservable::full(Register::A, sc.layout().n_a);
    StateVector psi1 = sc.state_t1();
    MeasurementRecord mb = measure(psi1, full_b, ForcedOutcome{b}, TimeTag::t1);
    StateVector psi2 = apply(sc.u12(), mb.post_state);
    MeasurementRecord ma = detail::measure_dominant(psi2, full_a, TimeTag::t2);

    CausalTrace t{"direct", {}, {}, {}, {}, {}, mb.post_state, psi2};
    t.events = {detail::event_of(mb), detail::event_of(ma)};
    t.legs.push_back({Direction::Forward, TimeTag::t1, TimeTag::t2, "U12", mb.post_state, psi2});
    t.states = {{"t1 before B", TimeTag::t1, psi1},
                {"t1 after B", TimeTag::t1, mb.post_state},
                {"t2 before A", TimeTag::t2, psi2},
                {"t2 after A", TimeTag::t2, ma.post_state}};
    return t;
}

/// Local explanation with all selection at t1: the projected reduced density operator of
/// B goes back to t0 by u01^dag, projects the joint state there, then goes forward by u02.
inline CausalTrace costa_trace(const EprScenario &sc, std::uint32_t b) {
    detail::check_outcome(sc, b);
    const auto &layout = sc.layout();
    auto full_b = ParityObservable::full(Register::B, layout.n_b);
    auto full_a = ParityObservable::full(Register::A, layout.n_a);
    StateVector psi1 = sc.state_t1();
    MeasurementRecord mb = measure(psi1, full_b, ForcedOutcome{b}, TimeTag::t1);
    DensityOperator rho_before = reduced_density(psi1, Register::B);
    DensityOperator rho_after = reduced_density(mb.post_state, Register::B);

    // P(t0) = u01^dag (P_B x I) u01, applied locally to the t0 state.
    Matrix p_b = projector(mb.outcome, layout).matrix();
    Matrix p_t0 = sc.u01().matrix().adjoint() * p_b * sc.u01().matrix();
    StateVector changed_t0(layout, p_t0 * sc.psi_t0().amplitudes());
    StateVector back = apply_adjoint(sc.u01(), mb.post_state);
    if (max_abs_diff(changed_t0, back) > kStateTol) {
        throw InvariantError("back-propagated projector disagrees with the back-propagated state");
    }
    StateVector psi2 = apply(sc.u02(), changed_t0);
    MeasurementRecord ma = detail::measure_dominant(psi2, full_a, TimeTag::t2);

    CausalTrace t{"costa", {}, {}, {}, {}, {}, mb.post_state, psi2};
    t.events = {detail::event_of(mb), detail::event_of(ma)};
    t.legs.push_back({Direction::Backward, TimeTag::t1, TimeTag::t0, "U01^dag", mb.post_state, back});
    t.legs.push_back({Direction::Forward, TimeTag::t0, TimeTag::t2, "U02", changed_t0, psi2});
    t.states = {{"t1 before B", TimeTag::t1, psi1},
                {"t1 after B", TimeTag::t1, mb.post_state},
                {"t0 changed", TimeTag::t0, changed_t0},
                {"t2 before A", TimeTag::t2, psi2},
                {"t2 after A", TimeTag::t2, ma.post_state}};
    t.t0_changes.push_back({"after B at t1", TimeTag::t0, changed_t0});
    t.densities.emplace_back("rho_B before", rho_before);
    t.densities.emplace_back("rho_B after", rho_after);
    return t;
}

/// Which partial measurement acts first in the time-symmetrized trace.
enum class FirstMeasurement { B, A };

/// The three canonical rank-1 splits of the two-bit encoding.
inline std::vector<SelectionSplit> epr_splits() {
    return enumerate_splits(ProcessDescription::grover(2), 1);
}

/// Evenly shared selection with both selections travelling via t0: partial B measurement
/// at t1, forward via t0, partial A measurement at t2, backward via t0.
inline CausalTrace ts_trace(const EprScenario &sc, std::uint32_t outcome, const SelectionSplit &split,
                            FirstMeasurement first = FirstMeasurement::B) {
    detail::check_outcome(sc, outcome);
    const auto &layout = sc.layout();
    require(split.initial_part.width() == layout.n_b && split.final_part.width() == layout.n_a,
            "split does not match the scenario registers");
    require(split.initial_part.rank() + split.final_part.rank() == layout.n_b, "split ranks must be complementary");
    {
        std::vector<std::uint32_t> all = split.initial_part.masks();
        all.insert(all.end(), split.final_part.masks().begin(), split.final_part.masks().end());
        require(gf2::rank(all) == layout.n_b, "split " + split.name() + " is redundant");
    }
    const auto &u01 = sc.u01();
    const auto &u02 = sc.u02();
    ForcedOutcome init_bits{split.initial_part.syndrome(outcome)};
    ForcedOutcome final_bits{split.final_part.syndrome(outcome)};

    CausalTrace t{"ts", {}, {}, {}, {}, {}, StateVector(layout), StateVector(layout)};
    if (first == FirstMeasurement::B) {
        StateVector psi1 = sc.state_t1();
        MeasurementRecord mb = measure(psi1, split.initial_part, init_bits, TimeTag::t1);
        StateVector x0 = apply_adjoint(u01, mb.post_state);
        StateVector psi2 = apply(u02, x0);
        MeasurementRecord ma = measure(psi2, split.final_part, final_bits, TimeTag::t2);
        StateVector y0 = apply_adjoint(u02, ma.post_state);
        StateVector bottom1 = apply(u01, y0);
        t.events = {detail::event_of(mb), detail::event_of(ma)};
        t.legs = {{Direction::Backward, TimeTag::t1, TimeTag::t0, "U01^dag", mb.post_state, x0},
                  {Direction::Forward, TimeTag::t0, TimeTag::t2, "U02", x0, psi2},
                  {Direction::Backward, TimeTag::t2, TimeTag::t0, "U02^dag", ma.post_state, y0},
                  {Direction::Forward, TimeTag::t0, TimeTag::t1, "U01", y0, bottom1}};
        t.states = {{"t1 before " + split.initial_part.display_name(), TimeTag::t1, psi1},
                    {"t1 after " + split.initial_part.display_name(), TimeTag::t1, mb.post_state},
                    {"t2 before " + split.final_part.display_name(), TimeTag::t2, psi2},
                    {"t2 after " + split.final_part.display_name(), TimeTag::t2, ma.post_state},
                    {"t1 bottom line", TimeTag::t1, bottom1}};
        t.t0_changes = {{"after " + split.initial_part.display_name() + " at t1", TimeTag::t0, x0},
                        {"after " + split.final_part.display_name() + " at t2", TimeTag::t0, y0}};
        t.bottom_t1 = bottom1;
        t.bottom_t2 = ma.post_state;
    } else {
        StateVector psi2 = apply(u02, sc.psi_t0());
        MeasurementRecord ma = measure(psi2, split.final_part, final_bits, TimeTag::t2);
        StateVector y0 = apply_adjoint(u02, ma.post_state);
        StateVector psi1 = apply(u01, y0);
        MeasurementRecord mb = measure(psi1, split.initial_part, init_bits, TimeTag::t1);
        StateVector x0 = apply_adjoint(u01, mb.post_state);
        StateVector bottom2 = apply(u02, x0);
        t.events = {detail::event_of(ma), detail::event_of(mb)};
        t.legs = {{Direction::Backward, TimeTag::t2, TimeTag::t0, "U02^dag", ma.post_state, y0},
                  {Direction::Forward, TimeTag::t0, TimeTag::t1, "U01", y0, psi1},
                  {Direction::Backward, TimeTag::t1, TimeTag::t0, "U01^dag", mb.post_state, x0},
                  {Direction::Forward, TimeTag::t0, TimeTag::t2, "U02", x0, bottom2}};
        t.states = {{"t2 before " + split.final_part.display_name(), TimeTag::t2, psi2},
                    {"t2 after " + split.final_part.display_name(), TimeTag::t2, ma.post_state},
                    {"t1 before " + split.initial_part.display_name(), TimeTag::t1, psi1},
                    {"t1 after " + split.initial_part.display_name(), TimeTag::t1, mb.post_state},
                    {"t2 bottom line", TimeTag::t2, bottom2}};
        t.t0_changes = {{"after " + split.final_part.display_name() + " at t2", TimeTag::t0, y0},
                        {"after " + split.initial_part.display_name() + " at t1", TimeTag::t0, x0}};
        t.bottom_t1 = mb.post_state;
        t.bottom_t2 = bottom2;
    }
    return t;
}

struct EmulationReport {
    /// Projection at t1 followed by the direct evolution u12.
    StateVector nonlocal;
    /// Projector conjugated back to t0, applied there, then evolved by u02.
    StateVector local;
    double deviation = 0.0;
};

/// Compares the nonlocal and the via-t0 local accounts of a measurement of B at t1.
inline EmulationReport emulation_check(const EprScenario &sc, std::uint32_t b, const ParityObservable &obs) {
    detail::check_outcome(sc, b);
    require(obs.reg() == Register::B, "emulation check measures register B");
    const auto &layout = sc.layout();
    Matrix p = projector(ParityOutcome::of(obs, b), layout).matrix();
    StateVector nonlocal(layout, sc.u12().matrix() * (p * sc.state_t1().amplitudes()));
    Matrix p_t0 = sc.u01().matrix().adjoint() * p * sc.u01().matrix();
    StateVector local(layout, sc.u02().matrix() * (p_t0 * sc.psi_t0().amplitudes()));
    return EmulationReport{nonlocal, local, max_abs_diff(nonlocal, local)};
}

}  // namespace tsq
