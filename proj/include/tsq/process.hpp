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
#include <string>
#include <vector>

#include "tsq/measure.hpp"

namespace tsq {

/// Mass allowed outside the correlated final outcome when checking |b>|blank> -> sharp s(b).
inline constexpr double kCorrelationTol = 1e-9;

/// Initial state, the unitary between the two correlated measurements, and the
/// bijection from problem-setting b to solution s(b).
class ProcessDescription {
   public:
    ProcessDescription(StateVector initial_state, UnitaryOp u12, std::vector<std::uint32_t> solution_map,
                       std::uint32_t blank_a = 0)
        : initial_(std::move(initial_state)),
          u12_(std::move(u12)),
          solution_(std::move(solution_map)),
          blank_(blank_a),
          initial_obs_(ParityObservable::full(Register::B, initial_.layout().n_b)),
          final_obs_(ParityObservable::full(Register::A, initial_.layout().n_a)) {
        const auto &layout = initial_.layout();
        require(u12_.layout() == layout, "process unitary and initial state layouts differ");
        require(layout.n_b == layout.n_a, "a bijective solution map needs equal register sizes");
        require(blank_ < layout.register_dimension(Register::A), "blank value does not fit register A");
        require(solution_.size() == layout.register_dimension(Register::B),
                "solution map must assign a solution to every setting");
        std::vector<bool> seen(layout.register_dimension(Register::A), false);
        for (auto s : solution_) {
            require(s < seen.size(), "solution value out of range");
            require(!seen[s], "solution map is not invertible");
            seen[s] = true;
        }
        for (std::uint32_t b = 0; b < solution_.size(); b++) {
            StateVector out = apply(u12_, StateVector::basis(layout, b, blank_));
            double leak = 0.0;
            for (size_t i = 0; i < out.dimension(); i++) {
                if (label_of(layout, i) != BasisLabel{b, solution_[b]}) {
                    leak += std::norm(out[i]);
                }
            }
            if (leak > kCorrelationTol) {
                throw InvariantError("unitary does not correlate setting " + format_bits(b, layout.n_b) +
                                     " with its solution (leaked mass " + std::to_string(leak) + ")");
            }
            phases_.push_back(out.amplitude({b, solution_[b]}));
        }
    }

    /// Uniform setting superposition, XOR-copy unitary, identity solution map.
    static ProcessDescription grover(int n) {
        auto layout = RegisterLayout::symmetric(n);
        std::vector<std::uint32_t> identity(layout.register_dimension(Register::B));
        for (std::uint32_t b = 0; b < identity.size(); b++) {
            identity[b] = b;
        }
        return ProcessDescription(uniform_setting_state(layout, 0u), xor_copy_unitary(layout), std::move(identity));
    }

    ProcessDescription with_initial_state(StateVector initial) const {
        return ProcessDescription(std::move(initial), u12_, solution_, blank_);
    }

    const RegisterLayout &layout() const {
        return initial_.layout();
    }
    int n() const {
        return layout().n_b;
    }
    const StateVector &initial_state() const {
        return initial_;
    }
    const UnitaryOp &u12() const {
        return u12_;
    }
    const ParityObservable &initial_obs() const {
        return initial_obs_;
    }
    const ParityObservable &final_obs() const {
        return final_obs_;
    }
    std::uint32_t blank() const {
        return blank_;
    }
    std::uint32_t solution(std::uint32_t b) const {
        require(b < solution_.size(), "setting out of range");
        return solution_[b];
    }
    const std::vector<std::uint32_t> &solution_map() const {
        return solution_;
    }
    std::uint32_t setting_count() const {
        return static_cast<std::uint32_t>(solution_.size());
    }
    /// <b, s(b)| U12 |b, blank>, unit modulus up to the correlation tolerance.
    const std::vector<Complex> &branch_amplitudes() const {
        return phases_;
    }

   private:
    StateVector initial_;
    UnitaryOp u12_;
    std::vector<std::uint32_t> solution_;
    std::uint32_t blank_;
    ParityObservable initial_obs_;
    ParityObservable final_obs_;
    std::vector<Complex> phases_;
};

struct PostponementReport {
    /// U applied after the initial projection.
    StateVector projected_then_evolved;
    /// The same projector applied after U.
    StateVector evolved_then_projected;
    double max_deviation = 0.0;
    /// For whole-register records: both orders followed by the correlated final projection.
    std::optional<StateVector> final_early;
    std::optional<StateVector> final_postponed;
};

/// Checks that the projection of an initial measurement can be moved past U12.
inline PostponementReport postpone_projection(const ProcessDescription &process, const MeasurementRecord &record,
                                              double tol = kOperatorTol) {
    const auto &obs = record.outcome.observable;
    require(obs.reg() == Register::B, "postponement expects a measurement of register B");
    require(commutes(obs, process.final_obs()), "recorded observable does not commute with the final observable");
    require(record.pre_state.layout() == process.layout(), "record and process layouts differ");
    DiagonalProjector p = projector(record.outcome, process.layout());
    StateVector early = apply(process.u12(), record.post_state);
    StateVector late = p.apply(apply(process.u12(), record.pre_state));
    PostponementReport report{early, late, max_abs_diff(early, late), std::nullopt, std::nullopt};
    if (obs.is_full()) {
        std::uint32_t b = 0;
        for (std::uint32_t v = 0; v < process.setting_count(); v++) {
            if (obs.syndrome(v) == record.outcome.bits) {
                b = v;
            }
        }
        DiagonalProjector final_p = projector(ParityOutcome::of(process.final_obs(), process.solution(b)), process.layout());
        report.final_early = final_p.apply(early);
        report.final_postponed = final_p.apply(late);
        report.max_deviation = std::max(report.max_deviation, max_abs_diff(*report.final_early, *report.final_postponed));
    }
    if (report.max_deviation > tol) {
        throw InvariantError("postponement not valid for this unitary (deviation " +
                             std::to_string(report.max_deviation) + ")");
    }
    return report;
}

}  // namespace tsq
