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
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tsq/gf2.hpp"
#include "tsq/qcore.hpp"

namespace tsq {

/// Partial measurement of one register: the GF(2) parities mask_i . bits for each mask.
/// A full-rank observable is equivalent to reading the whole register.
class ParityObservable {
   public:
    ParityObservable(Register reg, int width, std::vector<std::uint32_t> masks)
        : reg_(reg), width_(width), masks_(std::move(masks)) {
        require(width_ >= 1 && width_ <= 30, "observable register width out of range");
        for (auto m : masks_) {
            require(m != 0, "parity masks must be nonzero");
            require(m < (1u << width_), "parity mask wider than the register");
        }
        require(gf2::independent(masks_), "parity masks must be GF(2)-linearly independent");
    }

    /// B-hat or A-hat: one unit mask per bit, most significant first.
    static ParityObservable full(Register reg, int width) {
        std::vector<std::uint32_t> masks;
        for (int bit = width - 1; bit >= 0; bit--) {
            masks.push_back(1u << bit);
        }
        return ParityObservable(reg, width, std::move(masks));
    }

    /// Parses "B", "A", "B:[10]" or "A:[01,11]"; a bare register name means the full observable.
    static ParityObservable parse(const std::string &text, int width) {
        require(!text.empty() && (text[0] == 'A' || text[0] == 'B'),
                "observable '" + text + "' must start with register A or B");
        Register reg = text[0] == 'B' ? Register::B : Register::A;
        if (text.size() == 1) {
            return full(reg, width);
        }
        require(text.size() >= 4 && text[1] == ':' && text[2] == '[' && text.back() == ']',
                "observable '" + text + "' must look like B:[10,01]");
        std::vector<std::uint32_t> masks;
        std::string body = text.substr(3, text.size() - 4);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            masks.push_back(parse_bits(item, width));
        }
        return ParityObservable(reg, width, std::move(masks));
    }

    Register reg() const {
        return reg_;
    }
    int width() const {
        return width_;
    }
    const std::vector<std::uint32_t> &masks() const {
        return masks_;
    }
    int rank() const {
        return static_cast<int>(masks_.size());
    }
    bool is_full() const {
        return rank() == width_;
    }
    std::size_t outcome_count() const {
        return std::size_t{1} << rank();
    }

    /// Mask-list form, e.g. "B:[10]".
    std::string spec() const {
        std::string out = std::string(register_name(reg_)) + ":[";
        for (size_t i = 0; i < masks_.size(); i++) {
            out += (i ? "," : "") + format_bits(masks_[i], width_);
        }
        return out + "]";
    }

    /// Display name: "B" for whole-register reads, "B_l"/"B_r" for single bits of a
    /// two-bit register, the mask-list form otherwise.
    std::string display_name() const {
        std::string reg = register_name(reg_);
        if (is_full() && masks_ == full(reg_, width_).masks_) {
            return reg;
        }
        if (width_ == 2 && rank() == 1 && (masks_[0] == 2u || masks_[0] == 1u)) {
            return reg + (masks_[0] == 2u ? "_l" : "_r");
        }
        return spec();
    }

    /// Outcome bits packed with the first mask most significant.
    std::uint32_t syndrome(std::uint32_t register_value) const {
        return gf2::syndrome(register_value, masks_);
    }

    bool operator==(const ParityObservable &) const = default;

   private:
    Register reg_;
    int width_;
    std::vector<std::uint32_t> masks_;
};

struct ParityOutcome {
    ParityObservable observable;
    /// One bit per mask, packed with the first mask most significant.
    std::uint32_t bits = 0;

    /// The outcome a sharp register value would produce.
    static ParityOutcome of(const ParityObservable &obs, std::uint32_t register_value) {
        return {obs, obs.syndrome(register_value)};
    }

    std::string bits_string() const {
        return observable.rank() == 0 ? std::string() : format_bits(bits, observable.rank());
    }

    bool operator==(const ParityOutcome &) const = default;
};

/// Diagonal 0/1 operator keeping the basis labels consistent with a parity outcome.
class DiagonalProjector {
   public:
    DiagonalProjector(RegisterLayout layout, std::vector<std::uint8_t> keep)
        : layout_(layout), keep_(std::move(keep)) {
        require(keep_.size() == layout_.dimension(), "projector size does not match the layout");
    }

    const RegisterLayout &layout() const {
        return layout_;
    }
    bool keeps(std::size_t index) const {
        return keep_[index] != 0;
    }

    StateVector apply(const StateVector &s) const {
        require(s.layout() == layout_, "projector and state layouts differ");
        Vector out = s.amplitudes();
        for (size_t i = 0; i < keep_.size(); i++) {
            if (!keep_[i]) {
                out[static_cast<Eigen::Index>(i)] = 0.0;
            }
        }
        return StateVector(layout_, std::move(out));
    }

    Matrix matrix() const {
        auto d = static_cast<Eigen::Index>(keep_.size());
        Matrix m = Matrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; i++) {
            m(i, i) = keep_[static_cast<size_t>(i)] ? 1.0 : 0.0;
        }
        return m;
    }

   private:
    RegisterLayout layout_;
    std::vector<std::uint8_t> keep_;
};

inline std::uint32_t register_value(const RegisterLayout &layout, std::size_t index, Register reg) {
    BasisLabel label = label_of(layout, index);
    return reg == Register::B ? label.b : label.a;
}

inline DiagonalProjector projector(const ParityOutcome &outcome, const RegisterLayout &layout) {
    const auto &obs = outcome.observable;
    require(obs.width() == layout.bits(obs.reg()), "observable width does not match its register in the layout");
    std::vector<std::uint8_t> keep(layout.dimension());
    for (size_t i = 0; i < keep.size(); i++) {
        keep[i] = obs.syndrome(register_value(layout, i, obs.reg())) == outcome.bits ? 1 : 0;
    }
    return DiagonalProjector(layout, std::move(keep));
}

/// Squared-amplitude mass of each parity sector, indexed by packed outcome bits.
inline std::vector<double> sector_weights(const StateVector &s, const ParityObservable &obs) {
    require(obs.width() == s.layout().bits(obs.reg()), "observable width does not match its register");
    std::vector<double> weights(obs.outcome_count(), 0.0);
    for (size_t i = 0; i < s.dimension(); i++) {
        weights[obs.syndrome(register_value(s.layout(), i, obs.reg()))] += std::norm(s[i]);
    }
    return weights;
}

enum class TimeTag { t0, t1, t2 };

inline const char *time_name(TimeTag t) {
    switch (t) {
        case TimeTag::t0:
            return "t0";
        case TimeTag::t1:
            return "t1";
        default:
            return "t2";
    }
}

struct ForcedOutcome {
    std::uint32_t bits = 0;
};

struct SeededRandom {
    std::uint64_t seed = 0;
};

using OutcomeSelector = std::variant<ForcedOutcome, SeededRandom>;

struct MeasurementRecord {
    TimeTag time = TimeTag::t1;
    ParityOutcome outcome;
    StateVector pre_state;
    StateVector post_state;
    /// Born weight of the selected sector relative to the total mass.
    double probability = 0.0;
};

/// Projective parity measurement; the post-measurement state is left unnormalized.
inline MeasurementRecord measure(const StateVector &s, const ParityObservable &obs, const OutcomeSelector &selector,
                                 TimeTag time = TimeTag::t1) {
    require(!s.is_zero(0.0), "cannot measure the zero state");
    std::vector<double> weights = sector_weights(s, obs);
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    std::uint32_t bits = 0;
    if (const auto *forced = std::get_if<ForcedOutcome>(&selector)) {
        require(forced->bits < obs.outcome_count(), "forced outcome has too many bits");
        bits = forced->bits;
        if (!(weights[bits] > 0.0)) {
            throw PreconditionError("impossible outcome: " + format_bits(bits, std::max(obs.rank(), 1)) +
                                    " has zero amplitude mass for " + obs.spec());
        }
    } else {
        std::mt19937_64 rng(std::get<SeededRandom>(selector).seed);
        std::uniform_real_distribution<double> uniform(0.0, total);
        double draw = uniform(rng);
        double acc = 0.0;
        bits = static_cast<std::uint32_t>(weights.size() - 1);
        for (size_t k = 0; k < weights.size(); k++) {
            acc += weights[k];
            if (draw < acc && weights[k] > 0.0) {
                bits = static_cast<std::uint32_t>(k);
                break;
            }
        }
        while (weights[bits] <= 0.0 && bits > 0) {
            bits--;
        }
    }
    ParityOutcome outcome{obs, bits};
    StateVector post = projector(outcome, s.layout()).apply(s);
    return MeasurementRecord{time, outcome, s, post, weights[bits] / total};
}

/// True iff every projector of o1 commutes with every projector of o2 as matrices.
inline bool commutes(const ParityObservable &o1, const ParityObservable &o2) {
    int n_b = 1;
    int n_a = 1;
    for (const auto *o : {&o1, &o2}) {
        int &slot = o->reg() == Register::B ? n_b : n_a;
        require(slot == 1 || slot == o->width(), "observables on one register must share its width");
        slot = o->width();
    }
    RegisterLayout layout = RegisterLayout::make(n_b, n_a);
    for (std::uint32_t x = 0; x < o1.outcome_count(); x++) {
        Matrix p = projector({o1, x}, layout).matrix();
        for (std::uint32_t y = 0; y < o2.outcome_count(); y++) {
            Matrix q = projector({o2, y}, layout).matrix();
            if (max_abs(p * q - q * p) > kOperatorTol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace tsq
