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

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tsq/epr.hpp"
#include "tsq/tsym.hpp"

namespace tsq {

/// "|01>_B|00>_A".
inline std::string ket_label(const RegisterLayout &layout, BasisLabel label) {
    return "|" + format_bits(label.b, layout.n_b) + ">_B|" + format_bits(label.a, layout.n_a) + ">_A";
}

namespace detail {

inline std::string format_complex(Complex z) {
    char buf[64];
    if (std::abs(z.imag()) <= 1e-12) {
        std::snprintf(buf, sizeof buf, "%.6g", z.real());
    } else if (std::abs(z.real()) <= 1e-12) {
        std::snprintf(buf, sizeof buf, "%.6gi", z.imag());
    } else {
        std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", z.real(), z.imag());
    }
    return buf;
}

struct RenderTerm {
    BasisLabel label;
    std::string coeff;  // "" for 1, "-" for -1
    bool negative = false;
};

inline std::string join_terms(const std::vector<RenderTerm> &terms,
                              const std::function<std::string(const RenderTerm &)> &ket) {
    std::string out;
    for (size_t i = 0; i < terms.size(); i++) {
        const auto &t = terms[i];
        if (i == 0) {
            out += (t.negative ? "-" : "") + t.coeff + ket(t);
        } else {
            out += std::string(t.negative ? " - " : " + ") + t.coeff + ket(t);
        }
    }
    return out;
}

}  // namespace detail

/// Renders a state as a ket sum with normalization disregarded. When every amplitude
/// is an integer multiple of the smallest one the coefficients are printed relative to
/// it; otherwise raw amplitudes are printed. Terms sharing one A value are factored as
/// (|b1>_B + |b2>_B)|a>_A.
inline std::string format_state(const StateVector &s) {
    const auto &layout = s.layout();
    double peak = s.amplitudes().cwiseAbs().maxCoeff();
    std::vector<std::size_t> support;
    for (size_t i = 0; i < s.dimension(); i++) {
        if (peak > 0 && std::abs(s[i]) > 1e-12 * peak) {
            support.push_back(i);
        }
    }
    if (support.empty()) {
        return "0";
    }
    std::size_t ref = support.front();
    for (auto i : support) {
        if (std::abs(s[i]) < std::abs(s[ref]) - 1e-12 * peak) {
            ref = i;
        }
    }
    bool integral = true;
    std::vector<long> ratios;
    for (auto i : support) {
        Complex r = s[i] / s[ref];
        double rounded = std::round(r.real());
        if (std::abs(r.imag()) > 1e-9 || std::abs(r.real() - rounded) > 1e-9) {
            integral = false;
            break;
        }
        ratios.push_back(static_cast<long>(rounded));
    }
    std::vector<detail::RenderTerm> terms;
    for (size_t k = 0; k < support.size(); k++) {
        detail::RenderTerm t{label_of(layout, support[k]), "", false};
        if (integral) {
            long r = ratios[k];
            t.negative = r < 0;
            long mag = std::labs(r);
            t.coeff = mag == 1 ? "" : std::to_string(mag);
        } else {
            t.coeff = detail::format_complex(s[support[k]]);
        }
        terms.push_back(t);
    }
    bool common_a = terms.size() > 1;
    for (const auto &t : terms) {
        common_a = common_a && t.label.a == terms.front().label.a;
    }
    if (common_a) {
        std::string inner = detail::join_terms(
            terms, [&](const detail::RenderTerm &t) { return "|" + format_bits(t.label.b, layout.n_b) + ">_B"; });
        return "(" + inner + ")|" + format_bits(terms.front().label.a, layout.n_a) + ">_A";
    }
    return detail::join_terms(terms, [&](const detail::RenderTerm &t) { return ket_label(layout, t.label); });
}

/// Three-column diagram: t1 column, propagation column, t2 column. Cells are centered.
struct DiagramTable {
    std::string title;
    std::array<std::string, 3> header;
    std::vector<std::array<std::string, 3>> rows;

    std::string render() const {
        std::array<size_t, 3> width{0, 0, 0};
        auto measure_row = [&](const std::array<std::string, 3> &row) {
            for (size_t c = 0; c < 3; c++) {
                width[c] = std::max(width[c], row[c].size());
            }
        };
        measure_row(header);
        for (const auto &r : rows) {
            measure_row(r);
        }
        auto line = [&](const std::array<std::string, 3> &row) {
            std::string out;
            for (size_t c = 0; c < 3; c++) {
                size_t pad = width[c] - row[c].size();
                size_t left = pad / 2;
                out += std::string(left, ' ') + row[c] + std::string(pad - left, ' ');
                if (c < 2) {
                    out += "   ";
                }
            }
            while (!out.empty() && out.back() == ' ') {
                out.pop_back();
            }
            return out + "\n";
        };
        std::string out;
        if (!title.empty()) {
            out += title + "\n\n";
        }
        out += line(header);
        out += "\n";
        for (const auto &r : rows) {
            out += line(r);
        }
        return out;
    }
};

namespace arrows {
inline constexpr const char *kDown = "v";
inline constexpr const char *kForward12 = "=> U12 =>";
inline constexpr const char *kBackward12 = "<= U12^dag <=";
inline constexpr const char *kForward102 = "=> U102 =>";
inline constexpr const char *kBackward102 = "<= U102^dag <=";
}  // namespace arrows

/// Ordinary external description: B measured at t1, evolved to the solution at t2.
inline DiagramTable external_description_table(const ProcessDescription &process, std::uint32_t b) {
    auto rec = measure(process.initial_state(), process.initial_obs(), ForcedOutcome{b}, TimeTag::t1);
    StateVector out = apply(process.u12(), rec.post_state);
    return {"external description, b = " + format_bits(b, process.n()),
            {"time t1, meas. of B", "t1 -> t2", "time t2, meas. of A"},
            {{format_state(process.initial_state()), "", ""},
             {arrows::kDown, "", ""},
             {format_state(rec.post_state), arrows::kForward12, format_state(out)}}};
}

/// Description relativized to the solver: the initial projection is postponed to t2.
inline DiagramTable relativized_description_table(const ProcessDescription &process, std::uint32_t b) {
    StateVector out = apply(process.u12(), process.initial_state());
    auto rec = measure(out, process.final_obs(), ForcedOutcome{process.solution(b)}, TimeTag::t2);
    return {"relativized description, b = " + format_bits(b, process.n()),
            {"time t1, meas. of B", "t1 -> t2", "time t2, meas. of A"},
            {{format_state(process.initial_state()), arrows::kForward12, format_state(out)},
             {"", "", arrows::kDown},
             {"", "", format_state(rec.post_state)}}};
}

/// Full zigzag of an instance (either perspective).
inline DiagramTable zigzag_table(const ZigzagInstance &inst) {
    std::array<std::string, 3> header{"time t1, meas. of " + inst.split.initial_part.display_name(), "t1 <=> t2",
                                      "time t2, meas. of " + inst.split.final_part.display_name()};
    const auto &tr = inst.trajectory;
    std::string title = std::string(perspective_name(inst.perspective)) + " zigzag " + inst.name();
    if (inst.perspective == Perspective::External) {
        return {title,
                header,
                {{format_state(tr[0].state), "", ""},
                 {arrows::kDown, "", ""},
                 {format_state(tr[1].state), arrows::kForward12, format_state(tr[2].state)},
                 {"", "", arrows::kDown},
                 {format_state(tr[4].state), arrows::kBackward12, format_state(tr[3].state)}}};
    }
    return {title,
            header,
            {{format_state(tr[0].state), arrows::kForward12, format_state(tr[1].state)},
             {"", "", arrows::kDown},
             {format_state(tr[3].state), arrows::kBackward12, format_state(tr[2].state)}}};
}

/// Bottom line of an instance read backward (as produced) or forward.
inline DiagramTable bottom_line_table(const ZigzagInstance &inst, bool forward) {
    return {std::string("bottom line ") + (forward ? "(forward) " : "(backward) ") + inst.name(),
            {"time t1", forward ? "t1 -> t2" : "t1 <- t2", "time t2"},
            {{format_state(inst.bottom_in), forward ? arrows::kForward12 : arrows::kBackward12,
              format_state(inst.bottom_out)}}};
}

/// Ordinary nonlocal description (direct path) or the same process routed via t0.
inline DiagramTable epr_ordinary_table(const CausalTrace &trace, bool via_t0) {
    const auto &before = trace.states.front().state;
    return {std::string(via_t0 ? "via-t0 description" : "direct description") + ", outcome " +
                trace.events.front().outcome,
            {"time t1, meas. of B", via_t0 ? "t1 -> t0 -> t2" : "t1 -> t2", "time t2, meas. of A"},
            {{format_state(before), "", ""},
             {arrows::kDown, "", ""},
             {format_state(trace.bottom_t1), via_t0 ? arrows::kForward102 : arrows::kForward12,
              format_state(trace.bottom_t2)}}};
}

/// Time-symmetrized zigzag of an EPR trace with the B measurement first.
inline DiagramTable epr_zigzag_table(const CausalTrace &trace, bool via_t0) {
    require(trace.kind == "ts" && trace.states.size() == 5, "zigzag table needs a ts trace");
    std::string b_name = trace.events[0].observable;
    std::string a_name = trace.events[1].observable;
    require(trace.states[0].time == TimeTag::t1, "zigzag table needs the B measurement first");
    return {std::string("time-symmetrized ") + (via_t0 ? "via-t0" : "direct") + " zigzag, outcome pair " +
                trace.events[0].outcome + "/" + trace.events[1].outcome,
            {"time t1, meas. of " + b_name, via_t0 ? "t1 <=> t0 <=> t2" : "t1 <=> t2", "time t2, meas. of " + a_name},
            {{format_state(trace.states[0].state), "", ""},
             {arrows::kDown, "", ""},
             {format_state(trace.states[1].state), via_t0 ? arrows::kForward102 : arrows::kForward12,
              format_state(trace.states[2].state)},
             {"", "", arrows::kDown},
             {format_state(trace.bottom_t1), via_t0 ? arrows::kBackward102 : arrows::kBackward12,
              format_state(trace.bottom_t2)}}};
}

}  // namespace tsq
