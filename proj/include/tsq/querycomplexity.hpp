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
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsq/gf2.hpp"

namespace tsq {

/// A fully enumerated oracle problem: answer(b, q) for every setting and query,
/// and the solution each setting demands. Symbols are interned to small integers.
class OracleProblemSpec {
   public:
    OracleProblemSpec(std::string id, std::vector<std::string> settings, std::vector<std::string> queries,
                      const std::vector<std::vector<std::string>> &answers, const std::vector<std::string> &solutions)
        : id_(std::move(id)), settings_(std::move(settings)), queries_(std::move(queries)) {
        require(settings_.size() >= 2, "an oracle problem needs at least two settings");
        require(settings_.size() <= 64, "at most 64 settings are supported");
        require(answers.size() == settings_.size(), "answer table must have one row per setting");
        require(solutions.size() == settings_.size(), "solution table must have one entry per setting");
        std::map<std::string, int> answer_ids;
        std::map<std::string, int> solution_ids;
        for (size_t s = 0; s < settings_.size(); s++) {
            require(answers[s].size() == queries_.size(),
                    "answer row for setting '" + settings_[s] + "' must cover every query");
            std::vector<int> row;
            for (const auto &symbol : answers[s]) {
                row.push_back(answer_ids.emplace(symbol, static_cast<int>(answer_ids.size())).first->second);
            }
            answers_.push_back(std::move(row));
            solutions_.push_back(
                solution_ids.emplace(solutions[s], static_cast<int>(solution_ids.size())).first->second);
        }
        std::vector<std::string> sorted = settings_;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "settings must be distinct");
        bits_ = static_cast<int>(settings_.front().size());
        for (const auto &s : settings_) {
            bool binary = static_cast<int>(s.size()) == bits_ && !s.empty() && bits_ <= 30 &&
                          s.find_first_not_of("01") == std::string::npos;
            if (!binary) {
                bits_ = -1;
                break;
            }
        }
        if (bits_ > 0) {
            for (const auto &s : settings_) {
                values_.push_back(parse_bits(s, bits_));
            }
        }
    }

    /// Delta oracle over 2^n drawers: answer 1 iff the opened drawer holds the ball.
    static OracleProblemSpec grover(int n) {
        require(n >= 1 && n <= 6, "grover problem needs 1..6 bits");
        std::vector<std::string> names;
        for (std::uint32_t v = 0; v < (1u << n); v++) {
            names.push_back(format_bits(v, n));
        }
        std::vector<std::vector<std::string>> answers;
        for (const auto &b : names) {
            std::vector<std::string> row;
            for (const auto &q : names) {
                row.push_back(b == q ? "1" : "0");
            }
            answers.push_back(std::move(row));
        }
        return OracleProblemSpec("grover-n" + std::to_string(n), names, names, answers, names);
    }

    const std::string &id() const {
        return id_;
    }
    const std::vector<std::string> &settings() const {
        return settings_;
    }
    const std::vector<std::string> &queries() const {
        return queries_;
    }
    std::size_t setting_count() const {
        return settings_.size();
    }
    std::size_t query_count() const {
        return queries_.size();
    }
    int answer(std::size_t setting, std::size_t query) const {
        return answers_[setting][query];
    }
    int solution(std::size_t setting) const {
        return solutions_[setting];
    }
    /// Common bit length when every setting is a bitstring, else -1.
    int setting_bits() const {
        return bits_;
    }
    std::uint32_t setting_value(std::size_t setting) const {
        require(bits_ > 0, "settings of problem '" + id_ + "' are not bitstrings");
        return values_[setting];
    }

   private:
    std::string id_;
    std::vector<std::string> settings_;
    std::vector<std::string> queries_;
    std::vector<std::vector<int>> answers_;
    std::vector<int> solutions_;
    int bits_ = -1;
    std::vector<std::uint32_t> values_;
};

/// Bit i set iff setting i is a candidate.
using CandidateSet = std::uint64_t;

inline CandidateSet all_settings(const OracleProblemSpec &problem) {
    return problem.setting_count() == 64 ? ~CandidateSet{0} : (CandidateSet{1} << problem.setting_count()) - 1;
}

inline constexpr std::size_t kDefaultSearchCap = 24;

/// Exact deterministic worst-case query count by memoized minimax over decision trees.
/// The memo table lives as long as the solver and is not shared.
class DecisionTreeSolver {
   public:
    explicit DecisionTreeSolver(const OracleProblemSpec &problem, std::size_t cap = kDefaultSearchCap)
        : problem_(problem), cap_(cap) {
    }

    int complexity(CandidateSet candidates) {
        require(candidates != 0, "candidate set must be nonempty");
        require((candidates & ~all_settings(problem_)) == 0, "candidate outside the problem's settings");
        auto count = static_cast<std::size_t>(__builtin_popcountll(candidates));
        require(count <= cap_, "instance too large for exact search (" + std::to_string(count) +
                                   " candidates, cap " + std::to_string(cap_) + ")");
        return solve(candidates);
    }

    std::size_t memo_size() const {
        return memo_.size();
    }

   private:
    int solve(CandidateSet candidates) {
        if (solution_constant(candidates)) {
            return 0;
        }
        if (auto it = memo_.find(candidates); it != memo_.end()) {
            return it->second;
        }
        int best = std::numeric_limits<int>::max();
        std::vector<std::pair<int, CandidateSet>> parts;
        for (std::size_t q = 0; q < problem_.query_count() && best > 1; q++) {
            split(candidates, q, parts);
            if (parts.size() < 2) {
                continue;
            }
            int worst = 0;
            for (const auto &[symbol, part] : parts) {
                worst = std::max(worst, solve(part));
                if (1 + worst >= best) {
                    break;
                }
            }
            best = std::min(best, 1 + worst);
        }
        if (best == std::numeric_limits<int>::max()) {
            throw PreconditionError("problem '" + problem_.id() +
                                    "' is not solvable: no query distinguishes the remaining candidates");
        }
        memo_.emplace(candidates, best);
        return best;
    }

    bool solution_constant(CandidateSet candidates) const {
        int first = -1;
        for (CandidateSet rest = candidates; rest; rest &= rest - 1) {
            int s = problem_.solution(static_cast<std::size_t>(__builtin_ctzll(rest)));
            if (first < 0) {
                first = s;
            } else if (s != first) {
                return false;
            }
        }
        return true;
    }

    void split(CandidateSet candidates, std::size_t query, std::vector<std::pair<int, CandidateSet>> &parts) const {
        parts.clear();
        for (CandidateSet rest = candidates; rest; rest &= rest - 1) {
            auto setting = static_cast<std::size_t>(__builtin_ctzll(rest));
            int symbol = problem_.answer(setting, query);
            auto it = std::find_if(parts.begin(), parts.end(), [&](const auto &p) { return p.first == symbol; });
            if (it == parts.end()) {
                parts.emplace_back(symbol, CandidateSet{1} << setting);
            } else {
                it->second |= CandidateSet{1} << setting;
            }
        }
    }

    const OracleProblemSpec &problem_;
    std::size_t cap_;
    std::unordered_map<CandidateSet, int> memo_;
};

inline int decision_tree_complexity(const OracleProblemSpec &problem, CandidateSet candidates,
                                    std::size_t cap = kDefaultSearchCap) {
    return DecisionTreeSolver(problem, cap).complexity(candidates);
}

/// Candidate set holding the named settings.
inline CandidateSet candidates_of(const OracleProblemSpec &problem, const std::vector<std::string> &names) {
    CandidateSet out = 0;
    for (const auto &name : names) {
        auto it = std::find(problem.settings().begin(), problem.settings().end(), name);
        require(it != problem.settings().end(), "unknown setting '" + name + "'");
        out |= CandidateSet{1} << (it - problem.settings().begin());
    }
    return out;
}

/// Settings consistent with one value of the advance parity information.
struct AdviceClass {
    /// (mask, bit) pairs: mask . b = bit for every member b.
    std::vector<std::pair<std::uint32_t, int>> constraints;
    std::vector<std::size_t> members;
    CandidateSet candidates = 0;
};

/// Partitions the settings by their parities under `masks`; empty classes are dropped.
inline std::vector<AdviceClass> advice_classes(const OracleProblemSpec &problem,
                                               const std::vector<std::uint32_t> &masks) {
    require(gf2::independent(masks), "advice masks must be linearly independent");
    for (auto m : masks) {
        require(m != 0, "advice masks must be nonzero");
        require(problem.setting_bits() > 0 && m < (1u << problem.setting_bits()),
                "advice mask wider than the settings");
    }
    auto rank = static_cast<int>(masks.size());
    std::vector<AdviceClass> classes(std::size_t{1} << rank);
    for (std::uint32_t code = 0; code < classes.size(); code++) {
        for (int i = 0; i < rank; i++) {
            classes[code].constraints.emplace_back(masks[static_cast<size_t>(i)], (code >> (rank - 1 - i)) & 1);
        }
    }
    for (std::size_t s = 0; s < problem.setting_count(); s++) {
        std::uint32_t code = rank == 0 ? 0 : gf2::syndrome(problem.setting_value(s), masks);
        classes[code].members.push_back(s);
        classes[code].candidates |= CandidateSet{1} << s;
    }
    std::erase_if(classes, [](const AdviceClass &c) { return c.members.empty(); });
    return classes;
}

struct ClassComplexity {
    std::string parity_bits;
    std::vector<std::string> members;
    int queries = 0;
};

struct ComplexityReport {
    std::string problem_id;
    int n = 0;
    int rank = 0;
    double k = 0.0;
    /// The most favorable advice basis.
    std::vector<std::uint32_t> masks;
    std::vector<ClassComplexity> classes;
    int worst_case = 0;
    int predicted_quantum = 0;
    std::size_t bases_examined = 0;
};

/// Advice rank for fraction k: k*n rounded, ties toward the smaller rank so an odd
/// register's half matches the floor(n/2) final part.
inline int advice_rank(int n, double k) {
    require(k >= 0.0 && k <= 1.0, "k must lie in [0, 1]");
    return static_cast<int>(std::floor(k * n + 0.5 - 1e-9));
}

/// Optimal classical query count given advance knowledge of k*n parity bits of the
/// setting, minimized over the advice bases.
inline ComplexityReport advanced_knowledge_prediction(const OracleProblemSpec &problem, double k,
                                                      std::size_t cap = kDefaultSearchCap) {
    int n = problem.setting_bits();
    int r = 0;
    if (n > 0) {
        r = advice_rank(n, k);
    } else {
        require(k == 0.0, "advice with k > 0 needs bitstring settings");
        n = 0;
    }
    DecisionTreeSolver solver(problem, cap);
    ComplexityReport best;
    best.worst_case = std::numeric_limits<int>::max();
    std::size_t examined = 0;
    auto bases = n > 0 ? gf2::enumerate_subspaces(n, r) : std::vector<gf2::Basis>{gf2::Basis{}};
    for (const auto &basis : bases) {
        examined++;
        auto classes = advice_classes(problem, basis);
        int worst = 0;
        std::vector<int> counts;
        for (const auto &c : classes) {
            int q = solver.complexity(c.candidates);
            counts.push_back(q);
            worst = std::max(worst, q);
            if (worst >= best.worst_case) {
                break;
            }
        }
        if (worst >= best.worst_case) {
            continue;
        }
        best.masks = basis;
        best.worst_case = worst;
        best.classes.clear();
        for (size_t i = 0; i < classes.size(); i++) {
            ClassComplexity cc;
            std::uint32_t code = 0;
            for (const auto &constraint : classes[i].constraints) {
                code = (code << 1) | static_cast<std::uint32_t>(constraint.second);
            }
            cc.parity_bits = r == 0 ? std::string() : format_bits(code, r);
            for (auto m : classes[i].members) {
                cc.members.push_back(problem.settings()[m]);
            }
            cc.queries = counts[i];
            best.classes.push_back(std::move(cc));
        }
        if (worst == 0) {
            break;
        }
    }
    best.problem_id = problem.id();
    best.n = n;
    best.rank = r;
    best.k = k;
    best.predicted_quantum = best.worst_case;
    best.bases_examined = examined;
    return best;
}

inline std::vector<ComplexityReport> k_sweep(const OracleProblemSpec &problem, const std::vector<double> &ks,
                                             std::size_t cap = kDefaultSearchCap) {
    std::vector<ComplexityReport> out;
    for (double k : ks) {
        out.push_back(advanced_knowledge_prediction(problem, k, cap));
    }
    return out;
}

}  // namespace tsq
