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


#include <gtest/gtest.h>

#include <chrono>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tsq/groverlong.hpp"
#include "tsq/querycomplexity.hpp"

using namespace tsq;

namespace {

std::vector<int> indices(CandidateSet set) {
    std::vector<int> out;
    for (int i = 0; i < 64; i++) {
        if (set >> i & 1u) {
            out.push_back(i);
        }
    }
    return out;
}

struct RawProblem {
    std::vector<std::vector<int>> answer;
    std::vector<int> solution;
    OracleProblemSpec spec;
};

// Random problem where every pair of settings with different solutions is told apart by some query.
RawProblem random_problem(std::mt19937 &rng) {
    for (;;) {
        int settings = 2 + static_cast<int>(rng() % 9);
        int queries = 1 + static_cast<int>(rng() % 5);
        int symbols = 2 + static_cast<int>(rng() % 2);
        int sols = 2 + static_cast<int>(rng() % 3);
        std::vector<std::vector<int>> ans(settings, std::vector<int>(queries));
        std::vector<int> sol(settings);
        std::vector<std::string> names;
        std::vector<std::string> qs;
        std::vector<std::vector<std::string>> ans_s(settings);
        std::vector<std::string> sol_s;
        for (int q = 0; q < queries; q++) {
            qs.push_back("q" + std::to_string(q));
        }
        for (int s = 0; s < settings; s++) {
            names.push_back("s" + std::to_string(s));
            for (int q = 0; q < queries; q++) {
                ans[s][q] = static_cast<int>(rng() % symbols);
                ans_s[s].push_back(std::to_string(ans[s][q]));
            }
            sol[s] = static_cast<int>(rng() % sols);
            sol_s.push_back(std::to_string(sol[s]));
        }
        bool solvable = true;
        for (int x = 0; x < settings; x++) {
            for (int y = x + 1; y < settings; y++) {
                if (sol[x] != sol[y] && ans[x] == ans[y]) {
                    solvable = false;
                }
            }
        }
        if (solvable) {
            return {ans, sol, OracleProblemSpec("random", names, qs, ans_s, sol_s)};
        }
    }
}

}  // namespace

TEST(DecisionTree, GroverTwoBits) {
    auto p = OracleProblemSpec::grover(2);
    EXPECT_EQ(decision_tree_complexity(p, all_settings(p)), 3);
    EXPECT_EQ(decision_tree_complexity(p, candidates_of(p, {"01", "11"})), 1);
    EXPECT_EQ(decision_tree_complexity(p, candidates_of(p, {"10"})), 0);
    EXPECT_THROW(decision_tree_complexity(p, 0), PreconditionError);
    EXPECT_THROW(candidates_of(p, {"2"}), PreconditionError);
}

TEST(DecisionTree, CapAndUnsolvable) {
    auto p = OracleProblemSpec::grover(5);
    try {
        decision_tree_complexity(p, all_settings(p));
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_NE(std::string(e.what()).find("instance too large for exact search"), std::string::npos);
    }
    OracleProblemSpec blind("blind", {"x", "y"}, {"q"}, {{"0"}, {"0"}}, {"a", "b"});
    EXPECT_THROW(decision_tree_complexity(blind, all_settings(blind)), PreconditionError);
}

// Property: closed form m - 1 on Grover subsets.
TEST(Properties, GroverSubsetsClosedForm) {
    auto p = OracleProblemSpec::grover(4);
    std::mt19937 rng(4);
    for (int m = 1; m <= 12; m++) {
        for (int t = 0; t < 3; t++) {
            std::vector<int> pool(16);
            std::iota(pool.begin(), pool.end(), 0);
            std::shuffle(pool.begin(), pool.end(), rng);
            CandidateSet set = 0;
            for (int i = 0; i < m; i++) {
                set |= CandidateSet{1} << pool[i];
            }
            EXPECT_EQ(decision_tree_complexity(p, set), m - 1) << "m=" << m;
        }
    }
}

// Property: memoized, pruned search equals the plain recursion.
TEST(Properties, MemoizedMatchesPlainMinimax) {
    std::mt19937 rng(77);
    for (int t = 0; t < 60; t++) {
        auto raw = random_problem(rng);
        DecisionTreeSolver solver(raw.spec);
        std::mt19937 pick(t);
        for (int k = 0; k < 4; k++) {
            CandidateSet set = pick() & all_settings(raw.spec);
            if (set == 0) {
                set = all_settings(raw.spec);
            }
            EXPECT_EQ(solver.complexity(set), oracle::minimax(raw.answer, raw.solution, indices(set)));
        }
    }
}

TEST(AdviceClasses, TwoBits) {
    auto p = OracleProblemSpec::grover(2);
    auto classes = advice_classes(p, {0b01});
    ASSERT_EQ(classes.size(), 2u);
    EXPECT_EQ(classes[0].candidates, candidates_of(p, {"00", "10"}));
    EXPECT_EQ(classes[1].candidates, candidates_of(p, {"01", "11"}));
    EXPECT_EQ(advice_classes(p, {}).size(), 1u);
    auto full = advice_classes(p, {0b10, 0b01});
    ASSERT_EQ(full.size(), 4u);
    for (const auto &c : full) {
        EXPECT_EQ(c.members.size(), 1u);
    }
    EXPECT_THROW(advice_classes(p, {0b01, 0b01}), PreconditionError);
    EXPECT_THROW(advice_classes(p, {0b100}), PreconditionError);
}

// Property: every member of a class satisfies its constraints.
TEST(Properties, AdviceClassConstraints) {
    auto p = OracleProblemSpec::grover(4);
    for (int r = 0; r <= 4; r++) {
        for (const auto &basis : gf2::enumerate_subspaces(4, r)) {
            std::size_t total = 0;
            for (const auto &c : advice_classes(p, basis)) {
                total += c.members.size();
                for (auto m : c.members) {
                    for (auto [mask, bit] : c.constraints) {
                        EXPECT_EQ(oracle::dot2(mask, p.setting_value(m)), bit);
                    }
                }
            }
            EXPECT_EQ(total, 16u);
        }
    }
}

TEST(AdviceRank, RoundingTiesDown) {
    EXPECT_EQ(advice_rank(2, 0.5), 1);
    EXPECT_EQ(advice_rank(4, 0.5), 2);
    EXPECT_EQ(advice_rank(3, 0.5), 1);
    EXPECT_EQ(advice_rank(3, 1.0 / 3), 1);
    EXPECT_EQ(advice_rank(3, 0.8), 2);
    EXPECT_THROW(advice_rank(2, 1.5), PreconditionError);
    EXPECT_THROW(advice_rank(2, -0.1), PreconditionError);
}

TEST(Prediction, GroverTwoBits) {
    auto p = OracleProblemSpec::grover(2);
    auto half = advanced_knowledge_prediction(p, 0.5);
    EXPECT_EQ(half.predicted_quantum, 1);
    EXPECT_EQ(half.rank, 1);
    EXPECT_EQ(half.classes.size(), 2u);
    auto sweep = k_sweep(p, {0.0, 0.5, 1.0});
    EXPECT_EQ(sweep[0].worst_case, 3);
    EXPECT_EQ(sweep[1].worst_case, 1);
    EXPECT_EQ(sweep[2].worst_case, 0);
}

TEST(Prediction, GroverFourBits) {
    auto p = OracleProblemSpec::grover(4);
    auto start = std::chrono::steady_clock::now();
    auto sweep = k_sweep(p, {0.0, 0.5, 1.0});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_EQ(sweep[0].worst_case, 15);
    EXPECT_EQ(sweep[1].worst_case, 3);
    EXPECT_EQ(sweep[1].predicted_quantum, (1 << 2) - 1);
    EXPECT_EQ(sweep[2].worst_case, 0);
    EXPECT_LT(secs, 10.0);
}

// Property: k = 1/2 over every even basis agrees with a plain recursion per class, min over bases.
TEST(Properties, PredictionIsMinOverBases) {
    for (int n : {2, 4}) {
        auto p = OracleProblemSpec::grover(n);
        std::vector<std::vector<int>> ans(p.setting_count(), std::vector<int>(p.query_count()));
        std::vector<int> sol(p.setting_count());
        for (size_t s = 0; s < p.setting_count(); s++) {
            for (size_t q = 0; q < p.query_count(); q++) {
                ans[s][q] = p.answer(s, q);
            }
            sol[s] = p.solution(s);
        }
        int best = 1 << 20;
        for (const auto &basis : gf2::enumerate_subspaces(n, n / 2)) {
            int worst = 0;
            for (const auto &c : advice_classes(p, basis)) {
                std::vector<int> cands(c.members.begin(), c.members.end());
                worst = std::max(worst, oracle::minimax(ans, sol, cands));
            }
            best = std::min(best, worst);
        }
        EXPECT_EQ(advanced_knowledge_prediction(p, 0.5).predicted_quantum, best);
    }
}

TEST(Prediction, ExtremesAnyN) {
    for (int n = 1; n <= 4; n++) {
        auto p = OracleProblemSpec::grover(n);
        EXPECT_EQ(advanced_knowledge_prediction(p, 1.0).worst_case, 0);
        EXPECT_EQ(advanced_knowledge_prediction(p, 0.0).worst_case, (1 << n) - 1);
    }
}

// Property: worst case never increases with advice rank.
TEST(Properties, Monotone) {
    for (int n = 1; n <= 4; n++) {
        auto p = OracleProblemSpec::grover(n);
        int prev = 1 << 20;
        for (int r = 0; r <= n; r++) {
            int w = advanced_knowledge_prediction(p, static_cast<double>(r) / n).worst_case;
            EXPECT_LE(w, prev);
            EXPECT_LE(w, static_cast<int>(p.setting_count()) - 1);
            prev = w;
        }
    }
    std::mt19937 rng(5);
    for (int t = 0; t < 10; t++) {
        // binary-named random problems
        int n = 3;
        std::vector<std::string> names;
        for (std::uint32_t v = 0; v < 8; v++) {
            names.push_back(format_bits(v, n));
        }
        std::vector<std::vector<std::string>> ans(8);
        std::vector<std::string> sol;
        for (int s = 0; s < 8; s++) {
            for (int q = 0; q < 6; q++) {
                ans[s].push_back(std::to_string(rng() % 2));
            }
            sol.push_back(names[s]);
        }
        // keep only problems solvable from the answer table
        std::set<std::vector<std::string>> rows(ans.begin(), ans.end());
        if (rows.size() < 8) {
            continue;
        }
        OracleProblemSpec p("rand", names, {"a", "b", "c", "d", "e", "f"}, ans, sol);
        auto sweep = k_sweep(p, {0.0, 1.0 / 3, 2.0 / 3, 1.0});
        for (size_t i = 1; i < sweep.size(); i++) {
            EXPECT_LE(sweep[i].worst_case, sweep[i - 1].worst_case);
        }
    }
}

TEST(Prediction, NeverAboveLongQueryCount) {
    for (int n : {2, 4}) {
        auto predicted = advanced_knowledge_prediction(OracleProblemSpec::grover(n), 0.5).predicted_quantum;
        EXPECT_LE(predicted, run_long(SearchOracle::make(n, 0)).query_count);
    }
}

TEST(ProblemSpec, Validation) {
    EXPECT_THROW(OracleProblemSpec("x", {"0"}, {"q"}, {{"1"}}, {"a"}), PreconditionError);
    EXPECT_THROW(OracleProblemSpec("x", {"0", "0"}, {"q"}, {{"1"}, {"0"}}, {"a", "b"}), PreconditionError);
    EXPECT_THROW(OracleProblemSpec("x", {"0", "1"}, {"q"}, {{"1"}, {}}, {"a", "b"}), PreconditionError);
    EXPECT_THROW(OracleProblemSpec::grover(7), PreconditionError);
    OracleProblemSpec named("x", {"red", "blue"}, {"q"}, {{"1"}, {"0"}}, {"a", "b"});
    EXPECT_EQ(named.setting_bits(), -1);
    EXPECT_EQ(advanced_knowledge_prediction(named, 0.0).worst_case, 1);
    EXPECT_THROW(advanced_knowledge_prediction(named, 0.5), PreconditionError);
}
