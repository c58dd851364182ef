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

#include <random>

#include "oracles.hpp"
#include "tsq/measure.hpp"
#include "tsq/process.hpp"

using namespace tsq;

namespace {

const RegisterLayout kL2 = RegisterLayout::symmetric(2);

StateVector sum_bb(int n) {
    std::vector<StateVector::Term> terms;
    for (std::uint32_t b = 0; b < (1u << n); b++) {
        terms.push_back({b, b, 1.0});
    }
    return StateVector::from_terms(RegisterLayout::symmetric(n), terms);
}

ParityObservable obs(const char *text, int width = 2) {
    return ParityObservable::parse(text, width);
}

}  // namespace

TEST(ParityObservable, ParseAndNames) {
    EXPECT_EQ(obs("B:[10]").display_name(), "B_l");
    EXPECT_EQ(obs("A:[01]").display_name(), "A_r");
    EXPECT_EQ(obs("B:[10,01]").display_name(), "B");
    EXPECT_EQ(obs("A:[11]").spec(), "A:[11]");
    EXPECT_TRUE(obs("B:[10,01]").is_full());
    EXPECT_THROW(obs("B:[00]"), PreconditionError);
    EXPECT_THROW(obs("B:[01,01]"), PreconditionError);
    EXPECT_THROW(obs("B:[01,10,11]"), PreconditionError);
    EXPECT_THROW(obs("C:[01]"), PreconditionError);
    EXPECT_THROW(obs("B:[011]"), PreconditionError);
}

TEST(Projector, LeftBitOnUniform) {
    auto s = uniform_setting_state(kL2, 0u);
    auto p = projector(ParityOutcome{obs("B:[10]"), 0}, kL2);
    auto want = StateVector::from_terms(kL2, {{0, 0, 1.0}, {1, 0, 1.0}});
    EXPECT_TRUE(approx_equal(p.apply(s), want));
}

TEST(Projector, RightBitOfAOnCorrelated) {
    auto p = projector(ParityOutcome{obs("A:[01]"), 1}, kL2);
    auto want = StateVector::from_terms(kL2, {{1, 1, 1.0}, {3, 3, 1.0}});
    EXPECT_TRUE(approx_equal(p.apply(sum_bb(2)), want));
}

TEST(Projector, EigenstateUnchangedAndIdempotent) {
    auto s = StateVector::basis(kL2, 2, 1);
    auto full = ParityObservable::full(Register::B, 2);
    auto p = projector(ParityOutcome::of(full, 2), kL2);
    EXPECT_TRUE(approx_equal(p.apply(s), s));
    for (const char *text : {"B:[10]", "B:[11]", "A:[01]", "A:[10,01]"}) {
        auto o = obs(text);
        for (std::uint32_t bits = 0; bits < o.outcome_count(); bits++) {
            Matrix m = projector(ParityOutcome{o, bits}, kL2).matrix();
            EXPECT_EQ(max_abs(m * m - m), 0.0);
        }
    }
}

TEST(Measure, ForcedFullOutcome) {
    auto rec = measure(uniform_setting_state(kL2, 0u), ParityObservable::full(Register::B, 2), ForcedOutcome{1});
    EXPECT_TRUE(approx_equal(rec.post_state, StateVector::basis(kL2, 1, 0)));
    EXPECT_NEAR(rec.probability, 0.25, 1e-12);
    EXPECT_EQ(rec.outcome.bits_string(), "01");
}

TEST(Measure, SharpStateIsDeterministic) {
    auto s = StateVector::basis(kL2, 1, 1);
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        EXPECT_EQ(measure(s, obs("A:[01]"), SeededRandom{seed}).outcome.bits, 1u);
    }
}

TEST(Measure, ImpossibleOutcome) {
    auto s = StateVector::basis(kL2, 1, 1);
    try {
        measure(s, obs("A:[01]"), ForcedOutcome{0});
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_NE(std::string(e.what()).find("impossible outcome"), std::string::npos);
    }
    EXPECT_THROW(measure(StateVector(kL2), obs("A:[01]"), ForcedOutcome{0}), PreconditionError);
}

TEST(Measure, BornSamplingFrequencies) {
    auto s = uniform_setting_state(kL2, 0u);
    auto full = ParityObservable::full(Register::B, 2);
    std::vector<int> hits(4, 0);
    const int trials = 100000;
    for (int t = 0; t < trials; t++) {
        hits[measure(s, full, SeededRandom{static_cast<std::uint64_t>(t)}).outcome.bits]++;
    }
    for (int h : hits) {
        EXPECT_NEAR(static_cast<double>(h) / trials, 0.25, 0.02);
    }
}

TEST(Measure, SeedsAreReproducible) {
    std::mt19937_64 rng(5);
    StateVector s(kL2, oracle::random_vector(16, rng));
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        EXPECT_EQ(measure(s, obs("B:[11]"), SeededRandom{seed}).outcome.bits,
                  measure(s, obs("B:[11]"), SeededRandom{seed}).outcome.bits);
    }
}

TEST(Commutes, Examples) {
    EXPECT_TRUE(commutes(ParityObservable::full(Register::B, 2), ParityObservable::full(Register::A, 2)));
    EXPECT_TRUE(commutes(obs("B:[10]"), obs("B:[01]")));
    std::mt19937 rng(1);
    for (int t = 0; t < 20; t++) {
        std::uint32_t m1 = 1 + rng() % 7;
        std::uint32_t m2 = 1 + rng() % 7;
        EXPECT_TRUE(commutes(ParityObservable(Register::B, 3, {m1}), ParityObservable(Register::A, 3, {m2})));
        EXPECT_TRUE(commutes(ParityObservable(Register::B, 3, {m1}), ParityObservable(Register::B, 3, {m2})));
    }
}

// Property: sum over all sectors rebuilds the input.
TEST(Properties, SectorCompleteness) {
    std::mt19937_64 rng(7);
    auto layout = RegisterLayout::symmetric(3);
    StateVector s(layout, oracle::random_vector(64, rng));
    for (int r = 0; r <= 3; r++) {
        for (const auto &basis : gf2::enumerate_subspaces(3, r)) {
            for (Register reg : {Register::B, Register::A}) {
                ParityObservable o(reg, 3, basis);
                StateVector acc(layout);
                for (std::uint32_t bits = 0; bits < o.outcome_count(); bits++) {
                    acc = acc + projector(ParityOutcome{o, bits}, layout).apply(s);
                }
                EXPECT_EQ(max_abs_diff(acc, s), 0.0);
            }
        }
    }
}

// Property: Born weights against masses summed by hand with explicit dot products.
TEST(Properties, BornWeightsMatchSectorMass) {
    std::mt19937_64 rng(9);
    auto layout = RegisterLayout::symmetric(3);
    StateVector s(layout, oracle::random_vector(64, rng));
    ParityObservable o(Register::A, 3, {0b110, 0b011});
    double total = s.norm_squared();
    for (std::uint32_t bits = 0; bits < 4; bits++) {
        double mass = 0.0;
        for (size_t i = 0; i < 64; i++) {
            std::uint32_t a = i & 7u;
            std::uint32_t got = (oracle::dot2(0b110, a) << 1) | oracle::dot2(0b011, a);
            if (got == bits) {
                mass += std::norm(s[i]);
            }
        }
        auto rec = measure(s, o, ForcedOutcome{bits});
        EXPECT_NEAR(rec.probability, mass / total, 1e-12);
        EXPECT_NEAR(rec.post_state.norm_squared(), mass, 1e-12 * total);
    }
}

// Property: on sum_b |b>|b>, measuring a parity of A equals measuring it on B, and B's
// reduced density survives the copy.
TEST(Properties, EquivalenceChain) {
    for (int n = 2; n <= 3; n++) {
        auto layout = RegisterLayout::symmetric(n);
        auto out = sum_bb(n);
        auto in = uniform_setting_state(layout, 0u);
        for (std::uint32_t m = 1; m < (1u << n); m++) {
            for (std::uint32_t v = 0; v < 2; v++) {
                auto pa = projector(ParityOutcome{ParityObservable(Register::A, n, {m}), v}, layout);
                auto pb = projector(ParityOutcome{ParityObservable(Register::B, n, {m}), v}, layout);
                EXPECT_EQ(max_abs_diff(pa.apply(out), pb.apply(out)), 0.0);
            }
        }
        // populations of B survive the copy; coherences between settings do not
        auto u = xor_copy_unitary(layout);
        auto rin = reduced_density(in, Register::B);
        auto rout = reduced_density(apply(u, in), Register::B);
        EXPECT_LE(max_abs(Matrix(rin.matrix().diagonal().asDiagonal()) - rout.matrix()), 1e-12);
        // once B is sharp at t1, its reduced density is untouched
        for (std::uint32_t b = 0; b < (1u << n); b++) {
            auto sharp = StateVector::basis(layout, b, 0);
            auto before = reduced_density(sharp, Register::B);
            auto after = reduced_density(apply(u, sharp), Register::B);
            EXPECT_LE(max_abs(before.matrix() - after.matrix()), 1e-12);
        }
    }
}

TEST(Postponement, XorCopyAllSettings) {
    for (int n = 2; n <= 3; n++) {
        auto process = ProcessDescription::grover(n);
        auto full = ParityObservable::full(Register::B, n);
        for (std::uint32_t b = 0; b < process.setting_count(); b++) {
            auto rec = measure(process.initial_state(), full, ForcedOutcome{b});
            auto rep = postpone_projection(process, rec);
            EXPECT_LE(rep.max_deviation, 1e-12);
            ASSERT_TRUE(rep.final_postponed.has_value());
            EXPECT_TRUE(approx_equal(*rep.final_postponed, StateVector::basis(process.layout(), b, b)));
        }
    }
}

TEST(Postponement, PartialParityCommutes) {
    auto p = ProcessDescription::grover(2);
    auto rec = measure(p.initial_state(), obs("B:[10]"), ForcedOutcome{1});
    auto rep = postpone_projection(p, rec);
    EXPECT_EQ(rep.max_deviation, 0.0);
    EXPECT_FALSE(rep.final_postponed.has_value());
}

TEST(Postponement, FailsForMixingUnitary) {
    // U = CX . (H on B controlled by A = 1): settings still correlate from the blank,
    // but a component off the blank gets its B value mixed
    auto layout = RegisterLayout::symmetric(1);
    double r = 1 / std::sqrt(2.0);
    Matrix ch = Matrix::Identity(4, 4);  // index (b << 1) | a
    ch(1, 1) = r;
    ch(1, 3) = r;
    ch(3, 1) = r;
    ch(3, 3) = -r;
    UnitaryOp u(layout, xor_copy_unitary(layout).matrix() * ch);
    auto init = StateVector::from_terms(layout, {{0, 0, 1.0}, {1, 0, 1.0}, {0, 1, 1.0}});
    ProcessDescription p(init, u, {0, 1});
    auto rec = measure(p.initial_state(), ParityObservable::full(Register::B, 1), ForcedOutcome{1});
    try {
        postpone_projection(p, rec);
        FAIL();
    } catch (const InvariantError &e) {
        EXPECT_NE(std::string(e.what()).find("postponement not valid"), std::string::npos);
    }
}
