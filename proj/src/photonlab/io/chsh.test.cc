// Copyright 2026 The Photonlab Authors
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

#include "photonlab/io/chsh.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "photonlab/io/fixtures.h"

using namespace photonlab;

namespace {

ChshEstimate exact(const char *name) {
    auto doc = fixture(name);
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    return chsh_from_tree(tree, doc.board, chsh_wiring(doc.board));
}

}  // namespace

TEST(chsh, wiring_reads_named_ports) {
    auto doc = fixture("bell-chsh");
    auto w = chsh_wiring(doc.board, "chsh");
    EXPECT_EQ(w.a_setting, "alice_setting");
    EXPECT_EQ(w.b_setting, "bob_setting");
    EXPECT_EQ(w.a_plus, "a_plus");
    EXPECT_EQ(w.b_minus, "b_minus");
    doc.board.disconnect("b_minus", "chsh");
    EXPECT_THROW(chsh_wiring(doc.board), BoardError);
    EXPECT_THROW(chsh_wiring(fixture("mach-zehnder").board), BoardError);
}

TEST(chsh, entangled_pair_reaches_tsirelson_bound) {
    auto e = exact("bell-chsh");
    EXPECT_NEAR(e.s, 2 * std::numbers::sqrt2, 1e-9);
    for (int k = 0; k < 4; k++) {
        EXPECT_NEAR(std::abs(e.correlators[k]), std::numbers::sqrt2 / 2, 1e-9) << k;
        EXPECT_NEAR(e.counts[k], 0.25, 1e-9);
    }
    EXPECT_EQ(e.standard_error, 0);
}

TEST(chsh, independent_photons_respect_the_classical_bound) {
    auto e = exact("chsh-local");
    EXPECT_LE(std::abs(e.s), 2 + 1e-9);
    EXPECT_NEAR(e.s, e.correlators[0] + e.correlators[1] + e.correlators[2] - e.correlators[3], 1e-12);
}

TEST(chsh, sampled_estimate_agrees_within_three_standard_errors) {
    auto doc = fixture("bell-chsh");
    Engine engine(doc.board);
    auto wiring = chsh_wiring(doc.board);
    auto log = sample_log(engine, 2026, 10000);
    auto sampled = chsh_from_log(log, wiring);
    double total = 0;
    for (double c : sampled.counts) {
        total += c;
    }
    EXPECT_EQ(total, 10000);
    EXPECT_GT(sampled.standard_error, 0.01);
    EXPECT_LT(sampled.standard_error, 0.05);
    EXPECT_LT(std::abs(sampled.s - 2 * std::numbers::sqrt2), 3 * sampled.standard_error);
}

TEST(chsh, goals_compare_detector_probability_to_threshold) {
    auto doc = fixture("mach-zehnder");
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    auto results = evaluate_goals(doc, tree);
    ASSERT_EQ(results.size(), 1u);
    EXPECT_TRUE(results[0].met);
    EXPECT_NEAR(results[0].probability, 1.0, 1e-9);
    doc.goals = {{"D2", 0.1}};
    EXPECT_FALSE(evaluate_goals(doc, tree)[0].met);
}
