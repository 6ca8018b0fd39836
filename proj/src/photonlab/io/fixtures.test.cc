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

#include "photonlab/io/fixtures.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "photonlab/engine/multiverse_tree.h"

using namespace photonlab;
using std::numbers::pi;

namespace {

std::map<std::string, double> firing(const SetupDocument &doc) {
    Engine engine(doc.board);
    return run_tree(engine).firing_probabilities(doc.board);
}

double firing(const SetupDocument &doc, const std::string &detector) {
    return firing(doc).at(detector);
}

/// Probability of leaves where `pred(values)` holds, values indexed by element id.
double leaf_probability(const SetupDocument &doc, const std::function<bool(const std::function<int64_t(const char *)> &)> &pred) {
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    return tree.probability([&](const SimulationNode &n) {
        auto value = [&](const char *id) {
            return n.classical.values[doc.board.index_of(id)];
        };
        return pred(value);
    });
}

struct Expected {
    const char *fixture;
    const char *detector;
    double probability;
};

}  // namespace

TEST(fixtures, catalog_is_complete_and_unknown_names_throw) {
    EXPECT_EQ(fixture_names().size(), 20u);
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        EXPECT_EQ(doc.name, name);
        EXPECT_FALSE(doc.description.empty());
        EXPECT_NO_THROW(doc.board.validate());
    }
    EXPECT_THROW(fixture("no-such-experiment"), std::out_of_range);
}

TEST(fixtures, detector_probabilities) {
    const Expected table[] = {
        {"michelson-morley", "D", 1.0},
        {"mach-zehnder", "D1", 1.0},
        {"mach-zehnder", "D2", 0.0},
        {"sagnac", "D_out", 0.0},
        {"three-polarizer", "D", 0.125},
        {"elitzur-vaidman", "D1", 0.25},
        {"elitzur-vaidman", "D2", 0.25},
        {"elitzur-vaidman", "bomb", 0.5},
        {"quantum-eraser", "D1", 0.0},
        {"quantum-eraser", "D2", 0.5},
        {"nondemolition-interference", "ND", 0.25},
        {"deutsch-jozsa", "D1", 0.0},
        {"deutsch-jozsa", "D2", 1.0},
        {"bb84", "bob_0", 0.5},
        {"bb84", "bob_1", 0.5},
        {"state-discrimination", "guess_h", 0.5},
        {"teleportation", "bob", 1.0},
        {"teleportation", "m_input_h", 0.5},
        {"teleportation", "m_pair_v", 0.5},
        {"ghz", "D_up", 1.0},
        {"w-state", "D_left", 1.0},
        {"hong-ou-mandel", "D_right", 0.5},
        {"hong-ou-mandel-distinguishable", "D_right", 0.75},
    };
    for (const auto &row : table) {
        EXPECT_NEAR(firing(fixture(row.fixture), row.detector), row.probability, 1e-9)
            << row.fixture << " " << row.detector;
    }
}

TEST(fixtures, nondemolition_which_path_partially_destroys_interference) {
    auto p = firing(fixture("nondemolition-interference"));
    // Half the photons pass the nondemolition arm, half of those are flagged; the flagged quarter
    // splits evenly, the remaining coherent part interferes with amplitude sqrt(1/2).
    double coherent = 0.5 * (1 + std::sqrt(0.5));
    EXPECT_NEAR(p["D1"] + p["D2"], 1.0, 1e-9);
    EXPECT_NEAR(p["D1"], coherent, 1e-9);
}

TEST(fixtures, optical_diode_blocks_the_reflected_photon) {
    auto doc = fixture("optical-diode");
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    double blocked = tree.probability([](const SimulationNode &n) {
        return n.events.size() == 1 && n.events[0].element == "pol_in" && n.events[0].label == "absorbed";
    });
    EXPECT_NEAR(blocked, 1.0, 1e-9);
}

TEST(fixtures, three_polarizer_variants) {
    auto doc = fixture("three-polarizer");
    EXPECT_NEAR(firing(doc, "D"), 0.125, 1e-9);

    auto h_input = doc;
    auto source = h_input.board.find("source")->spec;
    source.params = {{"angle", 0.0}};
    h_input.board.replace_spec("source", source);
    EXPECT_NEAR(firing(h_input, "D"), 0.25, 1e-9);

    auto crossed = h_input;
    crossed.board.remove("pol_d");
    EXPECT_NEAR(firing(crossed, "D"), 0.0, 1e-12);
}

TEST(fixtures, elitzur_vaidman_without_bomb_keeps_dark_port_dark) {
    auto doc = fixture("elitzur-vaidman");
    doc.goals.clear();
    doc.board.remove("bomb");
    auto p = firing(doc);
    EXPECT_NEAR(p["D1"], 1.0, 1e-9);
    EXPECT_NEAR(p["D2"], 0.0, 1e-12);
}

TEST(fixtures, zeno_transmission_approaches_one) {
    double previous = 0;
    for (int k : {2, 4, 8}) {
        double expected = std::pow(std::cos(pi / (2 * k)), 2 * k);
        double p = firing(zeno_fixture(k), "D");
        EXPECT_NEAR(p, expected, 1e-9) << k;
        EXPECT_GT(p, previous);
        previous = p;
    }
}

TEST(fixtures, bb84_matching_bases_share_the_key_bit) {
    auto doc = fixture("bb84");
    double agree = leaf_probability(doc, [](const auto &v) {
        return v("bases_differ") == 0 && v("key_bit") == v("alice_bit");
    });
    double disagree = leaf_probability(doc, [](const auto &v) {
        return v("bases_differ") == 0 && v("key_bit") != v("alice_bit");
    });
    EXPECT_NEAR(agree, 0.5, 1e-9);
    EXPECT_NEAR(disagree, 0.0, 1e-12);
    double mismatched_one = leaf_probability(doc, [](const auto &v) {
        return v("bases_differ") == 1 && v("key_bit") == 1;
    });
    EXPECT_NEAR(mismatched_one, 0.25, 1e-9);
}

TEST(fixtures, state_discrimination_succeeds_with_cos_squared_pi_over_8) {
    auto doc = fixture("state-discrimination");
    double success = leaf_probability(doc, [](const auto &v) {
        return (v("which") == 0 && v("guess_h") == 1) || (v("which") == 1 && v("guess_d") == 1);
    });
    EXPECT_NEAR(success, std::pow(std::cos(pi / 8), 2), 1e-9);
}

TEST(fixtures, ekert_matching_bases_give_equal_keys) {
    auto doc = fixture("ekert");
    double same = leaf_probability(doc, [](const auto &v) {
        return v("bases_differ") == 0;
    });
    double mismatch = leaf_probability(doc, [](const auto &v) {
        return v("bases_differ") == 0 && v("alice_key") != v("bob_key");
    });
    EXPECT_NEAR(same, 0.5, 1e-9);
    EXPECT_NEAR(mismatch, 0.0, 1e-12);
}

TEST(fixtures, hong_ou_mandel_coincidences) {
    auto coincidence = [](const char *name) {
        return leaf_probability(fixture(name), [](const auto &v) {
            return v("coincidence") == 1;
        });
    };
    EXPECT_NEAR(coincidence("hong-ou-mandel"), 0.0, 1e-12);
    EXPECT_NEAR(coincidence("hong-ou-mandel-distinguishable"), 0.5, 1e-9);
}

TEST(fixtures, entangled_sources_always_fire_every_detector) {
    for (const char *name : {"ghz", "w-state"}) {
        auto p = firing(fixture(name));
        for (const char *d : {"D_right", "D_up", "D_left"}) {
            EXPECT_NEAR(p[d], 1.0, 1e-9) << name << " " << d;
        }
    }
}
