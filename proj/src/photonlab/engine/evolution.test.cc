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

#include "photonlab/engine/evolution.h"

#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "photonlab/engine/multiverse_tree.h"
#include "photonlab/io/fixtures.h"

using namespace photonlab;

using K = ElementKind;

namespace {

double fired(const MultiverseTree &tree, const Board &board, const std::string &id) {
    return tree.firing_probabilities(board).at(id);
}

// Source on the left edge shooting right along row 1 of a 6x3 grid.
Board line_board() {
    Board b(Grid{6, 3});
    b.place(K::SinglePhotonSource, {0, 1}, 0, {}, {}, "src");
    return b;
}

}  // namespace

TEST(propagation, shifts_along_direction_and_drops_leavers) {
    Grid grid{3, 2};
    auto right = single_photon(grid, {1, 0, Direction::Right, Polarization::H});
    auto moved = propagation_step(grid, right);
    std::vector<uint32_t> expected{2, 0, 0, 0};
    EXPECT_EQ(moved.at(expected), Complex(1));
    EXPECT_TRUE(propagation_step(grid, moved).empty());
    auto up = single_photon(grid, {1, 1, Direction::Up, Polarization::V});
    std::vector<uint32_t> up_coords{1, 0, 1, 1};
    EXPECT_EQ(propagation_step(grid, up).at(up_coords), Complex(1));
}

TEST(propagation, lost_branch_splits_off_leaving_amplitude) {
    Board b(Grid{3, 1});
    b.place(K::Rock, {0, 0});
    Engine engine(b);
    auto s = initial_classical_state(b);
    const double a = 0.6;
    const double c = 0.8;
    auto leaving = single_photon(b.grid(), {2, 0, Direction::Right, Polarization::H}).scaled(a);
    auto staying = single_photon(b.grid(), {1, 0, Direction::Right, Polarization::V}).scaled(c);
    std::vector<Entry> entries;
    for (const auto &e : leaving.entries()) {
        entries.push_back(e);
    }
    for (const auto &e : staying.entries()) {
        entries.push_back(e);
    }
    SparseVector state(leaving.layout(), entries);
    auto branches = engine.split_lost(state, s, 1);
    ASSERT_EQ(branches.size(), 2u);
    EXPECT_NEAR(branches[0].probability, a * a, 1e-12);
    EXPECT_EQ(branches[0].events.at(0).label, "lost");
    EXPECT_EQ(branches[0].state.dims().size(), 0u);
    EXPECT_NEAR(branches[1].probability, c * c, 1e-12);
    EXPECT_NEAR(branches[1].state.norm(), c, 1e-12);
}

TEST(evolution, free_photon_is_lost_with_certainty) {
    auto b = line_board();
    Engine engine(b);
    auto tree = run_tree(engine);
    auto leaves = tree.leaves();
    ASSERT_EQ(leaves.size(), 1u);
    const auto &leaf = tree.nodes[leaves[0]];
    EXPECT_TRUE(leaf.terminal);
    EXPECT_EQ(leaf.step, 6);
    EXPECT_EQ(leaf.events.at(0).label, "lost");
    EXPECT_NEAR(tree.explored_mass, 1, 1e-12);
}

TEST(evolution, neutral_density_filter_transmits_complement) {
    for (double a : {0.3, 0.5, 0.9}) {
        auto b = line_board();
        b.place(K::NeutralDensityFilter, {2, 1}, 0, {{"absorption", a}}, {}, "nd");
        b.place(K::Detector, {4, 1}, 0, {}, {}, "D");
        Engine engine(b);
        auto tree = run_tree(engine);
        EXPECT_NEAR(fired(tree, b, "D"), 1 - a, 1e-12);
        double absorbed = tree.probability([](const SimulationNode &n) {
            return !n.events.empty() && n.events.front().element == "nd";
        });
        EXPECT_NEAR(absorbed, a, 1e-12);
    }
}

TEST(evolution, beam_splitter_reflectance_sets_branch_weights) {
    for (double r : {0.0, 0.2, 0.5, 1.0}) {
        auto b = line_board();
        b.place(K::BeamSplitter, {2, 1}, 45, {{"reflectance", r}}, {}, "bs");
        b.place(K::Detector, {2, 0}, 0, {}, {}, "up");
        b.place(K::Detector, {4, 1}, 0, {}, {}, "through");
        Engine engine(b);
        auto tree = run_tree(engine);
        EXPECT_NEAR(fired(tree, b, "up"), r, 1e-12);
        EXPECT_NEAR(fired(tree, b, "through"), 1 - r, 1e-12);
    }
}

TEST(evolution, classical_control_switches_parameter_set) {
    for (int value : {0, 1}) {
        auto b = line_board();
        b.add_node(K::Switch, {{"value", static_cast<double>(value)}}, "sw");
        b.place(K::BeamSplitter, {2, 1}, 45, {{"reflectance", 0.0}}, {{"reflectance", 1.0}}, "bs");
        b.place(K::Detector, {2, 0}, 0, {}, {}, "up");
        b.connect("sw", "bs");
        Engine engine(b);
        auto tree = run_tree(engine);
        EXPECT_NEAR(fired(tree, b, "up"), value, 1e-12);
    }
}


TEST(evolution, random_switch_root_branches_on_inputs) {
    auto b = line_board();
    b.add_node(K::RandomSwitch, {{"probability", 0.3}}, "coin");
    b.place(K::BeamSplitter, {2, 1}, 45, {{"reflectance", 0.0}}, {{"reflectance", 1.0}}, "bs");
    b.place(K::Detector, {2, 0}, 0, {}, {}, "up");
    b.connect("coin", "bs");
    Engine engine(b);
    auto root = engine.root();
    EXPECT_FALSE(root.classical.inputs_resolved());
    EXPECT_EQ(root.photon_count(), 0u);
    EXPECT_FALSE(engine.is_terminal(root));
    auto branches = engine.input_branches(root);
    ASSERT_EQ(branches.size(), 2u);
    EXPECT_NEAR(branches[1].probability, 0.3, 1e-15);
    EXPECT_EQ(branches[1].state.layout().particles().size(), 1u);
    auto tree = run_tree(engine);
    EXPECT_NEAR(fired(tree, b, "up"), 0.3, 1e-12);
}

TEST(evolution, independent_photons_branch_jointly) {
    Board b(Grid{6, 6});
    b.place(K::SinglePhotonSource, {0, 1}, 0, {}, {}, "s1");
    b.place(K::SinglePhotonSource, {0, 4}, 0, {}, {{"wavelength", 700.0}}, "s2");
    b.place(K::BeamSplitter, {2, 1}, 45, {}, {}, "bs1");
    b.place(K::BeamSplitter, {2, 4}, 45, {}, {}, "bs2");
    b.place(K::Detector, {2, 0}, 0, {}, {}, "a_up");
    b.place(K::Detector, {5, 1}, 0, {}, {}, "a_through");
    b.place(K::Detector, {2, 3}, 0, {}, {}, "b_up");
    b.place(K::Detector, {5, 4}, 0, {}, {}, "b_through");
    Engine engine(b);
    auto tree = run_tree(engine);
    auto both_up = tree.probability([&](const SimulationNode &n) {
        return n.classical.fired[b.index_of("a_up")] && n.classical.fired[b.index_of("b_up")];
    });
    EXPECT_NEAR(both_up, 0.25, 1e-12);
    EXPECT_NEAR(tree.explored_mass, 1, 1e-12);
}

TEST(evolution, unitary_phase_preserves_norm) {
    auto doc = fixture("mach-zehnder");
    Engine engine(doc.board);
    auto root = engine.root();
    SparseVector state = root.state;
    for (int step = 1; step <= 6; step++) {
        state = propagation_step(engine.grid(), state);
        auto after = engine.unitary_step(state, root.classical);
        EXPECT_NEAR(after.norm(), state.norm(), 1e-10);
        state = after;
    }
}

TEST(evolution, interfering_branches_merge) {
    auto doc = fixture("mach-zehnder");
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    EXPECT_EQ(tree.leaves().size(), 1u);
    for (const auto &node : tree.nodes) {
        EXPECT_LE(node.children.size(), 1u);
    }
}

TEST(evolution, nondemolition_detector_partially_destroys_interference) {
    auto doc = fixture("nondemolition-interference");
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    double w = 0.5;
    double expected = w / 4 + std::pow(1 - std::sqrt(1 - w), 2) / 4;
    EXPECT_NEAR(fired(tree, doc.board, "D2"), expected, 1e-9);
}

TEST(evolution, operator_cache_is_per_configuration) {
    auto doc = fixture("teleportation");
    Engine engine(doc.board);
    auto s = initial_classical_state(doc.board);
    auto a = engine.operators_for(s);
    EXPECT_EQ(a.get(), engine.operators_for(s).get());
    s.fired[doc.board.index_of("m_pair_v")] = 1;
    evaluate_wires(doc.board, s);
    EXPECT_NE(a.get(), engine.operators_for(s).get());
    EXPECT_FALSE(a->gates.empty());
}

TEST(invariants, every_fixture_conserves_probability_step_by_step) {
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        Engine engine(doc.board);
        auto tree = run_tree(engine);
        EXPECT_NEAR(tree.explored_mass + tree.truncated_mass, 1, 1e-9) << name;
        EXPECT_NEAR(tree.explored_mass, 1, 1e-9) << name;
        for (const auto &node : tree.nodes) {
            if (node.photon_count() > 0) {
                EXPECT_NEAR(node.state.norm(), 1, 1e-9) << name << " node " << node.id;
            }
            if (node.children.empty()) {
                continue;
            }
            double sum = 0;
            for (auto c : node.children) {
                sum += tree.nodes[c].probability;
            }
            EXPECT_NEAR(sum, node.probability, 1e-9) << name << " node " << node.id;
        }
    }
}

TEST(invariants, povm_completeness_on_every_fixture_configuration) {
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        Engine engine(doc.board);
        auto tree = run_tree(engine);
        std::set<std::vector<int64_t>> seen;
        for (const auto &node : tree.nodes) {
            if (!seen.insert(node.classical.values).second) {
                continue;
            }
            auto check = engine.check_povm(node.classical);
            EXPECT_LT(check.completeness_error, 1e-10) << name;
            EXPECT_LT(check.root_error, 1e-10) << name;
        }
    }
}

TEST(invariants, sparse_states_stay_small) {
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        Engine engine(doc.board);
        run_tree(engine);
        EXPECT_LT(engine.peak_entries(), 100000u) << name;
        EXPECT_GT(engine.peak_entries(), 0u) << name;
    }
}

