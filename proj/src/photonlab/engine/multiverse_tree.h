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

#ifndef PHOTONLAB_ENGINE_MULTIVERSE_TREE_H
#define PHOTONLAB_ENGINE_MULTIVERSE_TREE_H

#include <atomic>
#include <functional>

#include "photonlab/engine/evolution.h"
#include "photonlab/util/rng.h"

namespace photonlab {

struct TreeConfig {
    int max_steps = 200;
    double min_branch_probability = 1e-9;
    size_t max_nodes = 100000;
    /// Checked between expansions; when it becomes true the remaining frontier is truncated.
    const std::atomic<bool> *cancel = nullptr;
};

struct MultiverseTree {
    std::vector<SimulationNode> nodes;
    /// Probability of leaves that ended naturally (no photons left).
    double explored_mass = 0;
    /// Probability cut off by the step limit, the branch threshold or the node budget.
    double truncated_mass = 0;
    bool budget_exhausted = false;
    bool cancelled = false;

    const SimulationNode &root() const {
        return nodes.front();
    }
    /// Indices of nodes without children (terminal or truncated).
    std::vector<size_t> leaves() const;
    /// Total leaf probability satisfying `pred`.
    double probability(const std::function<bool(const SimulationNode &)> &pred) const;
    /// Probability that each detector-like element (detector, bomb, nondemolition detector) fired.
    std::map<std::string, double> firing_probabilities(const Board &board) const;
    /// Nodes at a given step, in breadth-first order.
    std::vector<size_t> nodes_at_step(int step) const;
};

/// Breadth-first expansion of every branch.
MultiverseTree run_tree(const Engine &engine, const TreeConfig &config = {});

struct SampleResult {
    uint64_t run = 0;
    uint64_t seed = 0;
    SimulationNode leaf;
    /// Probability of the sampled path.
    double path_probability = 1;
    bool truncated = false;
};

/// Monte Carlo trajectories. Children of visited nodes are memoized, so repeated runs walk a
/// shared lazily expanded tree; each run draws from its own stream seeded by (seed, run).
class Sampler {
   public:
    explicit Sampler(const Engine &engine, TreeConfig config = {});

    SampleResult sample(uint64_t seed, uint64_t run);

   private:
    struct LazyNode {
        SimulationNode node;
        bool expanded = false;
        std::vector<std::pair<double, size_t>> children;
    };
    const std::vector<std::pair<double, size_t>> &children_of(size_t index);

    const Engine &engine_;
    TreeConfig config_;
    std::vector<LazyNode> nodes_;
};

/// One trajectory from a fresh sampler.
SampleResult sample_run(const Engine &engine, uint64_t seed, uint64_t run = 0);

}  // namespace photonlab

#endif
