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

#include "photonlab/engine/multiverse_tree.h"

#include <deque>

namespace photonlab {

namespace {

SimulationNode child_node(const SimulationNode &parent, Branch &&b, size_t id) {
    SimulationNode child;
    child.id = id;
    child.parent = parent.id;
    child.probability = parent.probability * b.probability;
    child.step = parent.classical.inputs_resolved() ? parent.step + 1 : parent.step;
    child.state = std::move(b.state);
    child.classical = std::move(b.classical);
    child.events = std::move(b.events);
    return child;
}

}  // namespace

std::vector<size_t> MultiverseTree::leaves() const {
    std::vector<size_t> out;
    for (const auto &n : nodes) {
        if (n.children.empty()) {
            out.push_back(n.id);
        }
    }
    return out;
}

double MultiverseTree::probability(const std::function<bool(const SimulationNode &)> &pred) const {
    double total = 0;
    for (const auto &n : nodes) {
        if (n.children.empty() && pred(n)) {
            total += n.probability;
        }
    }
    return total;
}

std::map<std::string, double> MultiverseTree::firing_probabilities(const Board &board) const {
    std::map<std::string, double> out;
    const auto &elements = board.elements();
    for (size_t k = 0; k < elements.size(); k++) {
        if (!is_optical(elements[k].spec.kind) || !emits_signal(elements[k].spec.kind)) {
            continue;
        }
        out[elements[k].id] = probability([k](const SimulationNode &n) {
            return n.classical.fired[k] != 0;
        });
    }
    return out;
}

std::vector<size_t> MultiverseTree::nodes_at_step(int step) const {
    std::vector<size_t> out;
    for (const auto &n : nodes) {
        if (n.step == step && n.classical.inputs_resolved()) {
            out.push_back(n.id);
        }
    }
    return out;
}

MultiverseTree run_tree(const Engine &engine, const TreeConfig &config) {
    MultiverseTree tree;
    tree.nodes.push_back(engine.root());
    std::deque<size_t> frontier = {0};
    while (!frontier.empty()) {
        size_t index = frontier.front();
        frontier.pop_front();
        auto &node = tree.nodes[index];
        if (engine.is_terminal(node)) {
            node.terminal = true;
            tree.explored_mass += node.probability;
            continue;
        }
        if (!tree.cancelled && config.cancel != nullptr && config.cancel->load()) {
            tree.cancelled = true;
        }
        if (tree.budget_exhausted || tree.cancelled || (node.classical.inputs_resolved() && node.step >= config.max_steps)) {
            node.truncated = true;
            tree.truncated_mass += node.probability;
            continue;
        }
        auto branches = engine.expand(node);
        if (tree.nodes.size() + branches.size() > config.max_nodes) {
            tree.budget_exhausted = true;
            tree.nodes[index].truncated = true;
            tree.truncated_mass += tree.nodes[index].probability;
            continue;
        }
        for (auto &b : branches) {
            const auto &parent = tree.nodes[index];
            if (parent.probability * b.probability < config.min_branch_probability) {
                tree.truncated_mass += parent.probability * b.probability;
                continue;
            }
            size_t id = tree.nodes.size();
            auto child = child_node(parent, std::move(b), id);
            tree.nodes.push_back(std::move(child));
            tree.nodes[index].children.push_back(id);
            frontier.push_back(id);
        }
        if (tree.nodes[index].children.empty()) {
            tree.nodes[index].truncated = true;
        }
    }
    return tree;
}

Sampler::Sampler(const Engine &engine, TreeConfig config) : engine_(engine), config_(config) {
    nodes_.push_back({engine.root(), false, {}});
}

const std::vector<std::pair<double, size_t>> &Sampler::children_of(size_t index) {
    if (!nodes_[index].expanded) {
        auto branches = engine_.expand(nodes_[index].node);
        std::vector<std::pair<double, size_t>> children;
        for (auto &b : branches) {
            double p = b.probability;
            size_t id = nodes_.size();
            auto child = child_node(nodes_[index].node, std::move(b), id);
            nodes_.push_back({std::move(child), false, {}});
            children.emplace_back(p, id);
        }
        nodes_[index].children = std::move(children);
        nodes_[index].expanded = true;
    }
    return nodes_[index].children;
}

SampleResult Sampler::sample(uint64_t seed, uint64_t run) {
    Rng rng(seed, run);
    SampleResult result;
    result.run = run;
    result.seed = seed;
    size_t index = 0;
    while (true) {
        const auto &node = nodes_[index].node;
        if (engine_.is_terminal(node)) {
            break;
        }
        if (node.classical.inputs_resolved() && node.step >= config_.max_steps) {
            result.truncated = true;
            break;
        }
        const auto &children = children_of(index);
        if (children.empty()) {
            result.truncated = true;
            break;
        }
        double u = rng.uniform();
        double acc = 0;
        size_t pick = children.back().second;
        double picked_p = children.back().first;
        for (const auto &[p, id] : children) {
            acc += p;
            if (u < acc) {
                pick = id;
                picked_p = p;
                break;
            }
        }
        result.path_probability *= picked_p;
        index = pick;
    }
    result.leaf = nodes_[index].node;
    return result;
}

SampleResult sample_run(const Engine &engine, uint64_t seed, uint64_t run) {
    Sampler sampler(engine);
    return sampler.sample(seed, run);
}

}  // namespace photonlab
