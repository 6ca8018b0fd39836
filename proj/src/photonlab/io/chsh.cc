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

#include <cmath>

namespace photonlab {

namespace {

// +1, -1, or 0 when the side did not register exactly one click.
int outcome(bool plus, bool minus) {
    if (plus == minus) {
        return 0;
    }
    return plus ? 1 : -1;
}

ChshEstimate finish(const std::array<double, 4> &sums, const std::array<double, 4> &counts, bool sampled) {
    ChshEstimate est;
    est.counts = counts;
    double variance = 0;
    for (size_t k = 0; k < 4; k++) {
        if (counts[k] <= 0) {
            throw std::domain_error("no coincidences recorded for CHSH setting " + std::to_string(k));
        }
        est.correlators[k] = sums[k] / counts[k];
        if (sampled) {
            variance += (1 - est.correlators[k] * est.correlators[k]) / counts[k];
        }
    }
    est.s = est.correlators[0] + est.correlators[1] + est.correlators[2] - est.correlators[3];
    est.standard_error = std::sqrt(variance);
    return est;
}

}  // namespace

ChshWiring chsh_wiring(const Board &board, std::string_view correlator) {
    const PlacedElement *target = nullptr;
    if (correlator.empty()) {
        for (const auto &e : board.elements()) {
            if (e.spec.kind == ElementKind::Correlator) {
                if (target != nullptr) {
                    throw BoardError("several correlators on the board; name one");
                }
                target = &e;
            }
        }
        if (target == nullptr) {
            throw BoardError("the board has no correlator");
        }
    } else {
        target = board.find(correlator);
        if (target == nullptr || target->spec.kind != ElementKind::Correlator) {
            throw BoardError("'" + std::string(correlator) + "' is not a correlator");
        }
    }
    ChshWiring w;
    std::map<std::string, std::string *> ports = {
        {"a_setting", &w.a_setting}, {"b_setting", &w.b_setting}, {"a_plus", &w.a_plus},
        {"a_minus", &w.a_minus},     {"b_plus", &w.b_plus},       {"b_minus", &w.b_minus}};
    for (const auto &wire : board.wires()) {
        if (wire.to != target->id) {
            continue;
        }
        auto it = ports.find(wire.port);
        if (it == ports.end()) {
            throw BoardError("correlator '" + target->id + "' has no port '" + wire.port + "'");
        }
        *it->second = wire.from;
    }
    for (const auto &[port, slot] : ports) {
        if (slot->empty()) {
            throw BoardError("correlator '" + target->id + "' port '" + port + "' is not wired");
        }
    }
    return w;
}

ChshEstimate chsh_from_tree(const MultiverseTree &tree, const Board &board, const ChshWiring &wiring) {
    size_t as = board.index_of(wiring.a_setting), bs = board.index_of(wiring.b_setting);
    size_t ap = board.index_of(wiring.a_plus), am = board.index_of(wiring.a_minus);
    size_t bp = board.index_of(wiring.b_plus), bm = board.index_of(wiring.b_minus);
    std::array<double, 4> sums{}, counts{};
    for (size_t leaf : tree.leaves()) {
        const auto &node = tree.nodes[leaf];
        const auto &c = node.classical;
        int a = outcome(c.fired[ap], c.fired[am]);
        int b = outcome(c.fired[bp], c.fired[bm]);
        if (a == 0 || b == 0) {
            continue;
        }
        size_t k = 2 * (c.values[as] != 0) + (c.values[bs] != 0);
        sums[k] += node.probability * a * b;
        counts[k] += node.probability;
    }
    return finish(sums, counts, false);
}

ChshEstimate chsh_from_log(const DetectionLog &log, const ChshWiring &wiring) {
    size_t as = log.input_index(wiring.a_setting), bs = log.input_index(wiring.b_setting);
    size_t ap = log.detector_index(wiring.a_plus), am = log.detector_index(wiring.a_minus);
    size_t bp = log.detector_index(wiring.b_plus), bm = log.detector_index(wiring.b_minus);
    std::array<double, 4> sums{}, counts{};
    for (const auto &row : log.rows) {
        int a = outcome(row.detectors[ap], row.detectors[am]);
        int b = outcome(row.detectors[bp], row.detectors[bm]);
        if (a == 0 || b == 0) {
            continue;
        }
        size_t k = 2 * (row.inputs[as] != 0) + (row.inputs[bs] != 0);
        sums[k] += a * b;
        counts[k] += 1;
    }
    return finish(sums, counts, true);
}

std::vector<GoalResult> evaluate_goals(const SetupDocument &doc, const MultiverseTree &tree) {
    auto firing = tree.firing_probabilities(doc.board);
    std::vector<GoalResult> out;
    for (const auto &g : doc.goals) {
        double p = firing.at(g.detector);
        out.push_back({g, p, p >= g.threshold});
    }
    return out;
}

}  // namespace photonlab
