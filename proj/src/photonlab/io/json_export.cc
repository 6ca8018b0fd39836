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

#include "photonlab/io/json_export.h"

namespace photonlab {

namespace {

std::string key_label(const Layout &layout, uint64_t key) {
    std::string out;
    std::string current;
    for (size_t axis = 0; axis < layout.rank(); axis++) {
        const auto &dim = layout.dims()[axis];
        auto particle = std::string(dim.particle());
        if (axis > 0) {
            out += particle == current ? "," : " ";
        }
        current = particle;
        out += dim.labels[layout.coordinate(key, axis)];
    }
    return out;
}

Json cell_json(const std::optional<Cell> &cell) {
    if (!cell) {
        return nullptr;
    }
    return Json::array({cell->x, cell->y});
}

}  // namespace

Json state_entries_json(const SparseVector &state) {
    Json out = Json::array();
    for (const auto &e : state.entries()) {
        out.push_back(Json::array({key_label(state.layout(), e.key), e.amplitude.real(), e.amplitude.imag()}));
    }
    return out;
}

Json ket_json(const SparseVector &state, PolarizationBasis basis, ComplexFormat format) {
    Json components = Json::array();
    for (const auto &c : ket_components(state, basis, format)) {
        components.push_back({
            {"label", c.label()},
            {"coordinates", c.coordinates},
            {"re", c.amplitude.real()},
            {"im", c.amplitude.imag()},
            {"probability", c.probability},
            {"display", {{"first", c.formatted.first}, {"second", c.formatted.second}, {"text", c.formatted.text}}},
        });
    }
    return {
        {"basis", basis_name(basis)},
        {"format", format_name(format)},
        {"particles", state.layout().particles()},
        {"components", std::move(components)},
    };
}

Json events_json(const std::vector<DetectionEvent> &events) {
    Json out = Json::array();
    for (const auto &e : events) {
        out.push_back({{"step", e.step}, {"element", e.element}, {"cell", cell_json(e.cell)}, {"label", e.label}});
    }
    return out;
}

Json node_json(const SimulationNode &node, const Board &board) {
    Json wires = Json::object();
    Json fired = Json::array();
    Json inputs = Json::object();
    const auto &elements = board.elements();
    for (size_t k = 0; k < elements.size(); k++) {
        const auto &c = node.classical;
        if (c.values[k] != 0) {
            wires[elements[k].id] = c.values[k];
        }
        if (c.fired[k]) {
            fired.push_back(elements[k].id);
        }
        if (elements[k].spec.kind == ElementKind::RandomSwitch && c.random_inputs[k] >= 0) {
            inputs[elements[k].id] = c.random_inputs[k];
        }
    }
    return {
        {"id", node.id},
        {"parent", node.parent ? Json(*node.parent) : Json(nullptr)},
        {"probability", node.probability},
        {"step", node.step},
        {"terminal", node.terminal},
        {"truncated", node.truncated},
        {"photons", node.photon_count()},
        {"inputs", std::move(inputs)},
        {"events", events_json(node.events)},
        {"record", events_json(node.classical.record)},
        {"fired", std::move(fired)},
        {"wires", std::move(wires)},
        {"state", state_entries_json(node.state)},
        {"children", node.children},
    };
}

Json tree_json(const MultiverseTree &tree, const Board &board) {
    Json nodes = Json::array();
    for (const auto &n : tree.nodes) {
        nodes.push_back(node_json(n, board));
    }
    return {
        {"format", "photonlab-tree"},
        {"version", 1},
        {"explored_mass", tree.explored_mass},
        {"truncated_mass", tree.truncated_mass},
        {"budget_exhausted", tree.budget_exhausted},
        {"cancelled", tree.cancelled},
        {"nodes", std::move(nodes)},
    };
}

Json report_json(const EntanglementReport &report) {
    Json out = {{"particles", report.particles}, {"entropies", report.entropies}};
    if (report.graph) {
        Json anchors = Json::array();
        for (const auto &p : report.graph->anchors) {
            anchors.push_back(Json::array({p.x, p.y}));
        }
        out["graph"] = {
            {"anchors", std::move(anchors)},
            {"equilibrium", Json::array({report.graph->equilibrium.x, report.graph->equilibrium.y})},
            {"widths", report.graph->widths},
        };
    } else {
        out["graph"] = nullptr;
    }
    return out;
}

Json chsh_json(const ChshEstimate &estimate) {
    return {
        {"correlators", estimate.correlators},
        {"counts", estimate.counts},
        {"S", estimate.s},
        {"standard_error", estimate.standard_error},
    };
}

Json operator_json(const SparseOperator &op) {
    Json entries = Json::array();
    for (const auto &e : op.entries()) {
        entries.push_back({
            {"out", key_label(op.out_layout(), e.out)},
            {"in", key_label(op.in_layout(), e.in)},
            {"re", e.value.real()},
            {"im", e.value.imag()},
        });
    }
    return entries;
}

}  // namespace photonlab
