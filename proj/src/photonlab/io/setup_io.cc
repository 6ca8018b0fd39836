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

#include "photonlab/io/setup_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace photonlab {

namespace {

constexpr std::string_view kFormatName = "photonlab-setup";

void require_keys(const Json &obj, const std::string &where, const std::set<std::string> &allowed) {
    if (!obj.is_object()) {
        throw SetupError(where, "expected an object");
    }
    for (const auto &[key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw SetupError(where + "." + key, "unknown field");
        }
    }
}

const Json &field(const Json &obj, const std::string &where, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SetupError(where + "." + key, "missing required field");
    }
    return *it;
}

std::string get_string(const Json &v, const std::string &where) {
    if (!v.is_string()) {
        throw SetupError(where, "expected a string");
    }
    return v.get<std::string>();
}

int get_int(const Json &v, const std::string &where) {
    if (!v.is_number_integer()) {
        throw SetupError(where, "expected an integer");
    }
    return v.get<int>();
}

double get_number(const Json &v, const std::string &where) {
    if (!v.is_number()) {
        throw SetupError(where, "expected a number");
    }
    return v.get<double>();
}

Json params_json(const ElementParams &params) {
    Json out = Json::object();
    for (const auto &[key, value] : params) {
        if (const auto *d = std::get_if<double>(&value)) {
            out[key] = *d;
        } else {
            out[key] = std::get<std::string>(value);
        }
    }
    return out;
}

std::string describe_position(std::string_view text, size_t byte) {
    size_t line = 1;
    size_t col = 1;
    for (size_t k = 0; k < byte && k < text.size(); k++) {
        if (text[k] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ElementParams parse_params(const Json &v, const std::string &where) {
    if (!v.is_object()) {
        throw SetupError(where, "expected an object");
    }
    ElementParams out;
    for (const auto &[key, value] : v.items()) {
        if (value.is_number()) {
            out[key] = value.get<double>();
        } else if (value.is_string()) {
            out[key] = value.get<std::string>();
        } else {
            throw SetupError(where + "." + key, "parameter values must be numbers or strings");
        }
    }
    return out;
}

SetupError::SetupError(std::string where, const std::string &message)
    : std::invalid_argument(where + ": " + message), where_(std::move(where)) {
}

SetupDocument parse_setup(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw SetupError(describe_position(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
    }
    return parse_setup_json(root);
}

PlacedElement parse_element(const Json &e, const std::string &where) {
    require_keys(e, where, {"id", "kind", "x", "y", "rotation", "params", "params_on"});
    PlacedElement placed;
    placed.id = get_string(field(e, where, "id"), where + ".id");
    auto kind_text = get_string(field(e, where, "kind"), where + ".kind");
    try {
        placed.spec.kind = parse_kind(kind_text);
    } catch (const std::invalid_argument &ex) {
        throw SetupError(where + ".kind", ex.what());
    }
    if (e.contains("x") != e.contains("y")) {
        throw SetupError(where, "x and y must be given together");
    }
    if (e.contains("x")) {
        placed.cell = Cell{get_int(e["x"], where + ".x"), get_int(e["y"], where + ".y")};
    }
    if (e.contains("rotation")) {
        placed.spec.rotation = get_int(e["rotation"], where + ".rotation");
    }
    if (e.contains("params")) {
        placed.spec.params = parse_params(e["params"], where + ".params");
    }
    if (e.contains("params_on")) {
        placed.spec.params_on = parse_params(e["params_on"], where + ".params_on");
    }
    return placed;
}

Json element_json(const PlacedElement &e) {
    Json j;
    j["id"] = e.id;
    j["kind"] = kind_name(e.spec.kind);
    if (e.cell) {
        j["x"] = e.cell->x;
        j["y"] = e.cell->y;
        j["rotation"] = e.spec.rotation;
    }
    if (!e.spec.params.empty()) {
        j["params"] = params_json(e.spec.params);
    }
    if (!e.spec.params_on.empty()) {
        j["params_on"] = params_json(e.spec.params_on);
    }
    return j;
}

SetupDocument parse_setup_json(const Json &root) {
    const std::string top = "$";
    require_keys(root, top, {"format", "version", "name", "description", "grid", "symmetrize_identical", "elements",
                             "wires", "goals"});
    if (get_string(field(root, top, "format"), "$.format") != kFormatName) {
        throw SetupError("$.format", "expected \"" + std::string(kFormatName) + "\"");
    }
    int version = get_int(field(root, top, "version"), "$.version");
    if (version != kSetupFormatVersion) {
        throw SetupError("$.version", "unsupported version " + std::to_string(version));
    }
    SetupDocument doc;
    if (root.contains("name")) {
        doc.name = get_string(root["name"], "$.name");
    }
    if (root.contains("description")) {
        doc.description = get_string(root["description"], "$.description");
    }
    Grid grid;
    if (root.contains("grid")) {
        const auto &g = root["grid"];
        require_keys(g, "$.grid", {"width", "height"});
        grid.width = get_int(field(g, "$.grid", "width"), "$.grid.width");
        grid.height = get_int(field(g, "$.grid", "height"), "$.grid.height");
        if (grid.width <= 0 || grid.height <= 0 || grid.width > 64 || grid.height > 64) {
            throw SetupError("$.grid", "width and height must be between 1 and 64");
        }
    }
    doc.board = Board(grid);
    if (root.contains("symmetrize_identical")) {
        if (!root["symmetrize_identical"].is_boolean()) {
            throw SetupError("$.symmetrize_identical", "expected a boolean");
        }
        doc.board.set_symmetrize_identical(root["symmetrize_identical"].get<bool>());
    }
    const auto &elements = field(root, top, "elements");
    if (!elements.is_array()) {
        throw SetupError("$.elements", "expected an array");
    }
    for (size_t k = 0; k < elements.size(); k++) {
        std::string where = "$.elements[" + std::to_string(k) + "]";
        auto placed = parse_element(elements[k], where);
        try {
            doc.board.add(std::move(placed));
        } catch (const BoardError &ex) {
            throw SetupError(where, ex.what());
        }
    }
    if (root.contains("wires")) {
        const auto &wires = root["wires"];
        if (!wires.is_array()) {
            throw SetupError("$.wires", "expected an array");
        }
        for (size_t k = 0; k < wires.size(); k++) {
            std::string where = "$.wires[" + std::to_string(k) + "]";
            const auto &w = wires[k];
            require_keys(w, where, {"from", "to", "port"});
            std::string port = w.contains("port") ? get_string(w["port"], where + ".port") : "control";
            try {
                doc.board.connect(
                    get_string(field(w, where, "from"), where + ".from"), get_string(field(w, where, "to"), where + ".to"),
                    port);
            } catch (const BoardError &ex) {
                throw SetupError(where, ex.what());
            }
        }
    }
    if (root.contains("goals")) {
        const auto &goals = root["goals"];
        if (!goals.is_array()) {
            throw SetupError("$.goals", "expected an array");
        }
        for (size_t k = 0; k < goals.size(); k++) {
            std::string where = "$.goals[" + std::to_string(k) + "]";
            const auto &g = goals[k];
            require_keys(g, where, {"detector", "threshold"});
            Goal goal{
                get_string(field(g, where, "detector"), where + ".detector"),
                get_number(field(g, where, "threshold"), where + ".threshold")};
            const auto *target = doc.board.find(goal.detector);
            if (target == nullptr || !emits_signal(target->spec.kind) || !is_optical(target->spec.kind)) {
                throw SetupError(where + ".detector", "'" + goal.detector + "' is not a detector on the board");
            }
            if (goal.threshold < 0 || goal.threshold > 1) {
                throw SetupError(where + ".threshold", "must be in [0, 1]");
            }
            doc.goals.push_back(goal);
        }
    }
    return doc;
}

std::string serialize_setup(const SetupDocument &doc) {
    return setup_json(doc).dump(2) + "\n";
}

Json setup_json(const SetupDocument &doc) {
    Json root;
    root["format"] = kFormatName;
    root["version"] = kSetupFormatVersion;
    root["name"] = doc.name;
    root["description"] = doc.description;
    root["grid"] = {{"width", doc.board.grid().width}, {"height", doc.board.grid().height}};
    root["symmetrize_identical"] = doc.board.symmetrize_identical();
    Json elements = Json::array();
    for (const auto &e : doc.board.elements()) {
        elements.push_back(element_json(e));
    }
    root["elements"] = std::move(elements);
    Json wires = Json::array();
    for (const auto &w : doc.board.wires()) {
        wires.push_back({{"from", w.from}, {"to", w.to}, {"port", w.port}});
    }
    root["wires"] = std::move(wires);
    Json goals = Json::array();
    for (const auto &g : doc.goals) {
        goals.push_back({{"detector", g.detector}, {"threshold", g.threshold}});
    }
    root["goals"] = std::move(goals);
    return root;
}

SetupDocument load_setup_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SetupError(path, "cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_setup(buffer.str());
}

}  // namespace photonlab
