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

#include "photonlab/serve/serve_api.h"

#include "photonlab/io/fixtures.h"

namespace photonlab {

namespace {

struct ApiError : std::runtime_error {
    int status;
    std::string where;
    ApiError(int status, const std::string &message, std::string where = "")
        : std::runtime_error(message), status(status), where(std::move(where)) {
    }
};

std::vector<std::string> split_path(const std::string &path) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : path.substr(0, path.find('?'))) {
        if (c == '/') {
            if (!current.empty()) {
                parts.push_back(std::move(current));
            }
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) {
        parts.push_back(std::move(current));
    }
    return parts;
}

SetupDocument setup_from_body(const Json &body) {
    if (body.contains("fixture")) {
        if (!body["fixture"].is_string()) {
            throw ApiError(400, "fixture must be a string", "$.fixture");
        }
        try {
            return fixture(body["fixture"].get<std::string>());
        } catch (const std::out_of_range &e) {
            throw ApiError(404, e.what(), "$.fixture");
        }
    }
    if (body.contains("setup")) {
        return parse_setup_json(body["setup"]);
    }
    throw ApiError(400, "request needs a \"setup\" document or a \"fixture\" name");
}

template <typename T>
T optional_field(const Json &body, const char *key, T fallback) {
    if (!body.contains(key)) {
        return fallback;
    }
    try {
        return body[key].get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ApiError(400, std::string("field has the wrong type"), std::string("$.") + key);
    }
}

std::string required_string(const Json &body, const char *key) {
    if (!body.contains(key) || !body[key].is_string()) {
        throw ApiError(400, "missing string field", std::string("$.") + key);
    }
    return body[key].get<std::string>();
}

Json action_json(const LocalAction &action, PolarizationBasis basis) {
    return std::visit(
        [&](const auto &a) -> Json {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, UnitaryAction>) {
                return {{"type", "unitary"}, {"entries", operator_json(operator_in_basis(a.op, basis))}};
            } else if constexpr (std::is_same_v<A, TwoPhotonAction>) {
                return {{"type", "two_photon"}, {"entries", operator_json(operator_in_basis(a.op, basis))}};
            } else if constexpr (std::is_same_v<A, MeasurementAction>) {
                Json outcomes = Json::array();
                for (const auto &o : a.outcomes) {
                    outcomes.push_back({
                        {"label", o.label},
                        {"weight", o.weight},
                        {"destructive", o.destructive},
                        {"projection", operator_json(operator_in_basis(o.projection(), basis))},
                    });
                }
                return {{"type", "measurement"}, {"outcomes", std::move(outcomes)}};
            } else if constexpr (std::is_same_v<A, SourceAction>) {
                Json dirs = Json::array();
                for (auto d : a.directions) {
                    dirs.push_back(direction_label(d));
                }
                return {
                    {"type", "source"},
                    {"directions", std::move(dirs)},
                    {"wavelength", a.wavelength},
                    {"polarization", ket_json(a.polarization, basis, ComplexFormat::Cartesian)}};
            } else {
                return {{"type", "inert"}};
            }
        },
        action);
}

}  // namespace

void ServeApi::Session::reset(SetupDocument next) {
    Engine engine_check(next.board);
    doc = std::move(next);
    engine.reset();
    tree.reset();
    log.reset();
}

const Engine &ServeApi::Session::ensure_engine() {
    if (!engine) {
        engine = std::make_unique<Engine>(doc.board);
    }
    return *engine;
}

size_t ServeApi::session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<ServeApi::Session> ServeApi::find_session(const std::string &id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        throw ApiError(404, "no session '" + id + "'");
    }
    return it->second;
}

Json ServeApi::create_session(const Json &body) {
    auto session = std::make_shared<Session>();
    session->reset(body.contains("setup") || body.contains("fixture") ? setup_from_body(body) : SetupDocument{});
    std::string id;
    {
        std::lock_guard lock(mutex_);
        id = "s" + std::to_string(next_id_++);
        sessions_[id] = session;
    }
    return {{"session", id}, {"setup", setup_json(session->doc)}};
}

Json ServeApi::session_call(Session &s, const std::string &action, const Json &body, ApiResponse &response) {
    if (action == "setup") {
        return setup_json(s.doc);
    }
    if (action == "load") {
        s.reset(setup_from_body(body));
        return {{"setup", setup_json(s.doc)}};
    }
    if (action == "edit") {
        auto op = required_string(body, "op");
        SetupDocument next = s.doc;
        auto &board = next.board;
        if (op == "place") {
            if (!body.contains("element")) {
                throw ApiError(400, "missing element", "$.element");
            }
            board.add(parse_element(body["element"], "$.element"));
        } else if (op == "remove") {
            auto id = required_string(body, "id");
            board.remove(id);
            std::erase_if(next.goals, [&](const Goal &g) {
                return g.detector == id;
            });
        } else if (op == "update") {
            auto id = required_string(body, "id");
            const auto *current = board.find(id);
            if (current == nullptr) {
                throw ApiError(404, "no element '" + id + "'", "$.id");
            }
            ElementSpec spec = current->spec;
            if (body.contains("kind")) {
                spec.kind = parse_kind(required_string(body, "kind"));
            }
            spec.rotation = optional_field<int>(body, "rotation", spec.rotation);
            if (body.contains("params")) {
                spec.params = parse_params(body["params"], "$.params");
            }
            if (body.contains("params_on")) {
                spec.params_on = parse_params(body["params_on"], "$.params_on");
            }
            board.replace_spec(id, spec);
        } else if (op == "move") {
            auto id = required_string(body, "id");
            if (body.contains("x") && body.contains("y")) {
                board.move(id, Cell{optional_field<int>(body, "x", 0), optional_field<int>(body, "y", 0)});
            } else {
                board.move(id, std::nullopt);
            }
        } else if (op == "connect") {
            board.connect(
                required_string(body, "from"), required_string(body, "to"),
                optional_field<std::string>(body, "port", "control"));
        } else if (op == "disconnect") {
            if (board.disconnect(required_string(body, "from"), required_string(body, "to")) == 0) {
                throw ApiError(404, "no such wire");
            }
        } else {
            throw ApiError(400, "unknown edit op '" + op + "'", "$.op");
        }
        s.reset(std::move(next));
        return {{"setup", setup_json(s.doc)}};
    }
    if (action == "expand") {
        TreeConfig config;
        config.max_steps = optional_field<int>(body, "max_steps", config.max_steps);
        config.min_branch_probability =
            optional_field<double>(body, "min_probability", config.min_branch_probability);
        config.max_nodes = optional_field<size_t>(body, "max_nodes", config.max_nodes);
        config.cancel = &s.cancel;
        s.cancel = false;
        s.tree = run_tree(s.ensure_engine(), config);
        Json firing = Json::object();
        for (const auto &[id, p] : s.tree->firing_probabilities(s.doc.board)) {
            firing[id] = p;
        }
        return {
            {"nodes", s.tree->nodes.size()},
            {"leaves", s.tree->leaves().size()},
            {"explored_mass", s.tree->explored_mass},
            {"truncated_mass", s.tree->truncated_mass},
            {"budget_exhausted", s.tree->budget_exhausted},
            {"cancelled", s.tree->cancelled},
            {"detectors", std::move(firing)},
        };
    }
    if (action == "tree") {
        if (!s.tree) {
            throw ApiError(409, "the tree has not been expanded");
        }
        return tree_json(*s.tree, s.doc.board);
    }
    if (action == "node" || action == "entanglement") {
        if (!s.tree) {
            throw ApiError(409, "the tree has not been expanded");
        }
        auto id = optional_field<size_t>(body, "node", 0);
        if (id >= s.tree->nodes.size()) {
            throw ApiError(404, "no node " + std::to_string(id), "$.node");
        }
        const auto &node = s.tree->nodes[id];
        if (action == "node") {
            auto basis = parse_basis(optional_field<std::string>(body, "basis", "HV"));
            auto format = parse_format(optional_field<std::string>(body, "format", "cartesian"));
            Json out = node_json(node, s.doc.board);
            out["ket"] = ket_json(node.state, basis, format);
            return out;
        }
        Json out = {{"node", id}, {"report", report_json(entanglement_report(node.state))}};
        if (body.contains("seed")) {
            Rng rng(optional_field<uint64_t>(body, "seed", 0), id);
            auto blink = blink_sample(node.state, rng);
            Json states = Json::array();
            for (size_t k = 0; k < blink.states.size(); k++) {
                states.push_back(
                    {{"weight", blink.weights[k]},
                     {"ket", ket_json(blink.states[k], PolarizationBasis::HV, ComplexFormat::Cartesian)}});
            }
            out["blink"] = std::move(states);
        }
        return out;
    }
    if (action == "sample") {
        auto n = optional_field<uint64_t>(body, "n", 1000);
        auto seed = optional_field<uint64_t>(body, "seed", 0);
        if (n > 1000000) {
            throw ApiError(400, "n must be at most 1000000", "$.n");
        }
        s.log = sample_log(s.ensure_engine(), seed, n);
        Json counts = Json::object();
        for (size_t k = 0; k < s.log->detector_names.size(); k++) {
            uint64_t c = 0;
            for (const auto &row : s.log->rows) {
                c += static_cast<uint64_t>(row.detectors[k]);
            }
            counts[s.log->detector_names[k]] = c;
        }
        return {{"runs", n}, {"seed", seed}, {"counts", std::move(counts)}};
    }
    if (action == "export.csv") {
        if (!s.log) {
            throw ApiError(409, "no samples have been drawn");
        }
        response.content_type = "text/csv";
        response.body = write_csv(*s.log);
        return nullptr;
    }
    if (action == "operator") {
        auto id = required_string(body, "element");
        const auto *element = s.doc.board.find(id);
        if (element == nullptr) {
            throw ApiError(404, "no element '" + id + "'", "$.element");
        }
        auto basis = parse_basis(optional_field<std::string>(body, "basis", "HV"));
        bool control = optional_field<int>(body, "control", 0) != 0;
        Json out = action_json(action_for(element->spec, control), basis);
        out["element"] = id;
        out["basis"] = basis_name(basis);
        return out;
    }
    throw ApiError(404, "unknown session action '" + action + "'");
}

ApiResponse ServeApi::handle(const ApiRequest &request) {
    ApiResponse response;
    try {
        Json body = Json::object();
        if (!request.body.empty()) {
            try {
                body = Json::parse(request.body);
            } catch (const nlohmann::json::parse_error &) {
                throw ApiError(400, "request body is not valid JSON");
            }
        }
        auto parts = split_path(request.path);
        if (parts.empty() || parts[0] != "api") {
            throw ApiError(404, "unknown route " + request.path);
        }
        Json result;
        const auto &m = request.method;
        if (parts.size() == 2 && parts[1] == "fixtures" && m == "GET") {
            result = {{"fixtures", fixture_names()}};
        } else if (parts.size() == 2 && parts[1] == "validate" && m == "POST") {
            try {
                auto doc = setup_from_body(body);
                Engine check(doc.board);
                result = {{"valid", true}, {"errors", Json::array()}};
            } catch (const SetupError &e) {
                result = {{"valid", false}, {"errors", {{{"where", e.where()}, {"message", e.what()}}}}};
            } catch (const BoardError &e) {
                result = {{"valid", false}, {"errors", {{{"where", "$"}, {"message", e.what()}}}}};
            }
        } else if (parts.size() == 2 && parts[1] == "sessions" && m == "POST") {
            result = create_session(body);
        } else if (parts.size() == 3 && parts[1] == "sessions" && m == "DELETE") {
            std::lock_guard lock(mutex_);
            if (sessions_.erase(parts[2]) == 0) {
                throw ApiError(404, "no session '" + parts[2] + "'");
            }
            result = {{"deleted", parts[2]}};
        } else if (parts.size() == 4 && parts[1] == "sessions" && parts[3] == "cancel" && m == "POST") {
            find_session(parts[2])->cancel = true;
            result = {{"cancelled", true}};
        } else if (parts.size() == 4 && parts[1] == "sessions") {
            auto session = find_session(parts[2]);
            std::lock_guard lock(session->mutex);
            result = session_call(*session, parts[3], body, response);
        } else {
            throw ApiError(404, "unknown route " + request.path);
        }
        if (response.content_type == "application/json") {
            response.body = result.dump();
        }
    } catch (const ApiError &e) {
        response.status = e.status;
        response.content_type = "application/json";
        response.body = Json{{"error", e.what()}, {"where", e.where}}.dump();
    } catch (const SetupError &e) {
        response.status = 400;
        response.content_type = "application/json";
        response.body = Json{{"error", e.what()}, {"where", e.where()}}.dump();
    } catch (const std::invalid_argument &e) {
        response.status = 400;
        response.content_type = "application/json";
        response.body = Json{{"error", e.what()}, {"where", ""}}.dump();
    } catch (const std::exception &e) {
        response.status = 500;
        response.content_type = "application/json";
        response.body = Json{{"error", e.what()}, {"where", ""}}.dump();
    }
    return response;
}

}  // namespace photonlab
