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

#include "photonlab/engine/board.h"

#include <algorithm>
#include <cmath>
#include <queue>

namespace photonlab {

namespace {

size_t photons_emitted(ElementKind kind) {
    switch (kind) {
        case ElementKind::SinglePhotonSource:
            return 1;
        case ElementKind::BellPairSource:
            return 2;
        case ElementKind::GhzSource:
        case ElementKind::WSource:
            return 3;
        default:
            return 0;
    }
}

bool accepts_wires(ElementKind kind) {
    if (is_optical(kind)) {
        return category_of(kind) != ElementCategory::Source || kind == ElementKind::SinglePhotonSource ||
               kind == ElementKind::BellPairSource;
    }
    auto c = category_of(kind);
    return c == ElementCategory::ClassicalGate || kind == ElementKind::OutputVariable ||
           kind == ElementKind::Correlator;
}

bool is_combinational(ElementKind kind) {
    return category_of(kind) == ElementCategory::ClassicalGate || kind == ElementKind::OutputVariable;
}

int64_t gate_value(ElementKind kind, const std::vector<int64_t> &in) {
    size_t nonzero = std::count_if(in.begin(), in.end(), [](int64_t v) {
        return v != 0;
    });
    switch (kind) {
        case ElementKind::And:
            return !in.empty() && nonzero == in.size();
        case ElementKind::Nand:
            return !(!in.empty() && nonzero == in.size());
        case ElementKind::Or:
            return nonzero > 0;
        case ElementKind::Nor:
            return nonzero == 0;
        case ElementKind::Xor:
            return nonzero % 2;
        case ElementKind::Min:
            return in.empty() ? 0 : *std::min_element(in.begin(), in.end());
        case ElementKind::Max:
            return in.empty() ? 0 : *std::max_element(in.begin(), in.end());
        default: {
            int64_t total = 0;
            for (auto v : in) {
                total += v;
            }
            return total;
        }
    }
}

}  // namespace

Board::Board(Grid grid) : grid_(grid) {
    if (grid.width <= 0 || grid.height <= 0) {
        throw BoardError("grid dimensions must be positive");
    }
}

std::string Board::place(
    ElementKind kind, Cell cell, int rotation, ElementParams params, ElementParams params_on, std::string id) {
    if (id.empty()) {
        size_t n = 1;
        do {
            id = std::string(kind_name(kind)) + std::to_string(n++);
        } while (find(id) != nullptr);
    }
    add({id, {kind, rotation, std::move(params), std::move(params_on)}, cell});
    return id;
}

std::string Board::add_node(ElementKind kind, ElementParams params, std::string id) {
    if (id.empty()) {
        size_t n = 1;
        do {
            id = std::string(kind_name(kind)) + std::to_string(n++);
        } while (find(id) != nullptr);
    }
    add({id, {kind, 0, std::move(params), {}}, std::nullopt});
    return id;
}

void Board::check_element(const PlacedElement &e) const {
    if (e.id.empty()) {
        throw BoardError("element id must not be empty");
    }
    auto where = "element '" + e.id + "'";
    if (is_optical(e.spec.kind) && !e.cell) {
        throw BoardError(where + " (" + std::string(kind_name(e.spec.kind)) + ") needs a grid position");
    }
    if (e.cell && !grid_.contains(e.cell->x, e.cell->y)) {
        throw BoardError(
            where + " at (" + std::to_string(e.cell->x) + "," + std::to_string(e.cell->y) + ") is outside the " +
            std::to_string(grid_.width) + "x" + std::to_string(grid_.height) + " grid");
    }
    try {
        validate_rotation(e.spec.kind, e.spec.rotation);
        validate_params(e.spec.kind, e.spec.params);
        validate_params(e.spec.kind, e.spec.params_on);
    } catch (const IllegalParameter &ex) {
        throw BoardError(where + ": " + ex.what());
    }
}

void Board::add(PlacedElement element) {
    check_element(element);
    if (find(element.id) != nullptr) {
        throw BoardError("duplicate element id '" + element.id + "'");
    }
    if (element.cell) {
        if (const auto *other = at(*element.cell)) {
            throw BoardError("element '" + element.id + "' overlaps '" + other->id + "'");
        }
    }
    if (photon_count() + photons_emitted(element.spec.kind) > kMaxPhotons) {
        throw BoardError("element '" + element.id + "' would raise the photon count above 3");
    }
    elements_.push_back(std::move(element));
    rebuild_index();
}

void Board::check_wire(const Wire &w) const {
    const auto *from = find(w.from);
    const auto *to = find(w.to);
    if (from == nullptr) {
        throw BoardError("wire source '" + w.from + "' does not exist");
    }
    if (to == nullptr) {
        throw BoardError("wire target '" + w.to + "' does not exist");
    }
    if (!emits_signal(from->spec.kind)) {
        throw BoardError("element '" + w.from + "' does not produce a classical signal");
    }
    if (!accepts_wires(to->spec.kind)) {
        throw BoardError("element '" + w.to + "' does not accept classical input");
    }
    if (w.from == w.to) {
        throw BoardError("wire from '" + w.from + "' to itself");
    }
}

void Board::connect(std::string from, std::string to, std::string port) {
    Wire w{std::move(from), std::move(to), std::move(port)};
    check_wire(w);
    wires_.push_back(w);
    rebuild_index();
    try {
        evaluation_order();
    } catch (const BoardError &) {
        wires_.pop_back();
        rebuild_index();
        throw;
    }
}

size_t Board::disconnect(std::string_view from, std::string_view to) {
    size_t removed = std::erase_if(wires_, [&](const Wire &w) {
        return w.from == from && w.to == to;
    });
    rebuild_index();
    return removed;
}

void Board::remove(std::string_view id) {
    auto idx = index_of(id);
    std::erase_if(wires_, [&](const Wire &w) {
        return w.from == id || w.to == id;
    });
    elements_.erase(elements_.begin() + static_cast<ptrdiff_t>(idx));
    rebuild_index();
}

void Board::replace_spec(std::string_view id, ElementSpec spec) {
    auto idx = index_of(id);
    auto candidate = elements_[idx];
    candidate.spec = std::move(spec);
    check_element(candidate);
    size_t photons = photon_count() - photons_emitted(elements_[idx].spec.kind) + photons_emitted(candidate.spec.kind);
    if (photons > kMaxPhotons) {
        throw BoardError("element '" + candidate.id + "' would raise the photon count above 3");
    }
    for (const auto &w : wires_) {
        if ((w.from == id && !emits_signal(candidate.spec.kind)) || (w.to == id && !accepts_wires(candidate.spec.kind))) {
            throw BoardError("element '" + candidate.id + "' would break an existing wire");
        }
    }
    elements_[idx] = std::move(candidate);
    rebuild_index();
}

void Board::move(std::string_view id, std::optional<Cell> cell) {
    auto idx = index_of(id);
    auto candidate = elements_[idx];
    candidate.cell = cell;
    check_element(candidate);
    if (cell) {
        const auto *other = at(*cell);
        if (other != nullptr && other->id != id) {
            throw BoardError("element '" + candidate.id + "' overlaps '" + other->id + "'");
        }
    }
    elements_[idx] = std::move(candidate);
    rebuild_index();
}

const PlacedElement *Board::find(std::string_view id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &elements_[it->second];
}

const PlacedElement *Board::at(Cell cell) const {
    auto it = by_cell_.find(cell);
    return it == by_cell_.end() ? nullptr : &elements_[it->second];
}

size_t Board::index_of(std::string_view id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
        throw BoardError("no element with id '" + std::string(id) + "'");
    }
    return it->second;
}

void Board::rebuild_index() {
    by_id_.clear();
    by_cell_.clear();
    for (size_t k = 0; k < elements_.size(); k++) {
        by_id_[elements_[k].id] = k;
        if (elements_[k].cell) {
            by_cell_[*elements_[k].cell] = k;
        }
    }
    inputs_.assign(elements_.size(), {});
    for (const auto &w : wires_) {
        inputs_[by_id_.at(w.to)].emplace_back(by_id_.at(w.from), w.port);
    }
}

const std::vector<std::vector<std::pair<size_t, std::string>>> &Board::inputs() const {
    return inputs_;
}

size_t Board::photon_count() const {
    size_t n = 0;
    for (const auto &e : elements_) {
        n += photons_emitted(e.spec.kind);
    }
    return n;
}

std::vector<size_t> Board::evaluation_order() const {
    // Kahn's algorithm over edges between combinational nodes; everything else has no
    // same-step dependency and goes first.
    size_t n = elements_.size();
    std::vector<size_t> pending(n, 0);
    for (size_t k = 0; k < n; k++) {
        if (!is_combinational(elements_[k].spec.kind)) {
            continue;
        }
        for (const auto &[src, port] : inputs_[k]) {
            pending[k] += is_combinational(elements_[src].spec.kind) ? 1 : 0;
        }
    }
    std::vector<size_t> order;
    std::queue<size_t> ready;
    for (size_t k = 0; k < n; k++) {
        if (!is_combinational(elements_[k].spec.kind)) {
            order.push_back(k);
        } else if (pending[k] == 0) {
            ready.push(k);
        }
    }
    std::vector<std::vector<size_t>> outgoing(n);
    for (size_t k = 0; k < n; k++) {
        for (const auto &[src, port] : inputs_[k]) {
            outgoing[src].push_back(k);
        }
    }
    while (!ready.empty()) {
        size_t k = ready.front();
        ready.pop();
        order.push_back(k);
        for (size_t next : outgoing[k]) {
            if (is_combinational(elements_[next].spec.kind) && --pending[next] == 0) {
                ready.push(next);
            }
        }
    }
    if (order.size() != n) {
        throw BoardError("classical wires form a cycle");
    }
    return order;
}

void Board::validate() const {
    std::map<Cell, std::string> cells;
    std::map<std::string, int, std::less<>> ids;
    for (const auto &e : elements_) {
        check_element(e);
        if (ids[e.id]++ > 0) {
            throw BoardError("duplicate element id '" + e.id + "'");
        }
        if (e.cell && !cells.emplace(*e.cell, e.id).second) {
            throw BoardError("element '" + e.id + "' overlaps '" + cells[*e.cell] + "'");
        }
    }
    if (photon_count() > kMaxPhotons) {
        throw BoardError("sources emit more than 3 photons");
    }
    for (const auto &w : wires_) {
        check_wire(w);
    }
    evaluation_order();
}

bool ClassicalState::inputs_resolved() const {
    return std::none_of(random_inputs.begin(), random_inputs.end(), [](int8_t b) {
        return b < 0;
    });
}

ClassicalState initial_classical_state(const Board &board) {
    size_t n = board.elements().size();
    ClassicalState s;
    s.values.assign(n, 0);
    s.fired.assign(n, 0);
    s.random_inputs.assign(n, 0);
    for (size_t k = 0; k < n; k++) {
        if (board.elements()[k].spec.kind == ElementKind::RandomSwitch) {
            s.random_inputs[k] = -1;
        }
    }
    evaluate_wires(board, s);
    return s;
}

void evaluate_wires(const Board &board, ClassicalState &s) {
    const auto &elements = board.elements();
    const auto &inputs = board.inputs();
    std::vector<int64_t> in;
    for (size_t k : board.evaluation_order()) {
        const auto &spec = elements[k].spec;
        switch (spec.kind) {
            case ElementKind::Detector:
            case ElementKind::Bomb:
            case ElementKind::NondemolitionDetector:
                s.values[k] = s.fired[k];
                break;
            case ElementKind::Switch:
                s.values[k] = std::llround(number_param(spec.resolved(false), "value"));
                break;
            case ElementKind::RandomSwitch:
                s.values[k] = std::max<int8_t>(s.random_inputs[k], 0);
                break;
            default:
                if (is_combinational(spec.kind)) {
                    in.clear();
                    for (const auto &[src, port] : inputs[k]) {
                        in.push_back(s.values[src]);
                    }
                    s.values[k] = gate_value(spec.kind, in);
                } else {
                    s.values[k] = 0;
                }
        }
    }
}

bool control_bit(const Board &board, const ClassicalState &state, size_t index) {
    for (const auto &[src, port] : board.inputs()[index]) {
        if (state.values[src] != 0) {
            return true;
        }
    }
    return false;
}

std::vector<InputAssignment> input_assignments(const Board &board) {
    const auto &elements = board.elements();
    std::vector<InputAssignment> out = {{std::vector<int8_t>(elements.size(), 0), 1.0}};
    for (size_t k = 0; k < elements.size(); k++) {
        if (elements[k].spec.kind != ElementKind::RandomSwitch) {
            continue;
        }
        double p = number_param(elements[k].spec.resolved(false), "probability");
        std::vector<InputAssignment> next;
        for (auto &a : out) {
            for (int8_t bit : {int8_t{0}, int8_t{1}}) {
                double q = bit ? p : 1 - p;
                if (q <= 0) {
                    continue;
                }
                auto b = a;
                b.bits[k] = bit;
                b.probability *= q;
                next.push_back(std::move(b));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace photonlab
