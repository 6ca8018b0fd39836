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

#ifndef PHOTONLAB_ENGINE_BOARD_H
#define PHOTONLAB_ENGINE_BOARD_H

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "photonlab/elements/element_catalog.h"
#include "photonlab/photon/photon_space.h"

namespace photonlab {

struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell &) const = default;
};

struct PlacedElement {
    std::string id;
    ElementSpec spec;
    /// Optical elements always have a cell; classical nodes may float off the grid.
    std::optional<Cell> cell;
};

/// A directed classical connection. The port names the role of the signal at the receiving end:
/// "control" switches an element to its alternate parameter set; gates and output variables
/// accept any port; correlators use named ports.
struct Wire {
    std::string from;
    std::string to;
    std::string port = "control";
    bool operator==(const Wire &) const = default;
};

struct BoardError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Board {
   public:
    explicit Board(Grid grid = {});

    const Grid &grid() const {
        return grid_;
    }
    const std::vector<PlacedElement> &elements() const {
        return elements_;
    }
    const std::vector<Wire> &wires() const {
        return wires_;
    }

    /// When set, photons that share a source wavelength are treated as indistinguishable and
    /// their joint state is symmetrized at emission.
    bool symmetrize_identical() const {
        return symmetrize_identical_;
    }
    void set_symmetrize_identical(bool value) {
        symmetrize_identical_ = value;
    }

    /// Places an element and returns its id. An empty id is replaced by "<kind><n>".
    std::string place(
        ElementKind kind,
        Cell cell,
        int rotation = 0,
        ElementParams params = {},
        ElementParams params_on = {},
        std::string id = "");
    /// Adds a classical node with no grid cell.
    std::string add_node(ElementKind kind, ElementParams params = {}, std::string id = "");
    /// Adds a fully specified element after checking it.
    void add(PlacedElement element);
    void connect(std::string from, std::string to, std::string port = "control");
    /// Removes every wire from `from` to `to`; returns how many were removed.
    size_t disconnect(std::string_view from, std::string_view to);

    void remove(std::string_view id);
    void replace_spec(std::string_view id, ElementSpec spec);
    void move(std::string_view id, std::optional<Cell> cell);

    const PlacedElement *find(std::string_view id) const;
    const PlacedElement *at(Cell cell) const;
    size_t index_of(std::string_view id) const;

    /// Full consistency check: cells, parameters, wire endpoints, acyclicity, photon count.
    void validate() const;

    /// Element indices of every element in a valid wire evaluation order.
    std::vector<size_t> evaluation_order() const;
    /// Indices of elements feeding each element, with their ports.
    const std::vector<std::vector<std::pair<size_t, std::string>>> &inputs() const;

    size_t photon_count() const;

   private:
    void check_element(const PlacedElement &element) const;
    void check_wire(const Wire &wire) const;
    void rebuild_index();

    Grid grid_;
    std::vector<PlacedElement> elements_;
    std::vector<Wire> wires_;
    bool symmetrize_identical_ = false;
    std::map<std::string, size_t, std::less<>> by_id_;
    std::map<Cell, size_t> by_cell_;
    std::vector<std::vector<std::pair<size_t, std::string>>> inputs_;
};

struct DetectionEvent {
    int step = 0;
    std::string element;
    std::optional<Cell> cell;
    std::string label;
    auto operator<=>(const DetectionEvent &) const = default;
};

/// Classical side of a trajectory: resolved inputs, latched detector bits and every element's
/// current wire value.
struct ClassicalState {
    /// Output value per element index (detector 0/1, switch value, gate result, ...).
    std::vector<int64_t> values;
    /// Latched firing flag per element index for detectors, bombs and nondemolition detectors.
    std::vector<uint8_t> fired;
    /// Resolved value per random switch element index (-1 until resolved).
    std::vector<int8_t> random_inputs;
    std::vector<DetectionEvent> record;

    bool inputs_resolved() const;
    bool operator==(const ClassicalState &) const = default;
};

/// Classical state before any step, with switches set and random inputs unresolved.
ClassicalState initial_classical_state(const Board &board);

/// Recomputes every wire value from switches, random inputs and latched detections.
void evaluate_wires(const Board &board, ClassicalState &state);

/// Whether element `index` currently runs with its alternate parameter set.
bool control_bit(const Board &board, const ClassicalState &state, size_t index);

/// One assignment of all random switches with its probability.
struct InputAssignment {
    std::vector<int8_t> bits;
    double probability;
};

/// Every assignment of the board's random switches with nonzero probability, in lexicographic
/// order of the bits.
std::vector<InputAssignment> input_assignments(const Board &board);

}  // namespace photonlab

#endif
