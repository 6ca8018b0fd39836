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

#ifndef PHOTONLAB_ENGINE_EVOLUTION_H
#define PHOTONLAB_ENGINE_EVOLUTION_H

#include <memory>
#include <mutex>
#include <optional>

#include "photonlab/engine/board.h"

namespace photonlab {

/// Probability mass below which a branch is treated as impossible and never created.
inline constexpr double kImpossibleBranch = 1e-18;
/// Allowed deviation of summed branch probabilities from one.
inline constexpr double kProbabilityTolerance = 1e-9;

struct SimulationNode {
    size_t id = 0;
    std::optional<size_t> parent;
    /// Product of branch probabilities from the root.
    double probability = 1;
    int step = 0;
    SparseVector state;
    ClassicalState classical;
    /// Absorption, detection and loss events that happened in the step leading to this node.
    std::vector<DetectionEvent> events;
    std::vector<size_t> children;
    bool terminal = false;
    bool truncated = false;

    size_t photon_count() const {
        return state.layout().particles().size();
    }
};

/// One outcome of a step: its conditional probability, normalized state and classical record.
struct Branch {
    double probability = 1;
    SparseVector state;
    ClassicalState classical;
    std::vector<DetectionEvent> events;
};

/// Shifts every photon one cell along its direction. Components that would leave the grid are
/// dropped; the engine removes them beforehand as the "lost" outcome.
SparseVector propagation_step(const Grid &grid, const SparseVector &state);

/// Weighted projections of one measuring cell.
struct CellMeasurement {
    Cell cell;
    size_t element;
    std::vector<MeasurementOutcome> outcomes;
};

/// Per-configuration operators, built once for each distinct set of control bits.
struct StepOperators {
    /// Block-diagonal U over untagged (x, y, direction, polarization); identity off element cells.
    SparseOperator unitary;
    bool has_unitary = false;
    /// sqrt(M*) over untagged photon dims, with every column stored.
    SparseOperator null_root;
    std::vector<CellMeasurement> measurements;
    /// Cells holding two-photon gates with their local 64x64 operator.
    std::vector<std::pair<Cell, SparseOperator>> gates;
};

/// Runs the per-step evolution of one board. Operator sets are cached per control
/// configuration; the engine is safe to share between threads.
class Engine {
   public:
    explicit Engine(Board board);

    const Board &board() const {
        return board_;
    }
    const Grid &grid() const {
        return board_.grid();
    }

    /// The t = 0 node. With random switches present it holds no photons and waits for
    /// input_branches; otherwise it carries the emitted state.
    SimulationNode root() const;

    /// Children of a node whose random inputs are still unresolved, one per assignment.
    std::vector<Branch> input_branches(const SimulationNode &node) const;

    /// Emitted photon state for the given classical inputs.
    SparseVector emitted_state(const ClassicalState &classical) const;

    /// Splits off photons about to leave the grid (destructive "lost" outcome, one branch per
    /// leaving basis state), followed by the branch where every photon stays.
    std::vector<Branch> split_lost(const SparseVector &state, const ClassicalState &classical, int step) const;

    /// Measurement phase on a propagated state: one branch per outcome combination across all
    /// photons, probabilities conditional on `state` (normalized).
    std::vector<Branch> measurement_step(const SparseVector &state, const ClassicalState &classical, int step) const;

    /// Unitary phase with the element configuration selected by `classical`.
    SparseVector unitary_step(const SparseVector &state, const ClassicalState &classical) const;

    /// Full step: propagation, measurement, unitaries, wire update. Parameters come from the
    /// parent's wire values. Branches with identical events and parallel states are merged.
    /// Throws std::logic_error if the outcome probabilities do not sum to one.
    std::vector<Branch> evolve_step(const SparseVector &state, const ClassicalState &classical, int step) const;

    /// Children of any non-terminal node (input resolution or one evolution step).
    std::vector<Branch> expand(const SimulationNode &node) const;

    bool is_terminal(const SimulationNode &node) const;

    /// The cached operators for the configuration in `classical`.
    std::shared_ptr<const StepOperators> operators_for(const ClassicalState &classical) const;

    /// Sum of M_i + M* over the occupied single-photon subspace of `state`, as a dense check:
    /// returns the largest deviation from the identity, and of (sqrt M*)^dagger sqrt M* from M*.
    struct PovmCheck {
        double completeness_error = 0;
        double root_error = 0;
    };
    PovmCheck check_povm(const ClassicalState &classical) const;

    /// Number of entries in the largest state vector produced so far.
    size_t peak_entries() const;

   private:
    std::vector<Dimension> untagged_dims() const;
    StepOperators build_operators(const std::vector<uint8_t> &controls) const;
    std::vector<Branch> measure_photon(const Branch &branch, const std::string &tag, const StepOperators &ops) const;
    void note_size(const SparseVector &state) const;

    Board board_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<uint8_t>, std::shared_ptr<const StepOperators>> cache_;
    mutable size_t peak_entries_ = 0;
};

/// Photon tags present in a state, in layout order.
std::vector<std::string> photon_tags(const SparseVector &state);

}  // namespace photonlab

#endif
