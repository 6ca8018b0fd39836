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

#include <algorithm>
#include <cmath>

namespace photonlab {

namespace {

struct PhotonAxes {
    size_t x, y, direction, polarization;
};

PhotonAxes axes_of_photon(const Layout &layout, const std::string &tag) {
    return {
        layout.require(tag + ".x"), layout.require(tag + ".y"), layout.require(tag + ".direction"),
        layout.require(tag + ".polarization")};
}

std::vector<std::string> target_names(const std::string &tag) {
    return {tag + ".x", tag + ".y", tag + ".direction", tag + ".polarization"};
}

using Block = std::array<std::array<Complex, 8>, 8>;

Block dense_block(const SparseOperator &local) {
    Block b{};
    for (const auto &e : local.entries()) {
        b[e.out][e.in] += e.value;
    }
    return b;
}

Block identity_block() {
    Block b{};
    for (size_t k = 0; k < 8; k++) {
        b[k][k] = 1;
    }
    return b;
}

struct Partial {
    SparseVector state;
    std::vector<DetectionEvent> events;
    std::vector<size_t> fired;
};

bool parallel(const SparseVector &a, const SparseVector &b) {
    if (!(a.layout() == b.layout())) {
        return false;
    }
    return std::abs(inner_product(a, b)) > 1 - 1e-9;
}

}  // namespace

std::vector<std::string> photon_tags(const SparseVector &state) {
    return state.layout().particles();
}

SparseVector propagation_step(const Grid &grid, const SparseVector &state) {
    const auto &layout = state.layout();
    auto tags = layout.particles();
    if (tags.empty()) {
        return state;
    }
    std::vector<PhotonAxes> axes;
    for (const auto &t : tags) {
        axes.push_back(axes_of_photon(layout, t));
    }
    std::vector<Entry> out;
    out.reserve(state.size());
    for (const auto &e : state.entries()) {
        auto coords = layout.decode(e.key);
        bool inside = true;
        for (const auto &a : axes) {
            auto s = step_of(static_cast<Direction>(coords[a.direction]));
            int x = static_cast<int>(coords[a.x]) + s.dx;
            int y = static_cast<int>(coords[a.y]) + s.dy;
            if (!grid.contains(x, y)) {
                inside = false;
                break;
            }
            coords[a.x] = static_cast<uint32_t>(x);
            coords[a.y] = static_cast<uint32_t>(y);
        }
        if (inside) {
            out.push_back({layout.encode(coords), e.amplitude});
        }
    }
    return SparseVector(layout, std::move(out));
}

Engine::Engine(Board board) : board_(std::move(board)) {
    board_.validate();
}

std::vector<Dimension> Engine::untagged_dims() const {
    std::vector<Dimension> dims;
    for (const auto &d : photon_dims(grid(), "t")) {
        dims.emplace_back(std::string(d.base_name()), d.labels);
    }
    return dims;
}

StepOperators Engine::build_operators(const std::vector<uint8_t> &controls) const {
    auto dims = untagged_dims();
    Layout layout(dims);
    StepOperators ops;
    std::vector<OperatorEntry> unitary;
    std::map<Cell, Block> null_blocks;
    const auto &elements = board_.elements();
    for (size_t k = 0; k < elements.size(); k++) {
        const auto &e = elements[k];
        if (!e.cell || !is_optical(e.spec.kind)) {
            continue;
        }
        Cell c = *e.cell;
        auto encode = [&](uint64_t local) {
            std::array<uint32_t, 4> coords = {
                static_cast<uint32_t>(c.x), static_cast<uint32_t>(c.y), static_cast<uint32_t>(local / 2),
                static_cast<uint32_t>(local % 2)};
            return layout.encode(coords);
        };
        auto action = action_for(e.spec, controls[k] != 0);
        if (auto *u = std::get_if<UnitaryAction>(&action)) {
            for (const auto &entry : u->op.entries()) {
                unitary.push_back({encode(entry.out), encode(entry.in), entry.value});
            }
            ops.has_unitary = true;
        } else if (auto *m = std::get_if<MeasurementAction>(&action)) {
            if (m->outcomes.empty()) {
                continue;
            }
            Block root = identity_block();
            for (const auto &o : m->outcomes) {
                Block p = dense_block(o.projection());
                double f = std::sqrt(1 - o.weight) - 1;
                for (size_t i = 0; i < 8; i++) {
                    for (size_t j = 0; j < 8; j++) {
                        root[i][j] += f * p[i][j];
                    }
                }
            }
            null_blocks[c] = root;
            ops.measurements.push_back({c, k, m->outcomes});
        } else if (auto *g = std::get_if<TwoPhotonAction>(&action)) {
            ops.gates.emplace_back(c, g->op);
        }
    }
    if (ops.has_unitary) {
        ops.unitary = SparseOperator(dims, dims, std::move(unitary));
    }
    std::vector<OperatorEntry> root;
    root.reserve(layout.total_size());
    for (int x = 0; x < grid().width; x++) {
        for (int y = 0; y < grid().height; y++) {
            std::array<uint32_t, 4> base = {static_cast<uint32_t>(x), static_cast<uint32_t>(y), 0, 0};
            uint64_t offset = layout.encode(base);
            auto it = null_blocks.find(Cell{x, y});
            for (uint64_t i = 0; i < 8; i++) {
                for (uint64_t j = 0; j < 8; j++) {
                    Complex v = it == null_blocks.end() ? Complex(i == j ? 1.0 : 0.0) : it->second[i][j];
                    if (v != Complex{}) {
                        root.push_back({offset + i, offset + j, v});
                    }
                }
            }
        }
    }
    ops.null_root = SparseOperator(dims, dims, std::move(root));
    return ops;
}

std::shared_ptr<const StepOperators> Engine::operators_for(const ClassicalState &classical) const {
    std::vector<uint8_t> controls(board_.elements().size(), 0);
    for (size_t k = 0; k < controls.size(); k++) {
        controls[k] = control_bit(board_, classical, k) ? 1 : 0;
    }
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(controls);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const StepOperators>(build_operators(controls));
    std::lock_guard lock(mutex_);
    return cache_.emplace(controls, built).first->second;
}

void Engine::note_size(const SparseVector &state) const {
    std::lock_guard lock(mutex_);
    peak_entries_ = std::max(peak_entries_, state.size());
}

size_t Engine::peak_entries() const {
    std::lock_guard lock(mutex_);
    return peak_entries_;
}

SparseVector Engine::emitted_state(const ClassicalState &classical) const {
    std::optional<SparseVector> state;
    std::map<double, std::vector<std::string>> by_wavelength;
    size_t next_photon = 0;
    const auto &elements = board_.elements();
    for (size_t k = 0; k < elements.size(); k++) {
        const auto &e = elements[k];
        if (category_of(e.spec.kind) != ElementCategory::Source) {
            continue;
        }
        auto source = std::get<SourceAction>(action_for(e.spec, control_bit(board_, classical, k)));
        std::vector<Dimension> dims;
        std::vector<std::string> tags;
        for (size_t m = 0; m < source.directions.size(); m++) {
            tags.push_back(photon_tag(next_photon++));
            for (auto &d : photon_dims(grid(), tags.back())) {
                dims.push_back(std::move(d));
            }
            by_wavelength[source.wavelength].push_back(tags.back());
        }
        Layout layout(dims);
        const auto &pol_layout = source.polarization.layout();
        std::vector<Entry> entries;
        std::vector<uint32_t> coords(dims.size());
        for (const auto &pe : source.polarization.entries()) {
            for (size_t m = 0; m < source.directions.size(); m++) {
                coords[4 * m + 0] = static_cast<uint32_t>(e.cell->x);
                coords[4 * m + 1] = static_cast<uint32_t>(e.cell->y);
                coords[4 * m + 2] = static_cast<uint32_t>(source.directions[m]);
                coords[4 * m + 3] = pol_layout.coordinate(pe.key, m);
            }
            entries.push_back({layout.encode(coords), pe.amplitude});
        }
        SparseVector part(std::move(layout), std::move(entries));
        state = state ? tensor_product(*state, part) : part;
    }
    if (!state) {
        return SparseVector::scalar(1);
    }
    if (board_.symmetrize_identical()) {
        std::vector<std::vector<std::string>> groups;
        for (auto &[w, tags] : by_wavelength) {
            if (tags.size() > 1) {
                groups.push_back(tags);
            }
        }
        if (!groups.empty()) {
            return symmetrize_groups(*state, groups);
        }
    }
    return *state;
}

SimulationNode Engine::root() const {
    SimulationNode node;
    node.classical = initial_classical_state(board_);
    node.state = node.classical.inputs_resolved() ? emitted_state(node.classical) : SparseVector::scalar(1);
    node.terminal = is_terminal(node);
    note_size(node.state);
    return node;
}

std::vector<Branch> Engine::input_branches(const SimulationNode &node) const {
    std::vector<Branch> out;
    const auto &elements = board_.elements();
    for (const auto &a : input_assignments(board_)) {
        Branch b;
        b.probability = a.probability;
        b.classical = node.classical;
        for (size_t k = 0; k < elements.size(); k++) {
            if (elements[k].spec.kind == ElementKind::RandomSwitch) {
                b.classical.random_inputs[k] = a.bits[k];
            }
        }
        evaluate_wires(board_, b.classical);
        b.state = emitted_state(b.classical);
        note_size(b.state);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Branch> Engine::split_lost(const SparseVector &state, const ClassicalState &classical, int step) const {
    std::vector<Partial> current = {{state, {}, {}}};
    for (const auto &tag : photon_tags(state)) {
        std::vector<Partial> next;
        for (auto &p : current) {
            const auto &layout = p.state.layout();
            auto a = axes_of_photon(layout, tag);
            std::vector<Dimension> bra_dims = {
                layout.dims()[a.x], layout.dims()[a.y], layout.dims()[a.direction], layout.dims()[a.polarization]};
            Layout bra_layout(bra_dims);
            std::vector<uint64_t> leaving;
            std::vector<Entry> staying;
            for (const auto &e : p.state.entries()) {
                auto s = step_of(static_cast<Direction>(layout.coordinate(e.key, a.direction)));
                int x = static_cast<int>(layout.coordinate(e.key, a.x)) + s.dx;
                int y = static_cast<int>(layout.coordinate(e.key, a.y)) + s.dy;
                if (grid().contains(x, y)) {
                    staying.push_back(e);
                } else {
                    std::array<uint32_t, 4> c = {
                        layout.coordinate(e.key, a.x), layout.coordinate(e.key, a.y),
                        layout.coordinate(e.key, a.direction), layout.coordinate(e.key, a.polarization)};
                    leaving.push_back(bra_layout.encode(c));
                }
            }
            std::sort(leaving.begin(), leaving.end());
            leaving.erase(std::unique(leaving.begin(), leaving.end()), leaving.end());
            for (auto key : leaving) {
                SparseVector bra(bra_layout, {{key, 1}});
                auto rest = partial_inner(bra, p.state);
                if (rest.norm_squared() <= kImpossibleBranch) {
                    continue;
                }
                auto events = p.events;
                Cell edge{static_cast<int>(bra_layout.coordinate(key, 0)), static_cast<int>(bra_layout.coordinate(key, 1))};
                events.push_back({step, "", edge, "lost"});
                next.push_back({std::move(rest), std::move(events), p.fired});
            }
            if (!staying.empty()) {
                next.push_back({SparseVector(layout, std::move(staying)), p.events, p.fired});
            }
        }
        current = std::move(next);
    }
    std::vector<Branch> out;
    for (auto &p : current) {
        Branch b;
        b.probability = p.state.norm_squared();
        b.state = std::move(p.state);
        b.classical = classical;
        b.events = std::move(p.events);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Branch> Engine::measure_photon(const Branch &branch, const std::string &tag, const StepOperators &ops) const {
    const auto &state = branch.state;
    const auto &layout = state.layout();
    auto a = axes_of_photon(layout, tag);
    std::vector<const CellMeasurement *> hit;
    for (const auto &m : ops.measurements) {
        for (const auto &e : state.entries()) {
            if (static_cast<int>(layout.coordinate(e.key, a.x)) == m.cell.x &&
                static_cast<int>(layout.coordinate(e.key, a.y)) == m.cell.y) {
                hit.push_back(&m);
                break;
            }
        }
    }
    if (hit.empty()) {
        return {branch};
    }
    std::vector<Dimension> photon = {
        layout.dims()[a.x], layout.dims()[a.y], layout.dims()[a.direction], layout.dims()[a.polarization]};
    Layout photon_layout(photon);
    auto targets = target_names(tag);
    const auto &elements = board_.elements();
    std::vector<Branch> out;
    auto record = [&](SparseVector s, const CellMeasurement &m, const MeasurementOutcome &o) {
        if (s.norm_squared() <= kImpossibleBranch) {
            return;
        }
        Branch b;
        b.state = std::move(s);
        b.classical = branch.classical;
        b.events = branch.events;
        const auto &element = elements[m.element];
        b.events.push_back({0, element.id, m.cell, o.label});
        if (emits_signal(element.spec.kind)) {
            b.classical.fired[m.element] = 1;
        }
        out.push_back(std::move(b));
    };
    for (const auto *m : hit) {
        auto cell_key = [&](uint64_t local) {
            std::array<uint32_t, 4> c = {
                static_cast<uint32_t>(m->cell.x), static_cast<uint32_t>(m->cell.y), static_cast<uint32_t>(local / 2),
                static_cast<uint32_t>(local % 2)};
            return photon_layout.encode(c);
        };
        for (const auto &o : m->outcomes) {
            double amp = std::sqrt(o.weight);
            if (o.destructive) {
                for (const auto &ket : o.basis) {
                    std::vector<Entry> bra;
                    for (const auto &e : ket.entries()) {
                        bra.push_back({cell_key(e.key), amp * e.amplitude});
                    }
                    record(partial_inner(SparseVector(photon_layout, std::move(bra)), state), *m, o);
                }
            } else {
                std::vector<OperatorEntry> op;
                auto projection = o.projection();
                for (const auto &e : projection.entries()) {
                    op.push_back({cell_key(e.out), cell_key(e.in), amp * e.value});
                }
                auto dims = untagged_dims();
                record(apply_on_subset(SparseOperator(dims, dims, std::move(op)), targets, state), *m, o);
            }
        }
    }
    auto null = apply_on_subset(ops.null_root, targets, state);
    if (null.norm_squared() > kImpossibleBranch) {
        Branch b = branch;
        b.state = std::move(null);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Branch> Engine::measurement_step(const SparseVector &state, const ClassicalState &classical, int step) const {
    auto ops = operators_for(classical);
    Branch start;
    start.state = state;
    start.classical = classical;
    std::vector<Branch> current = {start};
    for (const auto &tag : photon_tags(state)) {
        std::vector<Branch> next;
        for (const auto &b : current) {
            for (auto &child : measure_photon(b, tag, *ops)) {
                next.push_back(std::move(child));
            }
        }
        current = std::move(next);
    }
    for (auto &b : current) {
        for (auto &e : b.events) {
            e.step = step;
        }
        b.probability = b.state.norm_squared();
    }
    return current;
}

SparseVector Engine::unitary_step(const SparseVector &state, const ClassicalState &classical) const {
    auto ops = operators_for(classical);
    auto tags = photon_tags(state);
    SparseVector out = state;
    if (ops->has_unitary) {
        for (const auto &tag : tags) {
            out = apply_on_subset(ops->unitary, target_names(tag), out, MissingColumns::kIdentity);
        }
    }
    if (ops->gates.empty() || tags.size() < 2) {
        return out;
    }
    for (size_t i = 0; i < tags.size(); i++) {
        for (size_t j = i + 1; j < tags.size(); j++) {
            std::vector<Dimension> dims;
            for (const auto &t : {tags[i], tags[j]}) {
                for (auto &d : photon_dims(grid(), t)) {
                    dims.push_back(std::move(d));
                }
            }
            Layout layout(dims);
            std::vector<OperatorEntry> entries;
            for (const auto &[cell, local] : ops->gates) {
                auto key = [&](uint64_t k) {
                    // Local key order: a.direction, a.polarization, b.direction, b.polarization.
                    uint32_t pb = k % 2, db = (k / 2) % 4, pa = (k / 8) % 2, da = static_cast<uint32_t>(k / 16);
                    auto x = static_cast<uint32_t>(cell.x);
                    auto y = static_cast<uint32_t>(cell.y);
                    std::array<uint32_t, 8> c = {x, y, da, pa, x, y, db, pb};
                    return layout.encode(c);
                };
                for (const auto &e : local.entries()) {
                    entries.push_back({key(e.out), key(e.in), e.value});
                }
            }
            std::vector<std::string> targets = target_names(tags[i]);
            for (auto &t : target_names(tags[j])) {
                targets.push_back(std::move(t));
            }
            out = apply_on_subset(SparseOperator(dims, dims, std::move(entries)), targets, out, MissingColumns::kIdentity);
        }
    }
    return out;
}

std::vector<Branch> Engine::evolve_step(const SparseVector &state, const ClassicalState &classical, int step) const {
    std::vector<Branch> raw;
    for (auto &kept : split_lost(state, classical, step)) {
        for (auto &m : measurement_step(propagation_step(grid(), kept.state), classical, step)) {
            m.events.insert(m.events.begin(), kept.events.begin(), kept.events.end());
            raw.push_back(std::move(m));
        }
    }
    double total = 0;
    std::vector<Branch> out;
    const auto &elements = board_.elements();
    for (auto &b : raw) {
        total += b.probability;
        if (b.probability <= kImpossibleBranch) {
            continue;
        }
        b.state = unitary_step(b.state.normalized(), classical);
        note_size(b.state);
        std::sort(b.events.begin(), b.events.end());
        for (const auto &e : b.events) {
            if (e.element.empty()) {
                continue;
            }
            auto k = board_.index_of(e.element);
            if (emits_signal(elements[k].spec.kind)) {
                b.classical.record.push_back(e);
            }
        }
        evaluate_wires(board_, b.classical);
        bool merged = false;
        for (auto &o : out) {
            if (o.events == b.events && o.classical == b.classical && parallel(o.state, b.state)) {
                o.probability += b.probability;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.push_back(std::move(b));
        }
    }
    double expected = state.norm_squared();
    if (std::abs(total - expected) > kProbabilityTolerance) {
        throw std::logic_error(
            "outcome probabilities sum to " + std::to_string(total) + " instead of " + std::to_string(expected) +
            " at step " + std::to_string(step));
    }
    for (auto &b : out) {
        b.probability /= total;
    }
    return out;
}

std::vector<Branch> Engine::expand(const SimulationNode &node) const {
    if (!node.classical.inputs_resolved()) {
        return input_branches(node);
    }
    return evolve_step(node.state, node.classical, node.step + 1);
}

bool Engine::is_terminal(const SimulationNode &node) const {
    return node.classical.inputs_resolved() && node.state.layout().rank() == 0;
}

Engine::PovmCheck Engine::check_povm(const ClassicalState &classical) const {
    auto ops = operators_for(classical);
    PovmCheck check;
    Layout layout(untagged_dims());
    for (const auto &m : ops->measurements) {
        std::array<uint32_t, 4> base = {static_cast<uint32_t>(m.cell.x), static_cast<uint32_t>(m.cell.y), 0, 0};
        uint64_t offset = layout.encode(base);
        Block root{};
        for (uint64_t i = 0; i < 8; i++) {
            for (uint64_t j = 0; j < 8; j++) {
                root[i][j] = ops->null_root.at(offset + i, offset + j);
            }
        }
        Block sum{};
        for (const auto &o : m.outcomes) {
            Block p = dense_block(o.projection());
            for (size_t i = 0; i < 8; i++) {
                for (size_t j = 0; j < 8; j++) {
                    sum[i][j] += o.weight * p[i][j];
                }
            }
        }
        for (size_t i = 0; i < 8; i++) {
            for (size_t j = 0; j < 8; j++) {
                Complex star{};
                Complex square{};
                for (size_t k = 0; k < 8; k++) {
                    star += std::conj(root[k][i]) * root[k][j];
                    square += root[i][k] * root[k][j];
                }
                Complex id = i == j ? 1.0 : 0.0;
                check.completeness_error = std::max(check.completeness_error, std::abs(sum[i][j] + star - id));
                check.root_error = std::max(
                    {check.root_error, std::abs(square - (id - sum[i][j])), std::abs(root[i][j] - std::conj(root[j][i]))});
            }
        }
    }
    return check;
}

}  // namespace photonlab
