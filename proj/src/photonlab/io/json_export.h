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

#ifndef PHOTONLAB_IO_JSON_EXPORT_H
#define PHOTONLAB_IO_JSON_EXPORT_H

#include "json.hpp"
#include "photonlab/analysis/entanglement.h"
#include "photonlab/engine/multiverse_tree.h"
#include "photonlab/io/chsh.h"

namespace photonlab {

using Json = nlohmann::ordered_json;

/// Sparse state entries as [label, re, im] triples in HV basis, key order.
Json state_entries_json(const SparseVector &state);
/// Display components of a state in the requested basis and complex format.
Json ket_json(const SparseVector &state, PolarizationBasis basis, ComplexFormat format);
Json events_json(const std::vector<DetectionEvent> &events);
Json node_json(const SimulationNode &node, const Board &board);
Json tree_json(const MultiverseTree &tree, const Board &board);
Json report_json(const EntanglementReport &report);
Json chsh_json(const ChshEstimate &estimate);
/// Operator entries as {out, in, re, im} with basis-state labels.
Json operator_json(const SparseOperator &op);

}  // namespace photonlab

#endif
