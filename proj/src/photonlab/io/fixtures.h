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

#ifndef PHOTONLAB_IO_FIXTURES_H
#define PHOTONLAB_IO_FIXTURES_H

#include "photonlab/io/setup_io.h"

namespace photonlab {

/// Names of the bundled experiments, in catalog order.
const std::vector<std::string> &fixture_names();

/// Builds a bundled experiment by name. Throws std::out_of_range for unknown names.
SetupDocument fixture(std::string_view name);

/// Polarization Zeno chain: an H photon through `stages` polarizers whose transmission axes step
/// by pi / (2 stages) up to vertical, then a detector "D".
SetupDocument zeno_fixture(int stages);

/// Teleportation of cos(angle) H + exp(i phase) sin(angle) V from photon p0 to photon p2.
SetupDocument teleportation_fixture(double angle, double phase);

/// Step at which the teleported photon has passed both corrections.
inline constexpr int kTeleportationCheckStep = 7;

/// Directory holding the shipped JSON copies of the fixtures.
std::string fixture_directory();

}  // namespace photonlab

#endif
