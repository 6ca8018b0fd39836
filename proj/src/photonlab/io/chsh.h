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

#ifndef PHOTONLAB_IO_CHSH_H
#define PHOTONLAB_IO_CHSH_H

#include <array>

#include "photonlab/io/detection_log.h"
#include "photonlab/io/setup_io.h"

namespace photonlab {

/// Elements feeding a correlator through its six named ports.
struct ChshWiring {
    std::string a_setting, b_setting;
    std::string a_plus, a_minus, b_plus, b_minus;
};

/// Reads the wiring of `correlator` (or the only correlator when empty). Throws BoardError when a
/// port is missing.
ChshWiring chsh_wiring(const Board &board, std::string_view correlator = "");

/// Correlators are indexed by settings (a, b) as 2a + b. S = E00 + E01 + E10 - E11.
struct ChshEstimate {
    std::array<double, 4> correlators{};
    /// Probability mass (exact) or number of coincidence runs (sampled) per setting.
    std::array<double, 4> counts{};
    double s = 0;
    /// Zero for exact estimates.
    double standard_error = 0;
};

ChshEstimate chsh_from_tree(const MultiverseTree &tree, const Board &board, const ChshWiring &wiring);
ChshEstimate chsh_from_log(const DetectionLog &log, const ChshWiring &wiring);

struct GoalResult {
    Goal goal;
    double probability = 0;
    bool met = false;
};

std::vector<GoalResult> evaluate_goals(const SetupDocument &doc, const MultiverseTree &tree);

}  // namespace photonlab

#endif
