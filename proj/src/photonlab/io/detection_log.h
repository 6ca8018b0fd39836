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

#ifndef PHOTONLAB_IO_DETECTION_LOG_H
#define PHOTONLAB_IO_DETECTION_LOG_H

#include <string>
#include <vector>

#include "photonlab/engine/multiverse_tree.h"

namespace photonlab {

struct DetectionRow {
    uint64_t run = 0;
    uint64_t seed = 0;
    std::vector<int64_t> inputs;
    std::vector<int> detectors;
    std::vector<int64_t> outputs;
    /// Step of the first detection per detector, or -1.
    std::vector<int> steps;
};

/// Column layout is fixed by the board: switches and random switches, then detector-like elements,
/// then output variables, each in board order.
struct DetectionLog {
    std::vector<std::string> input_names;
    std::vector<std::string> detector_names;
    std::vector<std::string> output_names;
    std::vector<DetectionRow> rows;

    /// Column index of a named input, detector or output within its group.
    size_t input_index(std::string_view name) const;
    size_t detector_index(std::string_view name) const;
};

DetectionLog empty_log(const Board &board);
DetectionRow log_row(const Board &board, const SampleResult &sample);

/// Runs `runs` seeded trajectories (run ids 0..runs-1) and logs them.
DetectionLog sample_log(const Engine &engine, uint64_t seed, uint64_t runs, const TreeConfig &config = {});

/// RFC 4180 CSV with a header row and CRLF-free "\n" line endings.
std::string write_csv(const DetectionLog &log);

}  // namespace photonlab

#endif
