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

#include "photonlab/io/detection_log.h"

#include <algorithm>

namespace photonlab {

namespace {

bool is_input(ElementKind kind) {
    return kind == ElementKind::Switch || kind == ElementKind::RandomSwitch;
}

bool is_detector(ElementKind kind) {
    return is_optical(kind) && emits_signal(kind);
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

size_t position(const std::vector<std::string> &names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw std::out_of_range("no log column '" + std::string(name) + "'");
    }
    return static_cast<size_t>(it - names.begin());
}

}  // namespace

size_t DetectionLog::input_index(std::string_view name) const {
    return position(input_names, name);
}

size_t DetectionLog::detector_index(std::string_view name) const {
    return position(detector_names, name);
}

DetectionLog empty_log(const Board &board) {
    DetectionLog log;
    for (const auto &e : board.elements()) {
        if (is_input(e.spec.kind)) {
            log.input_names.push_back(e.id);
        } else if (is_detector(e.spec.kind)) {
            log.detector_names.push_back(e.id);
        } else if (e.spec.kind == ElementKind::OutputVariable) {
            log.output_names.push_back(e.id);
        }
    }
    return log;
}

DetectionRow log_row(const Board &board, const SampleResult &sample) {
    DetectionRow row;
    row.run = sample.run;
    row.seed = sample.seed;
    const auto &classical = sample.leaf.classical;
    const auto &elements = board.elements();
    for (size_t k = 0; k < elements.size(); k++) {
        auto kind = elements[k].spec.kind;
        if (is_input(kind)) {
            row.inputs.push_back(classical.values[k]);
        } else if (is_detector(kind)) {
            row.detectors.push_back(classical.fired[k]);
            int step = -1;
            for (const auto &e : classical.record) {
                if (e.element == elements[k].id) {
                    step = e.step;
                    break;
                }
            }
            row.steps.push_back(step);
        } else if (kind == ElementKind::OutputVariable) {
            row.outputs.push_back(classical.values[k]);
        }
    }
    return row;
}

DetectionLog sample_log(const Engine &engine, uint64_t seed, uint64_t runs, const TreeConfig &config) {
    auto log = empty_log(engine.board());
    Sampler sampler(engine, config);
    log.rows.reserve(runs);
    for (uint64_t run = 0; run < runs; run++) {
        log.rows.push_back(log_row(engine.board(), sampler.sample(seed, run)));
    }
    return log;
}

std::string write_csv(const DetectionLog &log) {
    std::vector<std::string> header = {"run", "seed"};
    for (const auto *group : {&log.input_names, &log.detector_names, &log.output_names}) {
        for (const auto &name : *group) {
            header.push_back(name);
        }
    }
    for (const auto &name : log.detector_names) {
        header.push_back(name + ".step");
    }
    std::string out;
    for (size_t k = 0; k < header.size(); k++) {
        out += (k ? "," : "") + csv_field(header[k]);
    }
    out += "\n";
    for (const auto &row : log.rows) {
        out += std::to_string(row.run) + "," + std::to_string(row.seed);
        for (auto v : row.inputs) {
            out += "," + std::to_string(v);
        }
        for (auto v : row.detectors) {
            out += "," + std::to_string(v);
        }
        for (auto v : row.outputs) {
            out += "," + std::to_string(v);
        }
        for (auto v : row.steps) {
            out += v < 0 ? std::string(",") : "," + std::to_string(v);
        }
        out += "\n";
    }
    return out;
}

}  // namespace photonlab
