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

#ifndef PHOTONLAB_IO_SETUP_IO_H
#define PHOTONLAB_IO_SETUP_IO_H

#include <string>
#include <vector>

#include "json.hpp"
#include "photonlab/engine/board.h"

namespace photonlab {

inline constexpr int kSetupFormatVersion = 1;

/// A detector that should fire with at least the given probability.
struct Goal {
    std::string detector;
    double threshold = 0;
    bool operator==(const Goal &) const = default;
};

struct SetupDocument {
    std::string name;
    std::string description;
    Board board{Grid{}};
    std::vector<Goal> goals;
};

/// Schema or consistency violation. `where()` is a JSON path such as "$.elements[2].params".
class SetupError : public std::invalid_argument {
   public:
    SetupError(std::string where, const std::string &message);
    const std::string &where() const {
        return where_;
    }

   private:
    std::string where_;
};

using Json = nlohmann::ordered_json;

SetupDocument parse_setup(std::string_view text);
SetupDocument parse_setup_json(const Json &root);
Json setup_json(const SetupDocument &doc);
/// Canonical text: fixed key order, two-space indentation, trailing newline.
std::string serialize_setup(const SetupDocument &doc);

/// One element object as it appears in the "elements" array.
PlacedElement parse_element(const Json &value, const std::string &where);
Json element_json(const PlacedElement &element);
ElementParams parse_params(const Json &value, const std::string &where);

SetupDocument load_setup_file(const std::string &path);

}  // namespace photonlab

#endif
