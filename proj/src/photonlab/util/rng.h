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

#ifndef PHOTONLAB_UTIL_RNG_H
#define PHOTONLAB_UTIL_RNG_H

#include <cstdint>
#include <random>

namespace photonlab {

/// Seeded generator with a separate stream per (seed, stream id) pair. Uniform and Gaussian draws
/// are computed here from raw 64-bit outputs so results match across standard libraries.
class Rng {
   public:
    Rng(uint64_t seed, uint64_t stream);

    uint64_t next_u64() {
        return engine_();
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double gaussian();

   private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

uint64_t splitmix64(uint64_t x);

}  // namespace photonlab

#endif
