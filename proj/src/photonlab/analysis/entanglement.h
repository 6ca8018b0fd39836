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

#ifndef PHOTONLAB_ANALYSIS_ENTANGLEMENT_H
#define PHOTONLAB_ANALYSIS_ENTANGLEMENT_H

#include "photonlab/tensor/sparse_tensor.h"
#include "photonlab/util/rng.h"

namespace photonlab {

/// -log2 Tr[rho_k^2] in bits for the k-th particle of a normalized pure state.
double renyi2_entropy(const SparseVector &state, size_t particle);

/// Entropy of every particle against the rest, in layout particle order.
std::vector<double> renyi2_entropies(const SparseVector &state);

/// One coordinated snapshot of an entangled state: a normalized single-particle state per
/// particle together with the norm it had before normalization.
struct BlinkSample {
    std::vector<SparseVector> states;
    std::vector<double> weights;
};

/// Draws random reference states for particles 2..n, projects them out to get particle 1, then
/// conditions each later particle on the states already obtained. Reference states are Gaussian
/// on the particle's marginal support. Retries up to 8 times when a conditioned state vanishes,
/// then throws std::runtime_error.
BlinkSample blink_sample(const SparseVector &state, Rng &rng);

/// <a|b> between single-particle states carrying different particle tags but equal base axes.
Complex particle_overlap(const SparseVector &a, const SparseVector &b);

struct Point {
    double x = 0;
    double y = 0;
};

/// Spring layout: particles on the unit circle, joined at the point where springs with constants
/// equal to the entropies balance.
struct EntanglementGraph {
    std::vector<Point> anchors;
    Point equilibrium;
    /// Spring constant over the largest constant; all zero when nothing is entangled.
    std::vector<double> widths;
};

/// Requires at least two particles and nonnegative entropies.
EntanglementGraph entanglement_graph(const std::vector<double> &entropies);

struct EntanglementReport {
    std::vector<std::string> particles;
    std::vector<double> entropies;
    /// Present for two or more particles.
    std::optional<EntanglementGraph> graph;
};

EntanglementReport entanglement_report(const SparseVector &state);

}  // namespace photonlab

#endif
