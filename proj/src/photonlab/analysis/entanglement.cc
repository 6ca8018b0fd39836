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

#include "photonlab/analysis/entanglement.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace photonlab {

namespace {

constexpr int kBlinkAttempts = 8;
constexpr double kVanishingNorm = 1e-12;

std::vector<Dimension> particle_dims(const Layout &layout, const std::string &tag) {
    std::vector<Dimension> dims;
    for (size_t axis : layout.axes_of(tag)) {
        dims.push_back(layout.dims()[axis]);
    }
    return dims;
}

SparseVector random_on_support(const SparseVector &state, const std::string &tag, Rng &rng) {
    const auto &layout = state.layout();
    auto axes = layout.axes_of(tag);
    Layout sub(particle_dims(layout, tag));
    std::set<uint64_t> support;
    std::vector<uint32_t> coords(axes.size());
    for (const auto &e : state.entries()) {
        for (size_t k = 0; k < axes.size(); k++) {
            coords[k] = layout.coordinate(e.key, axes[k]);
        }
        support.insert(sub.encode(coords));
    }
    std::vector<Entry> entries;
    for (auto key : support) {
        double re = rng.gaussian();
        double im = rng.gaussian();
        entries.push_back({key, Complex(re, im)});
    }
    return SparseVector(std::move(sub), std::move(entries)).normalized();
}

// Contracts every particle except `keep` against `bras` (indexed by particle).
SparseVector condition(const SparseVector &state, const std::vector<SparseVector> &bras, size_t keep) {
    SparseVector rest = state;
    for (size_t k = 0; k < bras.size(); k++) {
        if (k != keep) {
            rest = partial_inner(bras[k], rest);
        }
    }
    return rest;
}

}  // namespace

double renyi2_entropy(const SparseVector &state, size_t particle) {
    return -std::log2(subsystem_purity(state, particle));
}

std::vector<double> renyi2_entropies(const SparseVector &state) {
    std::vector<double> out;
    size_t n = state.layout().particles().size();
    for (size_t k = 0; k < n; k++) {
        out.push_back(renyi2_entropy(state, k));
    }
    return out;
}

BlinkSample blink_sample(const SparseVector &state, Rng &rng) {
    auto tags = state.layout().particles();
    size_t n = tags.size();
    BlinkSample sample;
    if (n == 0) {
        return sample;
    }
    if (n == 1) {
        sample.states.push_back(state);
        sample.weights.push_back(state.norm());
        return sample;
    }
    for (int attempt = 0; attempt < kBlinkAttempts; attempt++) {
        std::vector<SparseVector> refs(n);
        for (size_t k = 1; k < n; k++) {
            refs[k] = random_on_support(state, tags[k], rng);
        }
        sample.states.clear();
        sample.weights.clear();
        bool vanished = false;
        for (size_t k = 0; k < n && !vanished; k++) {
            auto psi = condition(state, refs, k);
            double norm = psi.norm();
            if (norm < kVanishingNorm) {
                vanished = true;
                break;
            }
            psi = psi.scaled(1 / norm);
            refs[k] = psi;
            sample.states.push_back(std::move(psi));
            sample.weights.push_back(norm);
        }
        if (!vanished) {
            return sample;
        }
    }
    throw std::runtime_error("blink_sample: conditioned state vanished in every attempt");
}

Complex particle_overlap(const SparseVector &a, const SparseVector &b) {
    auto ta = a.layout().particles();
    auto tb = b.layout().particles();
    if (ta.size() != 1 || tb.size() != 1) {
        throw DimensionError("particle_overlap expects single-particle states");
    }
    return inner_product(retag(a, ta[0], "overlap"), retag(b, tb[0], "overlap"));
}

EntanglementGraph entanglement_graph(const std::vector<double> &entropies) {
    size_t n = entropies.size();
    if (n < 2) {
        throw std::invalid_argument("entanglement graph needs at least two particles");
    }
    EntanglementGraph g;
    double total = 0;
    double largest = 0;
    for (size_t k = 0; k < n; k++) {
        if (entropies[k] < -1e-9) {
            throw std::invalid_argument("entropies must be nonnegative");
        }
        double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        g.anchors.push_back({std::cos(angle), std::sin(angle)});
        double spring = std::max(entropies[k], 0.0);
        total += spring;
        largest = std::max(largest, spring);
    }
    for (size_t k = 0; k < n; k++) {
        double spring = std::max(entropies[k], 0.0);
        double weight = total > 0 ? spring / total : 1.0 / static_cast<double>(n);
        g.equilibrium.x += weight * g.anchors[k].x;
        g.equilibrium.y += weight * g.anchors[k].y;
        g.widths.push_back(largest > 0 ? spring / largest : 0.0);
    }
    return g;
}

EntanglementReport entanglement_report(const SparseVector &state) {
    EntanglementReport report;
    report.particles = state.layout().particles();
    report.entropies = renyi2_entropies(state);
    if (report.particles.size() >= 2) {
        report.graph = entanglement_graph(report.entropies);
    }
    return report;
}

}  // namespace photonlab
