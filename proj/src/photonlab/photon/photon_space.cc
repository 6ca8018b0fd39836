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

#include "photonlab/photon/photon_space.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace photonlab {

namespace {

constexpr double kNormTolerance = 1e-9;
const double kInvSqrt2 = 1 / std::numbers::sqrt2;

std::vector<std::string> numbered_labels(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int k = 0; k < n; k++) {
        out.push_back(std::to_string(k));
    }
    return out;
}

std::string fixed(double v) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(4);
    if (std::abs(v) < 5e-5) {
        v = 0;
    }
    ss << v;
    return ss.str();
}

}  // namespace

Step step_of(Direction d) {
    switch (d) {
        case Direction::Right:
            return {1, 0};
        case Direction::Up:
            return {0, -1};
        case Direction::Left:
            return {-1, 0};
        case Direction::Down:
            return {0, 1};
    }
    return {0, 0};
}

Direction opposite(Direction d) {
    return turned(d, 2);
}

Direction turned(Direction d, int quarter_turns) {
    int k = (static_cast<int>(d) + quarter_turns) % 4;
    if (k < 0) {
        k += 4;
    }
    return static_cast<Direction>(k);
}

std::string_view direction_label(Direction d) {
    static const std::array<std::string_view, 4> labels = {"→", "↑", "←", "↓"};
    return labels[static_cast<size_t>(d)];
}

Dimension direction_dimension() {
    return Dimension("direction", {"→", "↑", "←", "↓"});
}

Dimension polarization_dimension() {
    return Dimension("polarization", {"H", "V"});
}

Dimension polarization_dimension(PolarizationBasis basis) {
    switch (basis) {
        case PolarizationBasis::HV:
            return polarization_dimension();
        case PolarizationBasis::DA:
            return Dimension("polarization", {"D", "A"});
        case PolarizationBasis::LR:
            return Dimension("polarization", {"L", "R"});
    }
    throw std::invalid_argument("unknown basis");
}

std::vector<Dimension> photon_dims(const Grid &grid, std::string_view tag) {
    if (grid.width <= 0 || grid.height <= 0) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    return {
        tagged(Dimension("x", numbered_labels(grid.width)), tag),
        tagged(Dimension("y", numbered_labels(grid.height)), tag),
        tagged(direction_dimension(), tag),
        tagged(polarization_dimension(), tag),
    };
}

std::string photon_tag(size_t index) {
    return "p" + std::to_string(index);
}

SparseVector single_photon(
    const Grid &grid, const PhotonCoordinate &coord, std::array<Complex, 2> polarization, std::string_view tag) {
    if (!grid.contains(coord.x, coord.y)) {
        throw std::out_of_range(
            "photon position (" + std::to_string(coord.x) + "," + std::to_string(coord.y) + ") is off the grid");
    }
    double n2 = std::norm(polarization[0]) + std::norm(polarization[1]);
    if (std::abs(n2 - 1) > kNormTolerance) {
        throw std::domain_error("polarization amplitudes are not normalized");
    }
    Layout layout(photon_dims(grid, tag));
    std::vector<Entry> entries;
    for (uint32_t p = 0; p < 2; p++) {
        std::array<uint32_t, 4> c = {
            static_cast<uint32_t>(coord.x), static_cast<uint32_t>(coord.y), static_cast<uint32_t>(coord.direction), p};
        entries.push_back({layout.encode(c), polarization[p]});
    }
    return SparseVector(std::move(layout), std::move(entries));
}

SparseVector single_photon(const Grid &grid, const PhotonCoordinate &coord, std::string_view tag) {
    std::array<Complex, 2> pol{};
    pol[static_cast<size_t>(coord.polarization)] = 1;
    return single_photon(grid, coord, pol, tag);
}

SparseVector product_state(const std::vector<SparseVector> &photons) {
    if (photons.empty() || photons.size() > kMaxPhotons) {
        throw std::invalid_argument("product_state supports 1 to 3 photons");
    }
    SparseVector result;
    for (size_t k = 0; k < photons.size(); k++) {
        auto tags = photons[k].layout().particles();
        if (tags.size() != 1) {
            throw std::invalid_argument("product_state expects single-photon factors");
        }
        // Route through a temporary tag so that "p1" -> "p0" renames cannot collide.
        auto tmp = retag(retag(photons[k], tags[0], "tmp"), "tmp", photon_tag(k));
        result = k == 0 ? tmp : tensor_product(result, tmp);
    }
    return result;
}

SparseVector symmetrize(const SparseVector &psi1, const SparseVector &psi2) {
    if (std::abs(psi1.norm_squared() - 1) > kNormTolerance || std::abs(psi2.norm_squared() - 1) > kNormTolerance) {
        throw std::domain_error("symmetrize expects normalized single-photon states");
    }
    auto forward = product_state({psi1, psi2});
    auto swapped = swap_particles(forward, "p0", "p1");
    std::vector<Entry> sum(forward.entries().begin(), forward.entries().end());
    sum.insert(sum.end(), swapped.entries().begin(), swapped.entries().end());
    SparseVector total(forward.layout(), std::move(sum));
    if (total.norm() < 1e-12) {
        throw std::domain_error("symmetrization vanished");
    }
    return total.normalized();
}

SparseVector symmetrize_groups(const SparseVector &state, const std::vector<std::vector<std::string>> &groups) {
    SparseVector current = state;
    for (const auto &group : groups) {
        if (group.size() < 2) {
            continue;
        }
        // Sum over all permutations of the group, generated by applying each arrangement.
        std::vector<size_t> perm(group.size());
        for (size_t k = 0; k < perm.size(); k++) {
            perm[k] = k;
        }
        std::vector<Entry> sum;
        do {
            // Realize the permutation as a product of transpositions on a working copy.
            SparseVector v = current;
            std::vector<size_t> pos = perm;
            for (size_t k = 0; k < pos.size(); k++) {
                while (pos[k] != k) {
                    size_t j = pos[k];
                    v = swap_particles(v, group[k], group[j]);
                    std::swap(pos[k], pos[j]);
                }
            }
            sum.insert(sum.end(), v.entries().begin(), v.entries().end());
        } while (std::next_permutation(perm.begin(), perm.end()));
        SparseVector total(current.layout(), std::move(sum));
        if (total.norm() < 1e-12) {
            throw std::domain_error("symmetrization vanished");
        }
        current = total.normalized();
    }
    return current;
}

std::string_view basis_name(PolarizationBasis basis) {
    switch (basis) {
        case PolarizationBasis::HV:
            return "HV";
        case PolarizationBasis::DA:
            return "DA";
        case PolarizationBasis::LR:
            return "LR";
    }
    return "?";
}

PolarizationBasis parse_basis(std::string_view name) {
    if (name == "HV") {
        return PolarizationBasis::HV;
    }
    if (name == "DA") {
        return PolarizationBasis::DA;
    }
    if (name == "LR") {
        return PolarizationBasis::LR;
    }
    throw std::invalid_argument("unknown polarization basis '" + std::string(name) + "' (expected HV, DA or LR)");
}

std::array<Complex, 4> change_of_basis(PolarizationBasis basis) {
    const Complex i(0, 1);
    switch (basis) {
        case PolarizationBasis::HV:
            return {1, 0, 0, 1};
        case PolarizationBasis::DA:
            // |D> = (|H> + |V>)/sqrt2, |A> = (|H> - |V>)/sqrt2
            return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case PolarizationBasis::LR:
            // |L> = (|H> + i|V>)/sqrt2, |R> = (|H> - i|V>)/sqrt2; rows are the bras.
            return {kInvSqrt2, -i * kInvSqrt2, kInvSqrt2, i * kInvSqrt2};
    }
    throw std::invalid_argument("unknown basis");
}

namespace {

SparseOperator basis_operator(PolarizationBasis basis) {
    auto m = change_of_basis(basis);
    return SparseOperator::from_dense({polarization_dimension(basis)}, {polarization_dimension()}, m);
}

std::vector<std::string> polarization_axes(const SparseVector &v) {
    std::vector<std::string> out;
    for (const auto &d : v.dims()) {
        if (d.base_name() == "polarization") {
            out.push_back(d.name);
        }
    }
    return out;
}

}  // namespace

SparseVector to_polarization_basis(const SparseVector &v, PolarizationBasis basis) {
    auto op = basis_operator(basis);
    SparseVector out = v;
    for (const auto &axis : polarization_axes(v)) {
        std::array<std::string, 1> target = {axis};
        out = apply_on_subset(op, target, out);
    }
    return out;
}

SparseVector from_polarization_basis(const SparseVector &v, PolarizationBasis basis) {
    auto op = dagger(basis_operator(basis));
    SparseVector out = v;
    for (const auto &axis : polarization_axes(v)) {
        std::array<std::string, 1> target = {axis};
        out = apply_on_subset(op, target, out);
    }
    return out;
}

SparseOperator operator_in_basis(const SparseOperator &op, PolarizationBasis basis) {
    if (!op.is_square()) {
        throw DimensionError("operator_in_basis expects a square operator");
    }
    SparseOperator left;
    bool first = true;
    for (const auto &d : op.in_dims()) {
        SparseOperator factor;
        if (d.base_name() == "polarization") {
            if (d.labels != polarization_dimension().labels) {
                throw DimensionError("operator_in_basis expects H/V polarization axes");
            }
            Dimension target(d.name, polarization_dimension(basis).labels);
            factor = SparseOperator::from_dense({target}, {d}, change_of_basis(basis));
        } else {
            factor = SparseOperator::identity({d});
        }
        left = first ? factor : tensor_product(left, factor);
        first = false;
    }
    return compose(compose(left, op), dagger(left));
}

std::string_view format_name(ComplexFormat format) {
    switch (format) {
        case ComplexFormat::Cartesian:
            return "cartesian";
        case ComplexFormat::Polar:
            return "polar";
        case ComplexFormat::PolarTau:
            return "polar-tau";
        case ComplexFormat::Color:
            return "color";
    }
    return "?";
}

ComplexFormat parse_format(std::string_view name) {
    if (name == "cartesian") {
        return ComplexFormat::Cartesian;
    }
    if (name == "polar") {
        return ComplexFormat::Polar;
    }
    if (name == "polar-tau") {
        return ComplexFormat::PolarTau;
    }
    if (name == "color") {
        return ComplexFormat::Color;
    }
    throw std::invalid_argument(
        "unknown complex format '" + std::string(name) + "' (expected cartesian, polar, polar-tau or color)");
}

FormattedComplex format_complex(Complex z, ComplexFormat format) {
    double r = std::abs(z);
    double phase = r == 0 ? 0 : std::arg(z);
    switch (format) {
        case ComplexFormat::Cartesian: {
            std::string sign = z.imag() < 0 ? " - " : " + ";
            return {z.real(), z.imag(), fixed(z.real()) + sign + fixed(std::abs(z.imag())) + "i"};
        }
        case ComplexFormat::Polar:
            return {r, phase, fixed(r) + " exp(" + fixed(phase) + "i)"};
        case ComplexFormat::PolarTau: {
            double turns = phase / (2 * std::numbers::pi);
            if (turns < 0) {
                turns += 1;
            }
            if (turns >= 1 - 1e-15) {
                turns = 0;
            }
            return {r, turns, fixed(r) + " exp(" + fixed(turns) + "τi)"};
        }
        case ComplexFormat::Color: {
            double hue = phase * 180 / std::numbers::pi;
            if (hue < 0) {
                hue += 360;
            }
            if (hue >= 360 - 1e-12) {
                hue = 0;
            }
            return {r, hue, "r=" + fixed(r) + " hue=" + fixed(hue) + "°"};
        }
    }
    throw std::invalid_argument("unknown format");
}

std::string KetComponent::label() const {
    std::string out;
    for (size_t p = 0; p < coordinates.size(); p++) {
        if (p) {
            out += " ";
        }
        for (size_t k = 0; k < coordinates[p].size(); k++) {
            if (k) {
                out += ",";
            }
            out += coordinates[p][k];
        }
    }
    return out;
}

std::vector<KetComponent> ket_components(const SparseVector &v, PolarizationBasis basis, ComplexFormat format) {
    auto w = basis == PolarizationBasis::HV ? v : to_polarization_basis(v, basis);
    const auto &layout = w.layout();
    auto tags = layout.particles();
    std::vector<std::vector<size_t>> axes;
    for (const auto &t : tags) {
        axes.push_back(layout.axes_of(t));
    }
    std::vector<KetComponent> out;
    out.reserve(w.size());
    for (const auto &e : w.entries()) {
        KetComponent c;
        for (const auto &group : axes) {
            std::vector<std::string> coords;
            for (auto a : group) {
                coords.push_back(layout.dims()[a].labels[layout.coordinate(e.key, a)]);
            }
            c.coordinates.push_back(std::move(coords));
        }
        c.amplitude = e.amplitude;
        c.probability = std::norm(e.amplitude);
        c.formatted = format_complex(e.amplitude, format);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace photonlab
