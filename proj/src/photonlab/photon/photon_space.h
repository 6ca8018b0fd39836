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

#ifndef PHOTONLAB_PHOTON_PHOTON_SPACE_H
#define PHOTONLAB_PHOTON_PHOTON_SPACE_H

#include <array>
#include <string>
#include <vector>

#include "photonlab/tensor/sparse_tensor.h"

namespace photonlab {

inline constexpr size_t kMaxPhotons = 3;

/// Cardinal propagation direction. The index times 90 degrees is the counterclockwise angle
/// from "right"; y grows downward, so Up moves to y - 1.
enum class Direction : uint8_t { Right = 0, Up = 1, Left = 2, Down = 3 };

enum class Polarization : uint8_t { H = 0, V = 1 };

struct Step {
    int dx;
    int dy;
};

Step step_of(Direction d);
Direction opposite(Direction d);
/// Direction rotated counterclockwise by `quarter_turns`.
Direction turned(Direction d, int quarter_turns);
std::string_view direction_label(Direction d);

struct Grid {
    int width = 13;
    int height = 10;

    bool contains(int x, int y) const {
        return x >= 0 && y >= 0 && x < width && y < height;
    }
    bool operator==(const Grid &) const = default;
};

struct PhotonCoordinate {
    int x = 0;
    int y = 0;
    Direction direction = Direction::Right;
    Polarization polarization = Polarization::H;
};

/// Axis order of a photon: x, y, direction, polarization.
enum PhotonAxis : size_t { kAxisX = 0, kAxisY = 1, kAxisDirection = 2, kAxisPolarization = 3 };

Dimension direction_dimension();
Dimension polarization_dimension();
/// The four dimensions (x, y, direction, polarization) of one photon, tagged with `tag`.
std::vector<Dimension> photon_dims(const Grid &grid, std::string_view tag);
std::string photon_tag(size_t index);

/// A photon at `coord` (polarization field ignored) with polarization amplitudes (H, V).
SparseVector single_photon(
    const Grid &grid,
    const PhotonCoordinate &coord,
    std::array<Complex, 2> polarization,
    std::string_view tag = "p0");
/// A photon in the basis state `coord`.
SparseVector single_photon(const Grid &grid, const PhotonCoordinate &coord, std::string_view tag = "p0");

/// Tensor product of 1..3 photons, retagged p0, p1, p2 in order.
SparseVector product_state(const std::vector<SparseVector> &photons);

/// Normalized (|psi1 psi2> + |psi2 psi1>) for two normalized single-photon states.
SparseVector symmetrize(const SparseVector &psi1, const SparseVector &psi2);

/// Sums `state` over every permutation within each group of particle tags, then normalizes.
/// Used for photons that share a wavelength and are therefore indistinguishable.
SparseVector symmetrize_groups(const SparseVector &state, const std::vector<std::vector<std::string>> &groups);

enum class PolarizationBasis { HV, DA, LR };

std::string_view basis_name(PolarizationBasis basis);
PolarizationBasis parse_basis(std::string_view name);

/// Row-major 2x2 matrix whose rows are the target basis bras expressed in H/V:
/// entry (b, a) = <b|a>.
std::array<Complex, 4> change_of_basis(PolarizationBasis basis);

/// Polarization dimension labeled in the given basis.
Dimension polarization_dimension(PolarizationBasis basis);

/// Re-expresses every polarization axis of `v` (currently H/V) in `basis`.
SparseVector to_polarization_basis(const SparseVector &v, PolarizationBasis basis);
/// Inverse of to_polarization_basis.
SparseVector from_polarization_basis(const SparseVector &v, PolarizationBasis basis);

/// Conjugates an operator acting on H/V polarization axes into `basis`: B O B^dagger.
SparseOperator operator_in_basis(const SparseOperator &op, PolarizationBasis basis);

enum class ComplexFormat { Cartesian, Polar, PolarTau, Color };

std::string_view format_name(ComplexFormat format);
ComplexFormat parse_format(std::string_view name);

/// A complex number rendered in one of the display formats. For Cartesian the pair is (re, im);
/// Polar is (r, phase in radians in (-pi, pi]); PolarTau is (r, phase in turns in [0, 1));
/// Color is (radius, hue in degrees in [0, 360)).
struct FormattedComplex {
    double first;
    double second;
    std::string text;
};

FormattedComplex format_complex(Complex z, ComplexFormat format);

struct KetComponent {
    /// Coordinate labels per particle, e.g. {{"3","2","→","H"}, {"4","2","↑","V"}}.
    std::vector<std::vector<std::string>> coordinates;
    Complex amplitude;
    double probability;
    FormattedComplex formatted;

    /// Per-particle coordinates joined by commas, particles separated by spaces.
    std::string label() const;
};

/// Display-ready components of `v` in the given basis, in key order.
std::vector<KetComponent> ket_components(const SparseVector &v, PolarizationBasis basis, ComplexFormat format);

}  // namespace photonlab

#endif
