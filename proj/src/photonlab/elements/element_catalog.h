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

#ifndef PHOTONLAB_ELEMENTS_ELEMENT_CATALOG_H
#define PHOTONLAB_ELEMENTS_ELEMENT_CATALOG_H

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "photonlab/photon/photon_space.h"
#include "photonlab/tensor/sparse_tensor.h"

namespace photonlab {

enum class ElementKind {
    // Sources.
    SinglePhotonSource,
    BellPairSource,
    GhzSource,
    WSource,
    // Measurements.
    Detector,
    Bomb,
    Rock,
    NeutralDensityFilter,
    LinearPolarizer,
    NondemolitionDetector,
    // Passive optics.
    BeamSplitter,
    PolarizingBeamSplitter,
    Mirror,
    CornerCube,
    OpticalCirculator,
    WavePlate,
    FaradayRotator,
    SugarSolution,
    VacuumJar,
    GlassSlab,
    // Inputs and outputs.
    Switch,
    RandomSwitch,
    OutputVariable,
    Correlator,
    Goal,
    // Classical gates.
    And,
    Nand,
    Or,
    Nor,
    Xor,
    Sum,
    Min,
    Max,
    // Quantum gates.
    Identity,
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    SqrtNot,
    Cnot,
    Cz,
    Comment,
};

enum class ElementCategory {
    Source,
    Measurement,
    PassiveOptics,
    InputOutput,
    ClassicalGate,
    QuantumGate,
    Comment,
};

std::string_view kind_name(ElementKind kind);
ElementKind parse_kind(std::string_view name);
ElementCategory category_of(ElementKind kind);
const std::vector<ElementKind> &all_kinds();

/// True for kinds that sit on a grid cell and can interact with photons.
bool is_optical(ElementKind kind);
/// True for kinds whose output feeds classical wires.
bool emits_signal(ElementKind kind);

using ParamValue = std::variant<double, std::string>;
using ElementParams = std::map<std::string, ParamValue>;

struct ParamSpec {
    std::string name;
    ParamValue default_value;
    double min = 0;
    double max = 0;
    /// For string parameters: allowed values. Empty means free text.
    std::vector<std::string> choices;
};

/// Parameters a kind accepts, with defaults and legal ranges.
const std::vector<ParamSpec> &param_specs(ElementKind kind);

/// Raised for a parameter that is unknown or outside its legal set.
struct IllegalParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Checks names, types and ranges of `params` against the kind's specs.
void validate_params(ElementKind kind, const ElementParams &params);
/// Checks that a rotation (degrees) is legal for the kind.
void validate_rotation(ElementKind kind, int rotation_degrees);

/// A placed element's configuration: the base parameter set plus the alternate set used while
/// its control wire carries a nonzero value.
struct ElementSpec {
    ElementKind kind = ElementKind::Comment;
    int rotation = 0;
    ElementParams params;
    ElementParams params_on;

    /// Defaults overlaid with `params`, then with `params_on` when `control_bit` is set.
    ElementParams resolved(bool control_bit) const;
};

double number_param(const ElementParams &params, const std::string &name);
std::string string_param(const ElementParams &params, const std::string &name);

/// Local unitary on (direction, polarization).
struct UnitaryAction {
    SparseOperator op;
};

/// One weighted projection M = w P. P is spanned by the orthonormal `basis` kets over
/// (direction, polarization). A destructive outcome branches once per basis ket.
struct MeasurementOutcome {
    double weight;
    std::vector<SparseVector> basis;
    bool destructive;
    std::string label;

    SparseOperator projection() const;
};

struct MeasurementAction {
    std::vector<MeasurementOutcome> outcomes;
};

/// V12 V21 on (a.direction, a.polarization, b.direction, b.polarization).
struct TwoPhotonAction {
    SparseOperator op;
};

/// Photons emitted at t = 0: one direction per photon and the joint polarization state over
/// axes "s0.polarization", "s1.polarization", ...
struct SourceAction {
    std::vector<Direction> directions;
    SparseVector polarization;
    double wavelength = 0;
};

/// Elements with no quantum action (classical logic, I/O, comments).
struct InertAction {};

using LocalAction = std::variant<UnitaryAction, MeasurementAction, TwoPhotonAction, SourceAction, InertAction>;

/// The physical action of an element with its parameter set chosen by `control_bit`.
LocalAction action_for(const ElementSpec &spec, bool control_bit = false);

/// Non-polarizing beam splitter. `rotation` is the angle of the splitting surface in degrees
/// (45 is "/"). Transmission sqrt(1 - r); reflection i sqrt(r) exp(+i phase) from the front
/// side and i sqrt(r) exp(-i phase) from the back side.
SparseOperator beam_splitter_operator(double reflectance, double phase, int rotation);
/// Both faces reflect; horizontal polarization picks up a sign flip.
SparseOperator mirror_operator(int rotation);
/// Transmits H, reflects V.
SparseOperator polarizing_beam_splitter_operator(int rotation);
SparseOperator corner_cube_operator();
/// Cyclic direction permutation right -> up -> left -> down -> right.
SparseOperator optical_circulator_operator();
SparseOperator wave_plate_operator(double axis_angle, double retardance);
/// Rotation by +angle for light travelling along the axis direction, -angle against it,
/// identity across it.
SparseOperator faraday_rotator_operator(double angle, int rotation);
/// Rotation by the same angle for every direction.
SparseOperator sugar_solution_operator(double angle);
/// Global phase exp(i phase) on every traversing photon; the vacuum jar uses a negative phase.
SparseOperator phase_operator(double phase);
SparseOperator single_qubit_gate(ElementKind kind);
/// V12 V21 for CNOT (vertical-axis photon controls horizontal-axis photon) or CZ.
SparseOperator two_photon_gate(ElementKind kind);

/// Rotation matrix [[cos, -sin], [sin, cos]] on (H, V), row-major.
std::array<Complex, 4> polarization_rotation(double angle);
/// A 2x2 polarization matrix extended to (direction, polarization) as identity on direction.
SparseOperator on_polarization(const std::array<Complex, 4> &m);
std::vector<Dimension> local_dims();

}  // namespace photonlab

#endif
