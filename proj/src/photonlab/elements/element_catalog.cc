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

#include "photonlab/elements/element_catalog.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace photonlab {

namespace {

using std::numbers::pi;

const std::vector<std::pair<ElementKind, std::string_view>> &kind_table() {
    static const std::vector<std::pair<ElementKind, std::string_view>> table = {
        {ElementKind::SinglePhotonSource, "single_photon_source"},
        {ElementKind::BellPairSource, "bell_pair_source"},
        {ElementKind::GhzSource, "ghz_source"},
        {ElementKind::WSource, "w_source"},
        {ElementKind::Detector, "detector"},
        {ElementKind::Bomb, "bomb"},
        {ElementKind::Rock, "rock"},
        {ElementKind::NeutralDensityFilter, "neutral_density_filter"},
        {ElementKind::LinearPolarizer, "linear_polarizer"},
        {ElementKind::NondemolitionDetector, "nondemolition_detector"},
        {ElementKind::BeamSplitter, "beam_splitter"},
        {ElementKind::PolarizingBeamSplitter, "polarizing_beam_splitter"},
        {ElementKind::Mirror, "mirror"},
        {ElementKind::CornerCube, "corner_cube"},
        {ElementKind::OpticalCirculator, "optical_circulator"},
        {ElementKind::WavePlate, "wave_plate"},
        {ElementKind::FaradayRotator, "faraday_rotator"},
        {ElementKind::SugarSolution, "sugar_solution"},
        {ElementKind::VacuumJar, "vacuum_jar"},
        {ElementKind::GlassSlab, "glass_slab"},
        {ElementKind::Switch, "switch"},
        {ElementKind::RandomSwitch, "random_switch"},
        {ElementKind::OutputVariable, "output_variable"},
        {ElementKind::Correlator, "correlator"},
        {ElementKind::Goal, "goal"},
        {ElementKind::And, "and"},
        {ElementKind::Nand, "nand"},
        {ElementKind::Or, "or"},
        {ElementKind::Nor, "nor"},
        {ElementKind::Xor, "xor"},
        {ElementKind::Sum, "sum"},
        {ElementKind::Min, "min"},
        {ElementKind::Max, "max"},
        {ElementKind::Identity, "identity"},
        {ElementKind::PauliX, "pauli_x"},
        {ElementKind::PauliY, "pauli_y"},
        {ElementKind::PauliZ, "pauli_z"},
        {ElementKind::Hadamard, "hadamard"},
        {ElementKind::SqrtNot, "sqrt_not"},
        {ElementKind::Cnot, "cnot"},
        {ElementKind::Cz, "cz"},
        {ElementKind::Comment, "comment"},
    };
    return table;
}

ParamSpec number(std::string name, double def, double lo, double hi) {
    return ParamSpec{std::move(name), def, lo, hi, {}};
}

ParamSpec text(std::string name, std::string def, std::vector<std::string> choices = {}) {
    return ParamSpec{std::move(name), std::move(def), 0, 0, std::move(choices)};
}

constexpr double kAngleLimit = 4 * pi;

// Direction unit vectors with y pointing up (counterclockwise angles).
std::pair<int, int> math_vector(Direction d) {
    auto s = step_of(d);
    return {s.dx, -s.dy};
}

int direction_degrees(Direction d) {
    return 90 * static_cast<int>(d);
}

Direction from_degrees(int degrees) {
    int k = ((degrees % 360) + 360) % 360;
    if (k % 90 != 0) {
        throw std::invalid_argument("angle is not a cardinal direction");
    }
    return static_cast<Direction>(k / 90);
}

bool is_forward(Direction d) {
    return d == Direction::Right || d == Direction::Up;
}

// Geometry of a flat reflecting surface at `rotation` degrees for an incoming direction.
struct Reflection {
    bool parallel;
    bool front;
    Direction out;
};

Reflection reflect(Direction d, int rotation) {
    int rel = ((direction_degrees(d) - rotation) % 180 + 180) % 180;
    if (rel == 0) {
        return {true, false, d};
    }
    double theta = rotation * pi / 180;
    auto [ux, uy] = math_vector(d);
    double dot = -ux * std::sin(theta) + uy * std::cos(theta);
    return {false, dot < 0, from_degrees(2 * rotation - direction_degrees(d))};
}

// Builds an operator on (direction, polarization) from a per-input-basis-state rule.
template <typename F>
SparseOperator local_operator(F &&column) {
    auto dims = local_dims();
    std::vector<OperatorEntry> entries;
    for (uint32_t d = 0; d < 4; d++) {
        for (uint32_t p = 0; p < 2; p++) {
            uint64_t in = d * 2 + p;
            for (const auto &[dir, pol, amp] : column(static_cast<Direction>(d), p)) {
                entries.push_back({static_cast<uint64_t>(dir) * 2 + pol, in, amp});
            }
        }
    }
    return SparseOperator(dims, dims, std::move(entries));
}

using Column = std::vector<std::tuple<Direction, uint32_t, Complex>>;

SparseVector local_ket(Direction d, Complex h, Complex v) {
    Layout layout(local_dims());
    std::array<uint32_t, 2> ch = {static_cast<uint32_t>(d), 0};
    std::array<uint32_t, 2> cv = {static_cast<uint32_t>(d), 1};
    return SparseVector(layout, {{layout.encode(ch), h}, {layout.encode(cv), v}});
}

std::vector<SparseVector> full_local_basis() {
    std::vector<SparseVector> out;
    for (uint32_t d = 0; d < 4; d++) {
        out.push_back(local_ket(static_cast<Direction>(d), 1, 0));
        out.push_back(local_ket(static_cast<Direction>(d), 0, 1));
    }
    return out;
}

SparseVector polarization_state(std::vector<std::pair<std::vector<uint32_t>, Complex>> terms, size_t photons) {
    std::vector<Dimension> dims;
    for (size_t k = 0; k < photons; k++) {
        dims.push_back(tagged(polarization_dimension(), "s" + std::to_string(k)));
    }
    Layout layout(dims);
    std::vector<Entry> entries;
    for (auto &[coords, amp] : terms) {
        entries.push_back({layout.encode(coords), amp});
    }
    return SparseVector(std::move(layout), std::move(entries));
}

std::array<Complex, 4> pauli(ElementKind kind) {
    const Complex i(0, 1);
    const double s = 1 / std::numbers::sqrt2;
    switch (kind) {
        case ElementKind::Identity:
            return {1, 0, 0, 1};
        case ElementKind::PauliX:
            return {0, 1, 1, 0};
        case ElementKind::PauliY:
            return {0, -i, i, 0};
        case ElementKind::PauliZ:
            return {1, 0, 0, -1};
        case ElementKind::Hadamard:
            return {s, s, s, -s};
        case ElementKind::SqrtNot:
            return {(1.0 + i) / 2.0, (1.0 - i) / 2.0, (1.0 - i) / 2.0, (1.0 + i) / 2.0};
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

}  // namespace

std::string_view kind_name(ElementKind kind) {
    for (const auto &[k, name] : kind_table()) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

ElementKind parse_kind(std::string_view name) {
    for (const auto &[k, n] : kind_table()) {
        if (n == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown element kind '" + std::string(name) + "'");
}

const std::vector<ElementKind> &all_kinds() {
    static const std::vector<ElementKind> kinds = [] {
        std::vector<ElementKind> out;
        for (const auto &[k, n] : kind_table()) {
            out.push_back(k);
        }
        return out;
    }();
    return kinds;
}

ElementCategory category_of(ElementKind kind) {
    switch (kind) {
        case ElementKind::SinglePhotonSource:
        case ElementKind::BellPairSource:
        case ElementKind::GhzSource:
        case ElementKind::WSource:
            return ElementCategory::Source;
        case ElementKind::Detector:
        case ElementKind::Bomb:
        case ElementKind::Rock:
        case ElementKind::NeutralDensityFilter:
        case ElementKind::LinearPolarizer:
        case ElementKind::NondemolitionDetector:
            return ElementCategory::Measurement;
        case ElementKind::BeamSplitter:
        case ElementKind::PolarizingBeamSplitter:
        case ElementKind::Mirror:
        case ElementKind::CornerCube:
        case ElementKind::OpticalCirculator:
        case ElementKind::WavePlate:
        case ElementKind::FaradayRotator:
        case ElementKind::SugarSolution:
        case ElementKind::VacuumJar:
        case ElementKind::GlassSlab:
            return ElementCategory::PassiveOptics;
        case ElementKind::Switch:
        case ElementKind::RandomSwitch:
        case ElementKind::OutputVariable:
        case ElementKind::Correlator:
        case ElementKind::Goal:
            return ElementCategory::InputOutput;
        case ElementKind::And:
        case ElementKind::Nand:
        case ElementKind::Or:
        case ElementKind::Nor:
        case ElementKind::Xor:
        case ElementKind::Sum:
        case ElementKind::Min:
        case ElementKind::Max:
            return ElementCategory::ClassicalGate;
        case ElementKind::Identity:
        case ElementKind::PauliX:
        case ElementKind::PauliY:
        case ElementKind::PauliZ:
        case ElementKind::Hadamard:
        case ElementKind::SqrtNot:
        case ElementKind::Cnot:
        case ElementKind::Cz:
            return ElementCategory::QuantumGate;
        case ElementKind::Comment:
            return ElementCategory::Comment;
    }
    return ElementCategory::Comment;
}

bool is_optical(ElementKind kind) {
    auto c = category_of(kind);
    return c == ElementCategory::Source || c == ElementCategory::Measurement || c == ElementCategory::PassiveOptics ||
           c == ElementCategory::QuantumGate;
}

bool emits_signal(ElementKind kind) {
    switch (kind) {
        case ElementKind::Detector:
        case ElementKind::Bomb:
        case ElementKind::NondemolitionDetector:
        case ElementKind::Switch:
        case ElementKind::RandomSwitch:
            return true;
        default:
            return category_of(kind) == ElementCategory::ClassicalGate;
    }
}

const std::vector<ParamSpec> &param_specs(ElementKind kind) {
    static const std::map<ElementKind, std::vector<ParamSpec>> specs = [] {
        std::map<ElementKind, std::vector<ParamSpec>> m;
        auto wavelength = number("wavelength", 0, 0, 1e9);
        m[ElementKind::SinglePhotonSource] = {
            number("angle", 0, -kAngleLimit, kAngleLimit), number("phase", 0, -kAngleLimit, kAngleLimit), wavelength};
        m[ElementKind::BellPairSource] = {text("state", "phi+", {"phi+", "phi-", "psi+", "psi-"}), wavelength};
        m[ElementKind::GhzSource] = {wavelength};
        m[ElementKind::WSource] = {wavelength};
        m[ElementKind::NeutralDensityFilter] = {number("absorption", 0.5, 0, 1)};
        m[ElementKind::LinearPolarizer] = {number("angle", 0, -kAngleLimit, kAngleLimit)};
        m[ElementKind::NondemolitionDetector] = {number("efficiency", 1, 0, 1)};
        m[ElementKind::BeamSplitter] = {
            number("reflectance", 0.5, 0, 1), number("phase", 0, -kAngleLimit, kAngleLimit)};
        m[ElementKind::WavePlate] = {
            number("angle", 0, -kAngleLimit, kAngleLimit), number("retardance", pi, -kAngleLimit, kAngleLimit)};
        m[ElementKind::FaradayRotator] = {number("angle", pi / 4, -kAngleLimit, kAngleLimit)};
        m[ElementKind::SugarSolution] = {number("angle", pi / 4, -kAngleLimit, kAngleLimit)};
        m[ElementKind::GlassSlab] = {number("phase", pi / 2, -kAngleLimit, kAngleLimit)};
        m[ElementKind::VacuumJar] = {number("phase", pi / 2, -kAngleLimit, kAngleLimit)};
        m[ElementKind::Switch] = {number("value", 0, -1e6, 1e6)};
        m[ElementKind::RandomSwitch] = {number("probability", 0.5, 0, 1)};
        m[ElementKind::Goal] = {text("target", ""), number("threshold", 0.5, 0, 1)};
        m[ElementKind::Comment] = {text("text", "")};
        for (auto k : {ElementKind::Identity, ElementKind::PauliX, ElementKind::PauliY, ElementKind::PauliZ,
                       ElementKind::Hadamard, ElementKind::SqrtNot, ElementKind::Cnot, ElementKind::Cz}) {
            m[k] = {number("active", 1, 0, 1)};
        }
        for (auto k : all_kinds()) {
            m.try_emplace(k);
        }
        return m;
    }();
    return specs.at(kind);
}

void validate_params(ElementKind kind, const ElementParams &params) {
    const auto &specs = param_specs(kind);
    for (const auto &[name, value] : params) {
        const ParamSpec *spec = nullptr;
        for (const auto &s : specs) {
            if (s.name == name) {
                spec = &s;
            }
        }
        if (spec == nullptr) {
            throw IllegalParameter(
                "parameter '" + name + "' is not accepted by " + std::string(kind_name(kind)));
        }
        if (spec->default_value.index() != value.index()) {
            throw IllegalParameter("parameter '" + name + "' has the wrong type");
        }
        if (const auto *d = std::get_if<double>(&value)) {
            if (!std::isfinite(*d) || *d < spec->min || *d > spec->max) {
                throw IllegalParameter(
                    "parameter '" + name + "' = " + std::to_string(*d) + " is outside [" + std::to_string(spec->min) +
                    ", " + std::to_string(spec->max) + "]");
            }
            if (name == "active" && *d != 0 && *d != 1) {
                throw IllegalParameter("parameter 'active' must be 0 or 1");
            }
        } else if (!spec->choices.empty()) {
            const auto &s = std::get<std::string>(value);
            bool ok = false;
            for (const auto &c : spec->choices) {
                ok |= c == s;
            }
            if (!ok) {
                throw IllegalParameter("parameter '" + name + "' = '" + s + "' is not an allowed value");
            }
        }
    }
}

void validate_rotation(ElementKind kind, int rotation_degrees) {
    if (rotation_degrees < 0 || rotation_degrees >= 360 || rotation_degrees % 45 != 0) {
        throw IllegalParameter("rotation must be one of 0, 45, ..., 315 degrees");
    }
    bool cardinal_only = category_of(kind) == ElementCategory::Source || kind == ElementKind::FaradayRotator;
    if (cardinal_only && rotation_degrees % 90 != 0) {
        throw IllegalParameter(std::string(kind_name(kind)) + " rotation must be a multiple of 90 degrees");
    }
}

ElementParams ElementSpec::resolved(bool control_bit) const {
    ElementParams out;
    for (const auto &s : param_specs(kind)) {
        out[s.name] = s.default_value;
    }
    for (const auto &[k, v] : params) {
        out[k] = v;
    }
    if (control_bit) {
        for (const auto &[k, v] : params_on) {
            out[k] = v;
        }
    }
    return out;
}

double number_param(const ElementParams &params, const std::string &name) {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<double>(it->second)) {
        throw IllegalParameter("missing numeric parameter '" + name + "'");
    }
    return std::get<double>(it->second);
}

std::string string_param(const ElementParams &params, const std::string &name) {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<std::string>(it->second)) {
        throw IllegalParameter("missing text parameter '" + name + "'");
    }
    return std::get<std::string>(it->second);
}

std::vector<Dimension> local_dims() {
    return {direction_dimension(), polarization_dimension()};
}

std::array<Complex, 4> polarization_rotation(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return {c, -s, s, c};
}

SparseOperator on_polarization(const std::array<Complex, 4> &m) {
    return local_operator([&](Direction d, uint32_t p) {
        return Column{{d, 0, m[0 * 2 + p]}, {d, 1, m[1 * 2 + p]}};
    });
}

SparseOperator MeasurementOutcome::projection() const {
    auto dims = local_dims();
    SparseOperator total(dims, dims, {});
    for (const auto &ket : basis) {
        total = add(total, SparseOperator::outer(ket, ket));
    }
    return total;
}

SparseOperator beam_splitter_operator(double reflectance, double phase, int rotation) {
    if (reflectance < 0 || reflectance > 1) {
        throw IllegalParameter("reflectance must be in [0, 1]");
    }
    const Complex i(0, 1);
    double t = std::sqrt(1 - reflectance);
    Complex front = i * std::sqrt(reflectance) * std::exp(i * phase);
    Complex back = i * std::sqrt(reflectance) * std::exp(-i * phase);
    return local_operator([&](Direction d, uint32_t p) {
        auto r = reflect(d, rotation);
        if (r.parallel) {
            return Column{{d, p, 1}};
        }
        return Column{{d, p, t}, {r.out, p, r.front ? front : back}};
    });
}

SparseOperator mirror_operator(int rotation) {
    return local_operator([&](Direction d, uint32_t p) {
        auto r = reflect(d, rotation);
        if (r.parallel) {
            return Column{{d, p, 1}};
        }
        return Column{{r.out, p, p == 0 ? -1.0 : 1.0}};
    });
}

SparseOperator polarizing_beam_splitter_operator(int rotation) {
    return local_operator([&](Direction d, uint32_t p) {
        auto r = reflect(d, rotation);
        if (p == 0 || r.parallel) {
            return Column{{d, p, 1}};
        }
        return Column{{r.out, p, 1}};
    });
}

SparseOperator corner_cube_operator() {
    return local_operator([](Direction d, uint32_t p) {
        return Column{{opposite(d), p, 1}};
    });
}

SparseOperator optical_circulator_operator() {
    return local_operator([](Direction d, uint32_t p) {
        return Column{{turned(d, 1), p, 1}};
    });
}

SparseOperator wave_plate_operator(double axis_angle, double retardance) {
    // R(a) diag(1, e^{i delta}) R(-a); light travelling left or down sees the mirrored axis.
    auto plate = [&](double a) {
        double c = std::cos(a);
        double s = std::sin(a);
        Complex e = std::exp(Complex(0, retardance));
        return std::array<Complex, 4>{c * c + s * s * e, c * s * (1.0 - e), c * s * (1.0 - e), s * s + c * c * e};
    };
    auto fwd = plate(axis_angle);
    auto bwd = plate(-axis_angle);
    return local_operator([&](Direction d, uint32_t p) {
        const auto &m = is_forward(d) ? fwd : bwd;
        return Column{{d, 0, m[p]}, {d, 1, m[2 + p]}};
    });
}

SparseOperator faraday_rotator_operator(double angle, int rotation) {
    auto axis = from_degrees(rotation);
    auto with = polarization_rotation(angle);
    auto against = polarization_rotation(-angle);
    return local_operator([&](Direction d, uint32_t p) {
        if (d != axis && d != opposite(axis)) {
            return Column{{d, p, 1}};
        }
        const auto &m = d == axis ? with : against;
        return Column{{d, 0, m[p]}, {d, 1, m[2 + p]}};
    });
}

SparseOperator sugar_solution_operator(double angle) {
    return on_polarization(polarization_rotation(angle));
}

SparseOperator phase_operator(double phase) {
    Complex z = std::exp(Complex(0, phase));
    return on_polarization({z, 0, 0, z});
}

SparseOperator single_qubit_gate(ElementKind kind) {
    return on_polarization(pauli(kind));
}

SparseOperator two_photon_gate(ElementKind kind) {
    if (kind != ElementKind::Cnot && kind != ElementKind::Cz) {
        throw std::invalid_argument("not a two-photon gate");
    }
    std::vector<Dimension> dims = {
        tagged(direction_dimension(), "a"), tagged(polarization_dimension(), "a"),
        tagged(direction_dimension(), "b"), tagged(polarization_dimension(), "b")};
    auto vertical = [](uint32_t d) {
        return d == 1 || d == 3;
    };
    // V(control, target) on the 64-dim space, with control photon first or second.
    auto gate = [&](bool control_is_a) {
        std::vector<OperatorEntry> entries;
        for (uint32_t da = 0; da < 4; da++) {
            for (uint32_t pa = 0; pa < 2; pa++) {
                for (uint32_t db = 0; db < 4; db++) {
                    for (uint32_t pb = 0; pb < 2; pb++) {
                        uint64_t in = ((da * 2 + pa) * 4 + db) * 2 + pb;
                        uint32_t dc = control_is_a ? da : db;
                        uint32_t dt = control_is_a ? db : da;
                        uint32_t pc = control_is_a ? pa : pb;
                        uint32_t pt = control_is_a ? pb : pa;
                        bool active = vertical(dc) && !vertical(dt);
                        uint32_t out_pt = pt;
                        Complex amp = 1;
                        if (active && pc == 1) {
                            if (kind == ElementKind::Cnot) {
                                out_pt = 1 - pt;
                            } else if (pt == 1) {
                                amp = -1;
                            }
                        }
                        uint32_t oa = control_is_a ? pa : out_pt;
                        uint32_t ob = control_is_a ? out_pt : pb;
                        uint64_t out = ((da * 2 + oa) * 4 + db) * 2 + ob;
                        entries.push_back({out, in, amp});
                    }
                }
            }
        }
        return SparseOperator(dims, dims, std::move(entries));
    };
    return compose(gate(true), gate(false));
}

LocalAction action_for(const ElementSpec &spec, bool control_bit) {
    validate_rotation(spec.kind, spec.rotation);
    validate_params(spec.kind, spec.params);
    validate_params(spec.kind, spec.params_on);
    auto params = spec.resolved(control_bit);
    auto num = [&](const char *name) {
        return number_param(params, name);
    };
    const double s2 = 1 / std::numbers::sqrt2;
    const double s3 = 1 / std::sqrt(3.0);
    switch (spec.kind) {
        case ElementKind::SinglePhotonSource: {
            Complex h = std::cos(num("angle"));
            Complex v = std::exp(Complex(0, num("phase"))) * std::sin(num("angle"));
            return SourceAction{
                {from_degrees(spec.rotation)}, polarization_state({{{0}, h}, {{1}, v}}, 1), num("wavelength")};
        }
        case ElementKind::BellPairSource: {
            auto state = string_param(params, "state");
            std::vector<std::pair<std::vector<uint32_t>, Complex>> terms;
            if (state == "phi+") {
                terms = {{{0, 0}, s2}, {{1, 1}, s2}};
            } else if (state == "phi-") {
                terms = {{{0, 0}, s2}, {{1, 1}, -s2}};
            } else if (state == "psi+") {
                terms = {{{0, 1}, s2}, {{1, 0}, s2}};
            } else {
                terms = {{{0, 1}, s2}, {{1, 0}, -s2}};
            }
            auto d = from_degrees(spec.rotation);
            return SourceAction{{d, opposite(d)}, polarization_state(terms, 2), num("wavelength")};
        }
        case ElementKind::GhzSource:
        case ElementKind::WSource: {
            auto d = from_degrees(spec.rotation);
            std::vector<std::pair<std::vector<uint32_t>, Complex>> terms;
            if (spec.kind == ElementKind::GhzSource) {
                terms = {{{0, 0, 0}, s2}, {{1, 1, 1}, s2}};
            } else {
                terms = {{{0, 0, 1}, s3}, {{0, 1, 0}, s3}, {{1, 0, 0}, s3}};
            }
            return SourceAction{{d, turned(d, 1), opposite(d)}, polarization_state(terms, 3), num("wavelength")};
        }
        case ElementKind::Detector:
        case ElementKind::Rock:
            return MeasurementAction{{{1.0, full_local_basis(), true, "absorbed"}}};
        case ElementKind::Bomb:
            return MeasurementAction{{{1.0, full_local_basis(), true, "exploded"}}};
        case ElementKind::NeutralDensityFilter: {
            double a = num("absorption");
            if (a == 0) {
                return MeasurementAction{};
            }
            return MeasurementAction{{{a, full_local_basis(), true, "absorbed"}}};
        }
        case ElementKind::LinearPolarizer: {
            // Absorbs the polarization at `angle`; light travelling left or down sees the mirrored axis.
            double alpha = num("angle");
            std::vector<SparseVector> basis;
            for (uint32_t d = 0; d < 4; d++) {
                auto dir = static_cast<Direction>(d);
                double a = is_forward(dir) ? alpha : -alpha;
                basis.push_back(local_ket(dir, std::cos(a), std::sin(a)));
            }
            return MeasurementAction{{{1.0, std::move(basis), true, "absorbed"}}};
        }
        case ElementKind::NondemolitionDetector: {
            double w = num("efficiency");
            if (w == 0) {
                return MeasurementAction{};
            }
            return MeasurementAction{{{w, full_local_basis(), false, "detected"}}};
        }
        case ElementKind::BeamSplitter:
            return UnitaryAction{beam_splitter_operator(num("reflectance"), num("phase"), spec.rotation)};
        case ElementKind::PolarizingBeamSplitter:
            return UnitaryAction{polarizing_beam_splitter_operator(spec.rotation)};
        case ElementKind::Mirror:
            return UnitaryAction{mirror_operator(spec.rotation)};
        case ElementKind::CornerCube:
            return UnitaryAction{corner_cube_operator()};
        case ElementKind::OpticalCirculator:
            return UnitaryAction{optical_circulator_operator()};
        case ElementKind::WavePlate:
            return UnitaryAction{wave_plate_operator(num("angle"), num("retardance"))};
        case ElementKind::FaradayRotator:
            return UnitaryAction{faraday_rotator_operator(num("angle"), spec.rotation)};
        case ElementKind::SugarSolution:
            return UnitaryAction{sugar_solution_operator(num("angle"))};
        case ElementKind::GlassSlab:
            return UnitaryAction{phase_operator(num("phase"))};
        case ElementKind::VacuumJar:
            return UnitaryAction{phase_operator(-num("phase"))};
        case ElementKind::Identity:
        case ElementKind::PauliX:
        case ElementKind::PauliY:
        case ElementKind::PauliZ:
        case ElementKind::Hadamard:
        case ElementKind::SqrtNot:
            if (num("active") == 0) {
                return UnitaryAction{single_qubit_gate(ElementKind::Identity)};
            }
            return UnitaryAction{single_qubit_gate(spec.kind)};
        case ElementKind::Cnot:
        case ElementKind::Cz:
            if (num("active") == 0) {
                return InertAction{};
            }
            return TwoPhotonAction{two_photon_gate(spec.kind)};
        default:
            return InertAction{};
    }
}

}  // namespace photonlab
