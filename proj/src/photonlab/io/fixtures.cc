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

#include "photonlab/io/fixtures.h"

#include <functional>
#include <numbers>

namespace photonlab {

namespace {

using std::numbers::pi;
using K = ElementKind;

constexpr int kSlash = 45;
constexpr int kBackslash = 135;

/// Absorbed-axis parameter of a polarizer transmitting at `axis`.
ElementParams transmitting(double axis) {
    return {{"angle", axis + pi / 2}};
}

SetupDocument make(std::string name, std::string description, Grid grid = {}) {
    SetupDocument doc;
    doc.name = std::move(name);
    doc.description = std::move(description);
    doc.board = Board(grid);
    return doc;
}

// Balanced interferometer shared by several fixtures. The photon enters at (0,6), the lower arm
// runs along y = 6 through x = 3..5 and the upper arm along x = 2 through y = 3..5.
void mach_zehnder_core(Board &b) {
    b.place(K::SinglePhotonSource, {0, 6}, 0, {}, {}, "source");
    b.place(K::BeamSplitter, {2, 6}, kSlash, {}, {}, "BS1");
    b.place(K::Mirror, {6, 6}, kSlash, {}, {}, "M1");
    b.place(K::Mirror, {2, 2}, kSlash, {}, {}, "M2");
    b.place(K::BeamSplitter, {6, 2}, kSlash, {}, {}, "BS2");
}

SetupDocument mach_zehnder() {
    auto doc = make("mach-zehnder", "Balanced Mach-Zehnder interferometer: every photon reaches D1.");
    mach_zehnder_core(doc.board);
    doc.board.place(K::Detector, {7, 2}, 0, {}, {}, "D1");
    doc.board.place(K::Detector, {6, 1}, 0, {}, {}, "D2");
    doc.goals.push_back({"D1", 0.99});
    return doc;
}

SetupDocument elitzur_vaidman() {
    auto doc = make("elitzur-vaidman", "Interaction-free measurement: a bomb blocks the lower arm.");
    mach_zehnder_core(doc.board);
    doc.board.place(K::Bomb, {4, 6}, 0, {}, {}, "bomb");
    doc.board.place(K::Detector, {7, 2}, 0, {}, {}, "D1");
    doc.board.place(K::Detector, {6, 1}, 0, {}, {}, "D2");
    doc.goals.push_back({"D2", 0.25});
    return doc;
}

SetupDocument quantum_eraser() {
    auto doc = make(
        "quantum-eraser",
        "Sugar solution marks the lower arm with vertical polarization; diagonal polarizers at the "
        "outputs erase the mark and restore interference.");
    mach_zehnder_core(doc.board);
    doc.board.place(K::SugarSolution, {4, 6}, 0, {{"angle", pi / 2}}, {}, "marker");
    doc.board.place(K::LinearPolarizer, {7, 2}, 0, transmitting(pi / 4), {}, "eraser1");
    doc.board.place(K::LinearPolarizer, {6, 1}, 0, transmitting(pi / 4), {}, "eraser2");
    doc.board.place(K::Detector, {8, 2}, 0, {}, {}, "D1");
    doc.board.place(K::Detector, {6, 0}, 0, {}, {}, "D2");
    return doc;
}

SetupDocument nondemolition_interference() {
    auto doc = make(
        "nondemolition-interference",
        "Mach-Zehnder with a nondemolition detector of adjustable efficiency in the lower arm.");
    mach_zehnder_core(doc.board);
    doc.board.place(K::NondemolitionDetector, {4, 6}, 0, {{"efficiency", 0.5}}, {}, "ND");
    doc.board.place(K::Detector, {7, 2}, 0, {}, {}, "D1");
    doc.board.place(K::Detector, {6, 1}, 0, {}, {}, "D2");
    return doc;
}

SetupDocument deutsch_jozsa() {
    auto doc = make(
        "deutsch-jozsa",
        "One-bit Deutsch-Jozsa: switches f0 and f1 put a half-wave delay in each arm. Constant functions "
        "light D1, balanced ones D2.");
    auto &b = doc.board;
    mach_zehnder_core(b);
    b.place(K::GlassSlab, {4, 6}, 0, {{"phase", 0.0}}, {{"phase", pi}}, "oracle0");
    b.place(K::GlassSlab, {2, 4}, 0, {{"phase", 0.0}}, {{"phase", pi}}, "oracle1");
    b.place(K::Detector, {7, 2}, 0, {}, {}, "D1");
    b.place(K::Detector, {6, 1}, 0, {}, {}, "D2");
    b.add_node(K::Switch, {{"value", 0.0}}, "f0");
    b.add_node(K::Switch, {{"value", 1.0}}, "f1");
    b.connect("f0", "oracle0");
    b.connect("f1", "oracle1");
    return doc;
}

SetupDocument michelson_morley() {
    auto doc = make("michelson-morley", "Michelson interferometer with equal arms; the output detector D fires.");
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {}, {}, "source");
    b.place(K::BeamSplitter, {3, 5}, kSlash, {}, {}, "BS");
    b.place(K::Mirror, {6, 5}, 90, {}, {}, "arm_x");
    b.place(K::Mirror, {3, 2}, 0, {}, {}, "arm_y");
    b.place(K::Detector, {3, 8}, 0, {}, {}, "D");
    return doc;
}

SetupDocument sagnac() {
    auto doc = make("sagnac", "Sagnac loop: both directions interfere and the photon returns towards the source.");
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {}, {}, "source");
    b.place(K::BeamSplitter, {3, 5}, kSlash, {}, {}, "BS");
    b.place(K::Mirror, {8, 5}, kSlash, {}, {}, "M1");
    b.place(K::Mirror, {8, 1}, kBackslash, {}, {}, "M2");
    b.place(K::Mirror, {3, 1}, kSlash, {}, {}, "M3");
    b.place(K::Detector, {3, 7}, 0, {}, {}, "D_out");
    return doc;
}

SetupDocument three_polarizer() {
    auto doc = make(
        "three-polarizer",
        "Circularly polarized photon through horizontal, diagonal and vertical polarizers; one in eight "
        "reaches D.");
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {{"angle", pi / 4}, {"phase", pi / 2}}, {}, "source");
    b.place(K::LinearPolarizer, {3, 5}, 0, transmitting(0), {}, "pol_h");
    b.place(K::LinearPolarizer, {5, 5}, 0, transmitting(pi / 4), {}, "pol_d");
    b.place(K::LinearPolarizer, {7, 5}, 0, transmitting(pi / 2), {}, "pol_v");
    b.place(K::Detector, {10, 5}, 0, {}, {}, "D");
    return doc;
}

SetupDocument optical_diode() {
    auto doc = make(
        "optical-diode",
        "Polarizer, Faraday rotator and diagonal polarizer: light passes forward, is reflected back and "
        "is stopped by the entry polarizer.");
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {}, {}, "source");
    b.place(K::LinearPolarizer, {2, 5}, 0, transmitting(0), {}, "pol_in");
    b.place(K::FaradayRotator, {4, 5}, 0, {{"angle", pi / 4}}, {}, "faraday");
    b.place(K::LinearPolarizer, {6, 5}, 0, transmitting(pi / 4), {}, "pol_out");
    b.place(K::Mirror, {8, 5}, 90, {}, {}, "mirror");
    return doc;
}

SetupDocument bb84() {
    auto doc = make(
        "bb84",
        "BB84 key distribution: Alice picks a bit and a basis at random, Bob picks a measurement basis.");
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {}, {}, "source");
    b.place(K::SugarSolution, {2, 5}, 0, {{"angle", 0.0}}, {{"angle", pi / 2}}, "alice_flip");
    b.place(K::SugarSolution, {3, 5}, 0, {{"angle", 0.0}}, {{"angle", pi / 4}}, "alice_rotate");
    b.place(K::SugarSolution, {8, 5}, 0, {{"angle", 0.0}}, {{"angle", -pi / 4}}, "bob_rotate");
    b.place(K::PolarizingBeamSplitter, {10, 5}, kSlash, {}, {}, "bob_pbs");
    b.place(K::Detector, {11, 5}, 0, {}, {}, "bob_0");
    b.place(K::Detector, {10, 4}, 0, {}, {}, "bob_1");
    b.add_node(K::RandomSwitch, {}, "alice_basis");
    b.add_node(K::RandomSwitch, {}, "alice_bit");
    b.add_node(K::RandomSwitch, {}, "bob_basis");
    b.add_node(K::Xor, {}, "basis_diff");
    b.add_node(K::OutputVariable, {}, "bases_differ");
    b.add_node(K::OutputVariable, {}, "key_bit");
    b.connect("alice_bit", "alice_flip");
    b.connect("alice_basis", "alice_rotate");
    b.connect("bob_basis", "bob_rotate");
    b.connect("alice_basis", "basis_diff", "in");
    b.connect("bob_basis", "basis_diff", "in");
    b.connect("basis_diff", "bases_differ", "in");
    b.connect("bob_1", "key_bit", "in");
    return doc;
}

SetupDocument state_discrimination() {
    auto doc = make(
        "state-discrimination",
        "Horizontal or diagonal photon chosen at random; a measurement rotated by pi/8 guesses which with "
        "the optimal success probability.");
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {{"angle", 0.0}}, {{"angle", pi / 4}}, "source");
    b.place(K::SugarSolution, {4, 5}, 0, {{"angle", pi / 8}}, {}, "rotate");
    b.place(K::PolarizingBeamSplitter, {7, 5}, kSlash, {}, {}, "pbs");
    b.place(K::Detector, {8, 5}, 0, {}, {}, "guess_h");
    b.place(K::Detector, {7, 4}, 0, {}, {}, "guess_d");
    b.add_node(K::RandomSwitch, {}, "which");
    b.connect("which", "source");
    return doc;
}

// Two-sided polarization analyzer around a central emitter at (6,5). Each side rotates by the
// negated setting angle and splits on a PBS into plus (transmitted) and minus (reflected) detectors.
void bell_analyzers(Board &b, double a0, double a1, double b0, double b1) {
    b.place(K::SugarSolution, {4, 5}, 0, {{"angle", -a0}}, {{"angle", -a1}}, "alice_rotate");
    b.place(K::PolarizingBeamSplitter, {2, 5}, kSlash, {}, {}, "alice_pbs");
    b.place(K::Detector, {1, 5}, 0, {}, {}, "a_plus");
    b.place(K::Detector, {2, 6}, 0, {}, {}, "a_minus");
    b.place(K::SugarSolution, {8, 5}, 0, {{"angle", -b0}}, {{"angle", -b1}}, "bob_rotate");
    b.place(K::PolarizingBeamSplitter, {10, 5}, kSlash, {}, {}, "bob_pbs");
    b.place(K::Detector, {11, 5}, 0, {}, {}, "b_plus");
    b.place(K::Detector, {10, 4}, 0, {}, {}, "b_minus");
    b.add_node(K::RandomSwitch, {}, "alice_setting");
    b.add_node(K::RandomSwitch, {}, "bob_setting");
    b.add_node(K::Correlator, {}, "chsh");
    b.connect("alice_setting", "alice_rotate");
    b.connect("bob_setting", "bob_rotate");
    b.connect("alice_setting", "chsh", "a_setting");
    b.connect("bob_setting", "chsh", "b_setting");
    b.connect("a_plus", "chsh", "a_plus");
    b.connect("a_minus", "chsh", "a_minus");
    b.connect("b_plus", "chsh", "b_plus");
    b.connect("b_minus", "chsh", "b_minus");
}

SetupDocument bell_chsh() {
    auto doc = make(
        "bell-chsh",
        "CHSH test on a phi+ pair with Alice at 0 or pi/4 and Bob at pi/8 or -pi/8; S reaches 2 sqrt 2.");
    doc.board.place(K::BellPairSource, {6, 5}, 0, {{"state", std::string("phi+")}}, {}, "pair");
    bell_analyzers(doc.board, 0, pi / 4, pi / 8, -pi / 8);
    return doc;
}

SetupDocument chsh_local() {
    auto doc = make(
        "chsh-local",
        "CHSH analyzers fed by two independent horizontal photons with settings 0 or pi/2 on each side; "
        "a deterministic local strategy.");
    doc.board.place(K::SinglePhotonSource, {5, 5}, 180, {}, {}, "source_a");
    doc.board.place(K::SinglePhotonSource, {7, 5}, 0, {}, {}, "source_b");
    bell_analyzers(doc.board, 0, pi / 2, 0, pi / 2);
    return doc;
}

SetupDocument ekert() {
    auto doc = make(
        "ekert",
        "Ekert key distribution on a phi+ pair: matching random bases give identical key bits.");
    doc.board.place(K::BellPairSource, {6, 5}, 0, {{"state", std::string("phi+")}}, {}, "pair");
    bell_analyzers(doc.board, 0, pi / 4, 0, pi / 4);
    doc.board.add_node(K::OutputVariable, {}, "alice_key");
    doc.board.add_node(K::OutputVariable, {}, "bob_key");
    doc.board.add_node(K::Xor, {}, "basis_diff");
    doc.board.add_node(K::OutputVariable, {}, "bases_differ");
    doc.board.connect("a_minus", "alice_key", "in");
    doc.board.connect("b_minus", "bob_key", "in");
    doc.board.connect("alice_setting", "basis_diff", "in");
    doc.board.connect("bob_setting", "basis_diff", "in");
    doc.board.connect("basis_diff", "bases_differ", "in");
    return doc;
}

SetupDocument multipartite(ElementKind kind, std::string name, std::string description) {
    auto doc = make(std::move(name), std::move(description));
    auto &b = doc.board;
    b.place(kind, {6, 4}, 0, {}, {}, "source");
    b.place(K::Detector, {9, 4}, 0, {}, {}, "D_right");
    b.place(K::Detector, {6, 1}, 0, {}, {}, "D_up");
    b.place(K::Detector, {3, 4}, 0, {}, {}, "D_left");
    return doc;
}

SetupDocument hong_ou_mandel(bool distinguishable) {
    auto doc = make(
        distinguishable ? "hong-ou-mandel-distinguishable" : "hong-ou-mandel",
        distinguishable ? "Two photons of different wavelength meet on a 50/50 beam splitter; coincidences "
                          "occur half the time."
                        : "Two identical photons meet on a 50/50 beam splitter and always leave together.");
    auto &b = doc.board;
    b.set_symmetrize_identical(true);
    b.place(K::SinglePhotonSource, {2, 5}, 0, {}, {}, "source_a");
    b.place(K::SinglePhotonSource, {5, 8}, 90, {{"wavelength", distinguishable ? 1.0 : 0.0}}, {}, "source_b");
    b.place(K::BeamSplitter, {5, 5}, kSlash, {}, {}, "BS");
    b.place(K::Detector, {7, 5}, 0, {}, {}, "D_right");
    b.place(K::Detector, {5, 3}, 0, {}, {}, "D_up");
    b.add_node(K::And, {}, "both");
    b.add_node(K::OutputVariable, {}, "coincidence");
    b.connect("D_right", "both", "in");
    b.connect("D_up", "both", "in");
    b.connect("both", "coincidence", "in");
    return doc;
}

const std::vector<std::pair<std::string, std::function<SetupDocument()>>> &registry() {
    static const std::vector<std::pair<std::string, std::function<SetupDocument()>>> table = {
        {"michelson-morley", michelson_morley},
        {"mach-zehnder", mach_zehnder},
        {"sagnac", sagnac},
        {"three-polarizer", three_polarizer},
        {"optical-diode", optical_diode},
        {"elitzur-vaidman", elitzur_vaidman},
        {"quantum-eraser", quantum_eraser},
        {"nondemolition-interference", nondemolition_interference},
        {"quantum-zeno", [] { return zeno_fixture(4); }},
        {"bb84", bb84},
        {"state-discrimination", state_discrimination},
        {"deutsch-jozsa", deutsch_jozsa},
        {"ekert", ekert},
        {"bell-chsh", bell_chsh},
        {"chsh-local", chsh_local},
        {"teleportation", [] { return teleportation_fixture(pi / 6, pi / 3); }},
        {"ghz",
         [] {
             return multipartite(K::GhzSource, "ghz", "GHZ source emitting three photons towards three detectors.");
         }},
        {"w-state",
         [] {
             return multipartite(K::WSource, "w-state", "W source emitting three photons towards three detectors.");
         }},
        {"hong-ou-mandel", [] { return hong_ou_mandel(false); }},
        {"hong-ou-mandel-distinguishable", [] { return hong_ou_mandel(true); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string> &fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[name, build] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

SetupDocument fixture(std::string_view name) {
    for (const auto &[n, build] : registry()) {
        if (n == name) {
            return build();
        }
    }
    throw std::out_of_range("unknown fixture '" + std::string(name) + "'");
}

SetupDocument zeno_fixture(int stages) {
    if (stages < 1) {
        throw std::invalid_argument("zeno_fixture needs at least one stage");
    }
    Grid grid{std::max(13, stages + 4), 10};
    auto doc = make(
        "quantum-zeno",
        "Horizontal photon dragged to vertical through " + std::to_string(stages) +
            " polarizers in equal angular steps.",
        grid);
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {0, 5}, 0, {}, {}, "source");
    for (int j = 1; j <= stages; j++) {
        b.place(K::LinearPolarizer, {j, 5}, 0, transmitting(j * pi / (2 * stages)), {}, "pol" + std::to_string(j));
    }
    b.place(K::Detector, {grid.width - 1, 5}, 0, {}, {}, "D");
    return doc;
}

SetupDocument teleportation_fixture(double angle, double phase) {
    auto doc = make(
        "teleportation",
        "Photon p0 is teleported onto p2: CNOT and Hadamard before polarization measurements on p0 and p1; "
        "detector wires drive X and Z corrections on p2.",
        Grid{20, 8});
    auto &b = doc.board;
    b.place(K::SinglePhotonSource, {3, 0}, 270, {{"angle", angle}, {"phase", phase}}, {}, "input");
    b.place(K::BellPairSource, {6, 3}, 180, {{"state", std::string("phi+")}}, {}, "pair");
    b.place(K::Cnot, {3, 3}, 0, {}, {}, "cnot");
    b.place(K::Hadamard, {3, 4}, 0, {}, {}, "hadamard");
    b.place(K::PolarizingBeamSplitter, {3, 5}, kSlash, {}, {}, "pbs_input");
    b.place(K::Detector, {3, 6}, 0, {}, {}, "m_input_h");
    b.place(K::Detector, {2, 5}, 0, {}, {}, "m_input_v");
    b.place(K::PolarizingBeamSplitter, {2, 3}, kSlash, {}, {}, "pbs_pair");
    b.place(K::Detector, {1, 3}, 0, {}, {}, "m_pair_h");
    b.place(K::Detector, {2, 4}, 0, {}, {}, "m_pair_v");
    b.place(K::PauliX, {12, 3}, 0, {{"active", 0.0}}, {{"active", 1.0}}, "fix_x");
    b.place(K::PauliZ, {13, 3}, 0, {{"active", 0.0}}, {{"active", 1.0}}, "fix_z");
    b.place(K::Detector, {19, 3}, 0, {}, {}, "bob");
    b.connect("m_pair_v", "fix_x");
    b.connect("m_input_v", "fix_z");
    return doc;
}

std::string fixture_directory() {
    return std::string(PHOTONLAB_DATA_DIR) + "/fixtures";
}

}  // namespace photonlab
