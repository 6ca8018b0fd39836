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

// Prints one PASS or FAIL line per acceptance criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "oracles.h"
#include "photonlab/analysis/entanglement.h"
#include "photonlab/engine/multiverse_tree.h"
#include "photonlab/io/chsh.h"
#include "photonlab/io/detection_log.h"
#include "photonlab/io/fixtures.h"
#include "photonlab/io/json_export.h"

using namespace photonlab;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
        }
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += what + (ok ? "" : " [X]");
    }
    void near(double value, double expected, double tol, const std::string &what) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s=%.12g (want %.12g)", what.c_str(), value, expected);
        check(std::abs(value - expected) <= tol, buf);
    }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::map<std::string, double> firing(const SetupDocument &doc) {
    Engine engine(doc.board);
    return run_tree(engine).firing_probabilities(doc.board);
}

double leaf_probability(const SetupDocument &doc, const char *output, int64_t value) {
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    size_t index = doc.board.index_of(output);
    return tree.probability([&](const SimulationNode &n) {
        return n.classical.values[index] == value;
    });
}

Outcome mach_zehnder() {
    Outcome o;
    auto doc = fixture("mach-zehnder");
    auto start = std::chrono::steady_clock::now();
    auto p = firing(doc);
    double ms = elapsed_ms(start);
    o.near(p["D1"], 1, 1e-9, "D1");
    o.near(p["D2"], 0, 1e-9, "D2");
    doc.board.place(ElementKind::GlassSlab, {4, 6}, 0, {{"phase", pi / 2}}, {}, "slab");
    auto q = firing(doc);
    o.near(q["D1"], 0.5, 1e-9, "slab D1");
    o.near(q["D2"], 0.5, 1e-9, "slab D2");
    o.check(ms < 50, "runtime " + std::to_string(ms) + " ms");
    return o;
}

Outcome three_polarizer() {
    Outcome o;
    auto doc = fixture("three-polarizer");
    auto h_source = doc;
    auto source = h_source.board.find("source")->spec;
    source.params = {{"angle", 0.0}};
    h_source.board.replace_spec("source", source);
    auto crossed = h_source;
    crossed.board.remove("pol_d");
    o.near(firing(crossed)["D"], 0, 1e-9, "H then V");
    o.near(firing(doc)["D"], 0.125, 1e-9, "with 45 deg");
    o.near(firing(h_source)["D"], 0.25, 1e-9, "H input with 45 deg");
    return o;
}

Outcome elitzur_vaidman() {
    Outcome o;
    auto doc = fixture("elitzur-vaidman");
    auto p = firing(doc);
    o.near(p["bomb"], 0.5, 1e-9, "bomb");
    o.near(p["D1"], 0.25, 1e-9, "bright");
    o.near(p["D2"], 0.25, 1e-9, "dark");
    doc.goals.clear();
    doc.board.remove("bomb");
    o.near(firing(doc)["D2"], 0, 1e-9, "dark without bomb");
    return o;
}

Outcome zeno() {
    Outcome o;
    double previous = 0;
    for (int k : {2, 4, 8}) {
        double p = firing(zeno_fixture(k))["D"];
        o.near(p, std::pow(std::cos(pi / (2 * k)), 2 * k), 1e-9, "k=" + std::to_string(k));
        o.check(p > previous, "increasing");
        previous = p;
    }
    return o;
}

Outcome chsh() {
    Outcome o;
    auto doc = fixture("bell-chsh");
    Engine engine(doc.board);
    auto wiring = chsh_wiring(doc.board);
    auto exact = chsh_from_tree(run_tree(engine), doc.board, wiring);
    o.near(exact.s, 2 * std::numbers::sqrt2, 1e-9, "exact S");
    auto sampled = chsh_from_log(sample_log(engine, 2026, 10000), wiring);
    o.check(
        std::abs(sampled.s - 2 * std::numbers::sqrt2) <= 3 * sampled.standard_error,
        "sampled S=" + std::to_string(sampled.s) + " +- " + std::to_string(sampled.standard_error));
    auto local = fixture("chsh-local");
    Engine local_engine(local.board);
    auto classical = chsh_from_tree(run_tree(local_engine), local.board, chsh_wiring(local.board));
    o.check(std::abs(classical.s) <= 2 + 1e-9, "local |S|=" + std::to_string(std::abs(classical.s)) + " <= 2");
    return o;
}

Outcome teleportation() {
    Outcome o;
    std::mt19937_64 rng(20260417);
    std::uniform_real_distribution<double> angle(0, pi), phase(-pi, pi);
    double worst = 1;
    size_t branches = 0;
    bool corrections_used = false;
    for (int trial = 0; trial < 20; trial++) {
        double a = angle(rng);
        double f = phase(rng);
        Complex h = std::cos(a);
        Complex v = std::polar(std::sin(a), f);
        auto doc = teleportation_fixture(a, f);
        Engine engine(doc.board);
        auto tree = run_tree(engine);
        size_t fix_x = doc.board.index_of("fix_x");
        size_t fix_z = doc.board.index_of("fix_z");
        for (auto id : tree.nodes_at_step(kTeleportationCheckStep)) {
            const auto &node = tree.nodes[id];
            corrections_used |=
                control_bit(doc.board, node.classical, fix_x) && control_bit(doc.board, node.classical, fix_z);
            if (node.photon_count() != 1) {
                worst = 0;
                continue;
            }
            const auto &layout = node.state.layout();
            size_t pol = layout.axes_of(layout.particles()[0])[kAxisPolarization];
            Complex overlap = 0;
            for (const auto &e : node.state.entries()) {
                overlap += std::conj(layout.coordinate(e.key, pol) == 0 ? h : v) * e.amplitude;
            }
            worst = std::min(worst, std::norm(overlap));
            branches++;
        }
    }
    o.near(worst, 1, 1e-9, "worst fidelity");
    o.check(branches == 80, std::to_string(branches) + " branches");
    o.check(corrections_used, "both corrections fired on some branch");
    return o;
}

Outcome hong_ou_mandel() {
    Outcome o;
    o.near(leaf_probability(fixture("hong-ou-mandel"), "coincidence", 1), 0, 1e-9, "identical");
    o.near(leaf_probability(fixture("hong-ou-mandel-distinguishable"), "coincidence", 1), 0.5, 1e-9, "distinguishable");
    return o;
}

SparseVector qubits(std::vector<Complex> amplitudes) {
    std::vector<Dimension> dims;
    for (size_t k = 0; (size_t{1} << k) < amplitudes.size(); k++) {
        dims.push_back(Dimension("p" + std::to_string(k) + ".pol", {"H", "V"}));
    }
    return SparseVector::from_dense(dims, amplitudes).normalized();
}

Outcome entropies() {
    Outcome o;
    struct Case {
        const char *name;
        SparseVector state;
        double expected;
    };
    Case cases[] = {
        {"product", qubits({1, Complex(0, 1), 1, Complex(0, 1)}), 0},
        {"Bell", qubits({1, 0, 0, 1}), 1},
        {"GHZ", qubits({1, 0, 0, 0, 0, 0, 0, 1}), 1},
        {"W", qubits({0, 1, 1, 0, 1, 0, 0, 0}), -std::log2(5.0 / 9.0)},
    };
    for (const auto &c : cases) {
        auto s = renyi2_entropies(c.state);
        double err = 0;
        for (size_t k = 0; k < s.size(); k++) {
            err = std::max(err, std::abs(s[k] - c.expected));
            err = std::max(err, std::abs(s[k] - oracle::renyi2(oracle::reduced_density(c.state, k))));
        }
        o.near(err, 0, 1e-9, std::string(c.name) + " error");
    }
    return o;
}

Outcome blink() {
    Outcome o;
    auto singlet = qubits({0, 1, -1, 0});
    Rng rng(2026, 0);
    double worst = 0;
    for (int k = 0; k < 1000; k++) {
        auto sample = blink_sample(singlet, rng);
        worst = std::max(worst, std::abs(particle_overlap(sample.states[0], sample.states[1])));
    }
    o.check(worst < 1e-9, "max overlap " + std::to_string(worst));
    auto single = qubits({Complex(0.3, -0.2), 0.5});
    auto one = blink_sample(single, rng);
    o.check(one.states.size() == 1 && max_abs_difference(one.states[0], single) == 0, "n=1 identity");
    return o;
}

Outcome povm() {
    Outcome o;
    double completeness = 0;
    double root = 0;
    size_t configurations = 0;
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        Engine engine(doc.board);
        auto tree = run_tree(engine);
        std::set<std::vector<int64_t>> seen;
        for (const auto &node : tree.nodes) {
            if (seen.insert(node.classical.values).second) {
                auto check = engine.check_povm(node.classical);
                completeness = std::max(completeness, check.completeness_error);
                root = std::max(root, check.root_error);
                configurations++;
            }
        }
    }
    o.check(completeness < 1e-10, "completeness " + std::to_string(completeness));
    o.check(root < 1e-10, "root " + std::to_string(root));
    o.detail += "; " + std::to_string(configurations) + " configurations";
    return o;
}

std::vector<int> rotations(ElementKind kind) {
    std::vector<int> out;
    for (int r = 0; r < 360; r += 45) {
        try {
            validate_rotation(kind, r);
            out.push_back(r);
        } catch (const IllegalParameter &) {
        }
    }
    return out;
}

Outcome conservation() {
    Outcome o;
    double worst_step = 0;
    size_t steps = 0;
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        Engine engine(doc.board);
        auto tree = run_tree(engine);
        o.check(std::abs(tree.explored_mass - 1) < 1e-9, name);
        for (const auto &node : tree.nodes) {
            if (node.children.empty()) {
                continue;
            }
            double sum = 0;
            for (auto c : node.children) {
                sum += tree.nodes[c].probability;
            }
            worst_step = std::max(worst_step, std::abs(sum / node.probability - 1));
            steps++;
        }
    }
    o.detail.clear();
    o.check(worst_step < 1e-9, std::to_string(steps) + " steps, worst " + std::to_string(worst_step));

    std::vector<ElementParams> sweeps = {{}};
    for (double x : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        sweeps.push_back({{"reflectance", x}, {"phase", 6 * x}});
        sweeps.push_back({{"angle", 4 * x - 2}, {"retardance", 3 * x}});
        sweeps.push_back({{"angle", 5 * x}});
        sweeps.push_back({{"phase", -3 * x}});
    }
    double worst_unitary = 0;
    size_t unitaries = 0;
    for (auto kind : all_kinds()) {
        for (int r : rotations(kind)) {
            for (const auto &p : sweeps) {
                try {
                    validate_params(kind, p);
                } catch (const IllegalParameter &) {
                    continue;
                }
                for (bool control : {false, true}) {
                    auto action = action_for(ElementSpec{kind, r, p, {}}, control);
                    if (const auto *u = std::get_if<UnitaryAction>(&action)) {
                        worst_unitary = std::max(worst_unitary, unitarity_error(u->op));
                        unitaries++;
                    } else if (const auto *t = std::get_if<TwoPhotonAction>(&action)) {
                        worst_unitary = std::max(worst_unitary, unitarity_error(t->op));
                        unitaries++;
                    }
                }
            }
        }
    }
    o.check(worst_unitary < 1e-12, std::to_string(unitaries) + " unitaries, worst " + std::to_string(worst_unitary));
    return o;
}

Outcome performance() {
    Outcome o;
    auto doc = fixture("teleportation");
    auto start = std::chrono::steady_clock::now();
    Engine engine(doc.board);
    auto tree = run_tree(engine);
    double ms = elapsed_ms(start);
    o.check(ms < 100, "teleportation tree " + std::to_string(ms) + " ms");
    size_t peak = 0;
    for (const auto &name : fixture_names()) {
        auto d = fixture(name);
        Engine e(d.board);
        run_tree(e);
        peak = std::max(peak, e.peak_entries());
    }
    o.check(peak < 100000, "peak entries " + std::to_string(peak));
    return o;
}

Outcome determinism() {
    Outcome o;
    bool trees = true;
    for (const auto &name : fixture_names()) {
        auto doc = fixture(name);
        Engine a(doc.board);
        Engine b(doc.board);
        trees &= tree_json(run_tree(a), doc.board).dump() == tree_json(run_tree(b), doc.board).dump();
    }
    o.check(trees, "tree JSON");
    bool logs = true;
    for (const char *name : {"bell-chsh", "bb84", "elitzur-vaidman"}) {
        auto doc = fixture(name);
        Engine a(doc.board);
        Engine b(doc.board);
        logs &= write_csv(sample_log(a, 77, 3000)) == write_csv(sample_log(b, 77, 3000));
    }
    o.check(logs, "CSV logs");
    return o;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"mach-zehnder", mach_zehnder},
        {"three-polarizer", three_polarizer},
        {"elitzur-vaidman", elitzur_vaidman},
        {"quantum-zeno", zeno},
        {"chsh", chsh},
        {"teleportation", teleportation},
        {"hong-ou-mandel", hong_ou_mandel},
        {"entanglement-measures", entropies},
        {"blink-sampler", blink},
        {"povm-algebra", povm},
        {"probability-conservation", conservation},
        {"performance", performance},
        {"determinism", determinism},
    };
    int failures = 0;
    for (const auto &[name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
