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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "photonlab/io/fixtures.h"
#include "photonlab/io/json_export.h"
#include "photonlab/serve/http_server.h"

using namespace photonlab;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct Options {
    std::string setup;
    int max_steps = TreeConfig{}.max_steps;
    double min_probability = TreeConfig{}.min_branch_probability;
    size_t max_nodes = TreeConfig{}.max_nodes;
    std::string format;
    std::string output;
    uint64_t seed = 0;
    uint64_t runs = 1000;
    int step = -1;
    std::string basis = "HV";
    bool json = false;
    std::string host = "127.0.0.1";
    int port = default_serve_port();
    std::string export_dir;

    TreeConfig tree_config() const {
        return {max_steps, min_probability, max_nodes, nullptr};
    }
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SetupDocument load(const std::string &name) {
    namespace fs = std::filesystem;
    if (name.ends_with(".json") || fs::exists(name)) {
        return load_setup_file(name);
    }
    try {
        return fixture(name);
    } catch (const std::out_of_range &) {
        throw InputError("'" + name + "' is neither a setup file nor a fixture name");
    }
}

void emit(const Options &opt, const std::string &text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + opt.output);
    }
    out << text;
}

std::string fixed(double value, int digits = 9) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

void print_budget_warning(const MultiverseTree &tree) {
    if (tree.budget_exhausted) {
        std::cerr << "warning: node budget exhausted; output is partial (truncated mass "
                  << fixed(tree.truncated_mass) << ")\n";
    }
}

std::optional<ChshEstimate> exact_chsh(const Board &board, const MultiverseTree &tree) {
    for (const auto &e : board.elements()) {
        if (e.spec.kind == ElementKind::Correlator) {
            return chsh_from_tree(tree, board, chsh_wiring(board, e.id));
        }
    }
    return std::nullopt;
}

std::string outcome_label(const SimulationNode &leaf) {
    std::string label;
    for (const auto &event : leaf.classical.record) {
        if (!label.empty()) {
            label += ", ";
        }
        label += event.element + ":" + event.label + "@" + std::to_string(event.step);
    }
    return label.empty() ? "(nothing)" : label;
}

int run_command(const Options &opt) {
    auto doc = load(opt.setup);
    Engine engine(doc.board);
    auto tree = run_tree(engine, opt.tree_config());
    auto firing = tree.firing_probabilities(doc.board);
    auto chsh = exact_chsh(doc.board, tree);
    auto goals = evaluate_goals(doc, tree);

    std::ostringstream out;
    if (opt.format == "json") {
        Json j;
        j["setup"] = doc.name;
        j["nodes"] = tree.nodes.size();
        j["explored_mass"] = tree.explored_mass;
        j["truncated_mass"] = tree.truncated_mass;
        j["budget_exhausted"] = tree.budget_exhausted;
        j["detectors"] = Json::object();
        for (const auto &[id, p] : firing) {
            j["detectors"][id] = p;
        }
        j["outcomes"] = Json::array();
        for (auto leaf : tree.leaves()) {
            const auto &node = tree.nodes[leaf];
            j["outcomes"].push_back(
                {{"node", leaf},
                 {"step", node.step},
                 {"probability", node.probability},
                 {"truncated", node.truncated},
                 {"record", events_json(node.classical.record)}});
        }
        j["goals"] = Json::array();
        for (const auto &g : goals) {
            j["goals"].push_back(
                {{"detector", g.goal.detector}, {"threshold", g.goal.threshold}, {"probability", g.probability},
                 {"met", g.met}});
        }
        if (chsh) {
            j["chsh"] = chsh_json(*chsh);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "setup  " << doc.name << "\n";
        out << "nodes  " << tree.nodes.size() << "   explored " << fixed(tree.explored_mass) << "   truncated "
            << fixed(tree.truncated_mass) << (tree.budget_exhausted ? "   BUDGET EXHAUSTED (partial)" : "") << "\n\n";
        out << "detector                      probability\n";
        for (const auto &[id, p] : firing) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%-28s  %s\n", id.c_str(), fixed(p).c_str());
            out << buf;
        }
        std::map<std::string, double> outcomes;
        for (auto leaf : tree.leaves()) {
            const auto &node = tree.nodes[leaf];
            outcomes[outcome_label(node) + (node.truncated ? " [truncated]" : "")] += node.probability;
        }
        std::vector<std::pair<std::string, double>> sorted(outcomes.begin(), outcomes.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
            return a.second > b.second;
        });
        out << "\nprobability   outcome\n";
        for (const auto &[label, p] : sorted) {
            out << fixed(p) << "   " << label << "\n";
        }
        if (!goals.empty()) {
            out << "\ngoal\n";
            for (const auto &g : goals) {
                out << g.goal.detector << "  " << fixed(g.probability) << " >= " << g.goal.threshold << "  "
                    << (g.met ? "met" : "not met") << "\n";
            }
        }
        if (chsh) {
            out << "\nCHSH  S = " << fixed(chsh->s) << "   E = [" << fixed(chsh->correlators[0], 6) << ", "
                << fixed(chsh->correlators[1], 6) << ", " << fixed(chsh->correlators[2], 6) << ", "
                << fixed(chsh->correlators[3], 6) << "]\n";
        }
    }
    emit(opt, out.str());
    print_budget_warning(tree);
    return tree.budget_exhausted ? kExitBudget : 0;
}

int tree_command(const Options &opt) {
    auto doc = load(opt.setup);
    Engine engine(doc.board);
    auto tree = run_tree(engine, opt.tree_config());
    emit(opt, tree_json(tree, doc.board).dump(2) + "\n");
    print_budget_warning(tree);
    return tree.budget_exhausted ? kExitBudget : 0;
}

int sample_command(const Options &opt) {
    auto doc = load(opt.setup);
    Engine engine(doc.board);
    auto log = sample_log(engine, opt.seed, opt.runs, opt.tree_config());
    if (opt.format == "json") {
        Json j;
        j["format"] = "photonlab-detections";
        j["version"] = 1;
        j["seed"] = opt.seed;
        j["inputs"] = log.input_names;
        j["detectors"] = log.detector_names;
        j["outputs"] = log.output_names;
        j["rows"] = Json::array();
        for (const auto &row : log.rows) {
            j["rows"].push_back(
                {{"run", row.run},
                 {"inputs", row.inputs},
                 {"detectors", row.detectors},
                 {"outputs", row.outputs},
                 {"steps", row.steps}});
        }
        for (const auto &e : doc.board.elements()) {
            if (e.spec.kind == ElementKind::Correlator) {
                j["chsh"] = chsh_json(chsh_from_log(log, chsh_wiring(doc.board, e.id)));
                break;
            }
        }
        emit(opt, j.dump(2) + "\n");
    } else {
        emit(opt, write_csv(log));
    }
    return 0;
}

Json analyze_node(const SimulationNode &node, const Board &board, const Options &opt) {
    auto basis = parse_basis(opt.basis);
    auto format = parse_format(opt.format);
    Json j = node_json(node, board);
    j["ket"] = ket_json(node.state, basis, format);
    if (node.photon_count() > 0) {
        j["entanglement"] = report_json(entanglement_report(node.state));
        Rng rng(opt.seed, node.id);
        auto blink = blink_sample(node.state, rng);
        Json states = Json::array();
        for (size_t k = 0; k < blink.states.size(); k++) {
            states.push_back({{"weight", blink.weights[k]}, {"ket", ket_json(blink.states[k], basis, format)}});
        }
        j["blink"] = std::move(states);
    }
    return j;
}

void print_node_table(std::ostream &out, const SimulationNode &node, const Options &opt) {
    auto basis = parse_basis(opt.basis);
    auto format = parse_format(opt.format);
    out << "node " << node.id << "   step " << node.step << "   probability " << fixed(node.probability);
    if (!node.classical.record.empty()) {
        out << "   record " << outcome_label(node);
    }
    out << "\n";
    if (node.photon_count() == 0) {
        out << "  (no photons)\n\n";
        return;
    }
    out << "  basis " << basis_name(basis) << "   format " << format_name(format) << "\n";
    for (const auto &c : ket_components(node.state, basis, format)) {
        char buf[256];
        std::snprintf(
            buf, sizeof(buf), "  %-40s  %-28s  p=%s\n", c.label().c_str(), c.formatted.text.c_str(),
            fixed(c.probability, 6).c_str());
        out << buf;
    }
    auto report = entanglement_report(node.state);
    out << "  renyi-2:";
    for (size_t k = 0; k < report.particles.size(); k++) {
        out << "  " << report.particles[k] << "=" << fixed(report.entropies[k], 6);
    }
    out << "\n";
    if (report.graph) {
        const auto &g = *report.graph;
        out << "  blobs: center (" << fixed(g.equilibrium.x, 4) << ", " << fixed(g.equilibrium.y, 4) << ")";
        for (size_t k = 0; k < g.anchors.size(); k++) {
            out << "  " << report.particles[k] << "@(" << fixed(g.anchors[k].x, 3) << ", " << fixed(g.anchors[k].y, 3)
                << ") w=" << fixed(g.widths[k], 3);
        }
        out << "\n";
    }
    out << "\n";
}

int analyze_command(const Options &opt) {
    auto doc = load(opt.setup);
    Engine engine(doc.board);
    auto tree = run_tree(engine, opt.tree_config());
    std::vector<size_t> selected = opt.step < 0 ? tree.leaves() : tree.nodes_at_step(opt.step);
    if (selected.empty()) {
        throw InputError("no branch reaches step " + std::to_string(opt.step));
    }
    auto chsh = exact_chsh(doc.board, tree);
    std::ostringstream out;
    if (opt.json) {
        Json j;
        j["setup"] = doc.name;
        j["budget_exhausted"] = tree.budget_exhausted;
        j["nodes"] = Json::array();
        for (auto id : selected) {
            j["nodes"].push_back(analyze_node(tree.nodes[id], doc.board, opt));
        }
        if (chsh) {
            j["chsh"] = chsh_json(*chsh);
        }
        out << j.dump(2) << "\n";
    } else {
        for (auto id : selected) {
            print_node_table(out, tree.nodes[id], opt);
        }
        if (chsh) {
            out << "CHSH  S = " << fixed(chsh->s) << "\n";
        }
    }
    emit(opt, out.str());
    print_budget_warning(tree);
    return tree.budget_exhausted ? kExitBudget : 0;
}

int fixtures_command(const Options &opt) {
    if (opt.export_dir.empty()) {
        for (const auto &name : fixture_names()) {
            std::cout << name << "\n";
        }
        return 0;
    }
    std::filesystem::create_directories(opt.export_dir);
    for (const auto &name : fixture_names()) {
        auto path = std::filesystem::path(opt.export_dir) / (name + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw InputError("cannot write " + path.string());
        }
        out << serialize_setup(fixture(name));
    }
    return 0;
}

void add_tree_options(CLI::App *cmd, Options &opt) {
    cmd->add_option("setup", opt.setup, "Fixture name or setup .json file")->required();
    cmd->add_option("--max-steps", opt.max_steps, "Step limit per branch")->check(CLI::PositiveNumber);
    cmd->add_option("--min-probability", opt.min_probability, "Drop branches below this probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--max-nodes", opt.max_nodes, "Node budget for the tree")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", opt.output, "Write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Photonlab: quantum optics on a grid"};
    app.require_subcommand(1);
    Options opt;

    auto *run = app.add_subcommand("run", "Print outcome probabilities from the full multiverse tree");
    add_tree_options(run, opt);
    opt.format = "table";
    run->add_option("--format", opt.format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto *tree = app.add_subcommand("tree", "Emit the multiverse tree as JSON");
    add_tree_options(tree, opt);

    auto *sample = app.add_subcommand("sample", "Sample detection runs");
    add_tree_options(sample, opt);
    sample->add_option("-n,--n", opt.runs, "Number of runs");
    sample->add_option("--seed", opt.seed, "Random seed");
    std::string sample_format = "csv";
    sample->add_option("--format", sample_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto *analyze = app.add_subcommand("analyze", "Kets, entanglement and CHSH for tree nodes");
    add_tree_options(analyze, opt);
    analyze->add_option("--step", opt.step, "Show nodes at this step (default: leaves)");
    analyze->add_option("--basis", opt.basis, "Polarization basis")->check(CLI::IsMember({"HV", "DA", "LR"}));
    std::string complex_format = "cartesian";
    analyze->add_option("--format", complex_format, "Complex number format")
        ->check(CLI::IsMember({"cartesian", "polar", "polar-tau", "color"}));
    analyze->add_option("--seed", opt.seed, "Seed for blink samples");
    analyze->add_flag("--json", opt.json, "Emit JSON instead of a table");

    auto *serve = app.add_subcommand("serve", "Serve the JSON protocol over HTTP");
    serve->add_option("--port", opt.port, "Port (default from PHOTONLAB_PORT)")->check(CLI::Range(1, 65535));
    serve->add_option("--host", opt.host, "Interface to bind");

    auto *fixtures = app.add_subcommand("fixtures", "List built-in fixtures or export them as setup files");
    fixtures->add_option("--export", opt.export_dir, "Directory to write <name>.json files into");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (*run) {
            return run_command(opt);
        }
        if (*tree) {
            return tree_command(opt);
        }
        if (*sample) {
            opt.format = sample_format;
            return sample_command(opt);
        }
        if (*analyze) {
            opt.format = complex_format;
            return analyze_command(opt);
        }
        if (*fixtures) {
            return fixtures_command(opt);
        }
        if (*serve) {
            std::cerr << "serving on http://" << opt.host << ":" << opt.port << "\n";
            if (!run_http_server(opt.host, opt.port)) {
                std::cerr << "error: cannot listen on " << opt.host << ":" << opt.port << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const SetupError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const BoardError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
