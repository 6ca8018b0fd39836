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

#include "photonlab/serve/serve_api.h"

#include <gtest/gtest.h>

#include <thread>

#include "photonlab/io/fixtures.h"

using namespace photonlab;

namespace {

class Client {
   public:
    ApiResponse last;

    Json call(const std::string &method, const std::string &path, const Json &body = nullptr) {
        last = api.handle({method, path, body.is_null() ? "" : body.dump()});
        if (last.content_type != "application/json") {
            return nullptr;
        }
        return Json::parse(last.body);
    }

    std::string open(const std::string &fixture_name) {
        auto j = call("POST", "/api/sessions", {{"fixture", fixture_name}});
        EXPECT_EQ(last.status, 200) << last.body;
        return j["session"];
    }

    ServeApi api;
};

}  // namespace

TEST(serve_api, lists_fixtures) {
    Client c;
    auto j = c.call("GET", "/api/fixtures");
    EXPECT_EQ(c.last.status, 200);
    EXPECT_EQ(j["fixtures"].size(), fixture_names().size());
    EXPECT_EQ(j["fixtures"][1], "mach-zehnder");
}

TEST(serve_api, validate_reports_where) {
    Client c;
    auto ok = c.call("POST", "/api/validate", {{"setup", setup_json(fixture("sagnac"))}});
    EXPECT_EQ(ok["valid"], true);
    EXPECT_TRUE(ok["errors"].empty());

    auto doc = setup_json(fixture("sagnac"));
    doc["elements"][1]["kind"] = "prism";
    auto bad = c.call("POST", "/api/validate", {{"setup", doc}});
    EXPECT_EQ(c.last.status, 200);
    EXPECT_EQ(bad["valid"], false);
    EXPECT_EQ(bad["errors"][0]["where"], "$.elements[1].kind");
}

TEST(serve_api, session_lifecycle) {
    Client c;
    auto empty = c.call("POST", "/api/sessions");
    EXPECT_EQ(c.last.status, 200);
    EXPECT_TRUE(empty["setup"]["elements"].empty());
    auto id = c.open("mach-zehnder");
    EXPECT_NE(id, empty["session"]);
    EXPECT_EQ(c.api.session_count(), 2u);

    auto setup = c.call("GET", "/api/sessions/" + id + "/setup");
    EXPECT_EQ(setup["name"], "mach-zehnder");

    c.call("DELETE", "/api/sessions/" + id);
    EXPECT_EQ(c.last.status, 200);
    EXPECT_EQ(c.api.session_count(), 1u);
    c.call("GET", "/api/sessions/" + id + "/setup");
    EXPECT_EQ(c.last.status, 404);
    c.call("DELETE", "/api/sessions/" + id);
    EXPECT_EQ(c.last.status, 404);
}

TEST(serve_api, expand_then_inspect) {
    Client c;
    auto id = c.open("mach-zehnder");
    auto base = "/api/sessions/" + id;
    c.call("POST", base + "/tree");
    EXPECT_EQ(c.last.status, 409);

    auto summary = c.call("POST", base + "/expand", Json::object());
    EXPECT_EQ(c.last.status, 200);
    EXPECT_NEAR(summary["detectors"]["D1"].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(summary["explored_mass"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(summary["budget_exhausted"], false);

    auto tree = c.call("POST", base + "/tree");
    EXPECT_EQ(tree["nodes"].size(), summary["nodes"].get<size_t>());

    auto node = c.call("POST", base + "/node", {{"node", 3}, {"basis", "DA"}, {"format", "polar"}});
    EXPECT_EQ(c.last.status, 200) << c.last.body;
    EXPECT_EQ(node["id"], 3);
    EXPECT_EQ(node["ket"]["basis"], "DA");
    c.call("POST", base + "/node", {{"node", 100000}});
    EXPECT_EQ(c.last.status, 404);
    c.call("POST", base + "/node", {{"node", 1}, {"basis", "XY"}});
    EXPECT_EQ(c.last.status, 400);
}

TEST(serve_api, entanglement_with_blink) {
    Client c;
    auto id = c.open("bell-chsh");
    auto base = "/api/sessions/" + id;
    auto summary = c.call("POST", base + "/expand", {{"max_steps", 2}});
    auto tree = c.call("POST", base + "/tree");
    size_t target = 0;
    for (const auto &n : tree["nodes"]) {
        if (n["photons"] == 2) {
            target = n["id"];
            break;
        }
    }
    ASSERT_GT(target, 0u);
    auto report = c.call("POST", base + "/entanglement", {{"node", target}, {"seed", 4}});
    EXPECT_EQ(c.last.status, 200) << c.last.body;
    EXPECT_NEAR(report["report"]["entropies"][0].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(report["blink"].size(), 2u);
    auto again = c.call("POST", base + "/entanglement", {{"node", target}, {"seed", 4}});
    EXPECT_EQ(again, report);
    auto without = c.call("POST", base + "/entanglement", {{"node", target}});
    EXPECT_FALSE(without.contains("blink"));
}

TEST(serve_api, edit_operations) {
    Client c;
    auto id = c.open("mach-zehnder");
    auto edit = "/api/sessions/" + id + "/edit";

    auto placed = c.call(
        "POST", edit,
        {{"op", "place"}, {"element", {{"id", "slab"}, {"kind", "glass_slab"}, {"x", 4}, {"y", 6}, {"params", {{"phase", 3.141592653589793}}}}}});
    EXPECT_EQ(c.last.status, 200) << c.last.body;
    EXPECT_EQ(placed["setup"]["elements"].back()["id"], "slab");
    auto summary = c.call("POST", "/api/sessions/" + id + "/expand");
    EXPECT_NEAR(summary["detectors"]["D2"].get<double>(), 1.0, 1e-9);

    c.call("POST", edit, {{"op", "place"}, {"element", {{"id", "again"}, {"kind", "mirror"}, {"x", 4}, {"y", 6}}}});
    EXPECT_EQ(c.last.status, 400);

    c.call("POST", edit, {{"op", "update"}, {"id", "slab"}, {"params", {{"phase", 0.0}}}});
    EXPECT_EQ(c.last.status, 200);
    c.call("POST", "/api/sessions/" + id + "/tree");
    EXPECT_EQ(c.last.status, 409);
    summary = c.call("POST", "/api/sessions/" + id + "/expand");
    EXPECT_NEAR(summary["detectors"]["D1"].get<double>(), 1.0, 1e-9);

    c.call("POST", edit, {{"op", "update"}, {"id", "ghost"}, {"rotation", 90}});
    EXPECT_EQ(c.last.status, 404);
    c.call("POST", edit, {{"op", "move"}, {"id", "slab"}, {"x", 5}, {"y", 6}});
    EXPECT_EQ(c.last.status, 200);
    c.call("POST", edit, {{"op", "move"}, {"id", "slab"}, {"x", 50}, {"y", 6}});
    EXPECT_EQ(c.last.status, 400);

    c.call("POST", edit, {{"op", "place"}, {"element", {{"id", "sw"}, {"kind", "switch"}, {"params", {{"value", 1.0}}}}}});
    EXPECT_EQ(c.last.status, 200) << c.last.body;
    c.call("POST", edit, {{"op", "connect"}, {"from", "sw"}, {"to", "slab"}});
    EXPECT_EQ(c.last.status, 200) << c.last.body;
    c.call("POST", edit, {{"op", "disconnect"}, {"from", "sw"}, {"to", "slab"}});
    EXPECT_EQ(c.last.status, 200);
    c.call("POST", edit, {{"op", "disconnect"}, {"from", "sw"}, {"to", "slab"}});
    EXPECT_EQ(c.last.status, 404);

    auto removed = c.call("POST", edit, {{"op", "remove"}, {"id", "D1"}});
    EXPECT_EQ(c.last.status, 200);
    EXPECT_TRUE(removed["setup"]["goals"].empty());

    c.call("POST", edit, {{"op", "explode"}});
    EXPECT_EQ(c.last.status, 400);
    auto err = c.call("POST", edit, {{"id", "x"}});
    EXPECT_EQ(c.last.status, 400);
    EXPECT_EQ(err["where"], "$.op");
}

TEST(serve_api, load_replaces_the_board) {
    Client c;
    auto id = c.open("mach-zehnder");
    auto loaded = c.call("POST", "/api/sessions/" + id + "/load", {{"fixture", "sagnac"}});
    EXPECT_EQ(loaded["setup"]["name"], "sagnac");
    c.call("POST", "/api/sessions/" + id + "/load", {{"fixture", "nope"}});
    EXPECT_EQ(c.last.status, 404);
    auto bad = c.call("POST", "/api/sessions/" + id + "/load", {{"setup", {{"format", "photonlab-setup"}}}});
    EXPECT_EQ(c.last.status, 400);
    EXPECT_EQ(bad["where"], "$.version");
    EXPECT_EQ(c.call("GET", "/api/sessions/" + id + "/setup")["name"], "sagnac");
}

TEST(serve_api, sampling_and_csv_export) {
    Client c;
    auto id = c.open("bell-chsh");
    auto base = "/api/sessions/" + id;
    c.call("GET", base + "/export.csv");
    EXPECT_EQ(c.last.status, 409);
    auto counts = c.call("POST", base + "/sample", {{"n", 400}, {"seed", 9}});
    EXPECT_EQ(c.last.status, 200);
    EXPECT_EQ(counts["runs"], 400);
    EXPECT_EQ(counts["counts"]["a_plus"].get<int>() + counts["counts"]["a_minus"].get<int>(), 400);

    c.call("GET", base + "/export.csv");
    EXPECT_EQ(c.last.status, 200);
    EXPECT_EQ(c.last.content_type, "text/csv");
    auto first = c.last.body;
    EXPECT_EQ(first.substr(0, 9), "run,seed,");
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 401);

    auto other = c.open("bell-chsh");
    c.call("POST", "/api/sessions/" + other + "/sample", {{"n", 400}, {"seed", 9}});
    c.call("GET", "/api/sessions/" + other + "/export.csv");
    EXPECT_EQ(c.last.body, first);

    c.call("POST", base + "/sample", {{"n", 2000000}});
    EXPECT_EQ(c.last.status, 400);
    c.call("POST", base + "/sample", {{"n", "many"}});
    EXPECT_EQ(c.last.status, 400);
}

TEST(serve_api, operator_views) {
    Client c;
    auto id = c.open("deutsch-jozsa");
    auto base = "/api/sessions/" + id + "/operator";
    auto bs = c.call("POST", base, {{"element", "BS1"}});
    EXPECT_EQ(bs["type"], "unitary");
    EXPECT_FALSE(bs["entries"].empty());
    auto off = c.call("POST", base, {{"element", "oracle0"}, {"control", 0}});
    auto on = c.call("POST", base, {{"element", "oracle0"}, {"control", 1}});
    EXPECT_NE(off["entries"], on["entries"]);
    auto det = c.call("POST", base, {{"element", "D1"}});
    EXPECT_EQ(det["type"], "measurement");
    auto src = c.call("POST", base, {{"element", "source"}, {"basis", "LR"}});
    EXPECT_EQ(src["type"], "source");
    EXPECT_EQ(src["basis"], "LR");
    EXPECT_EQ(c.call("POST", base, {{"element", "f0"}})["type"], "inert");
    c.call("POST", base, {{"element", "nothing"}});
    EXPECT_EQ(c.last.status, 404);
}

TEST(serve_api, malformed_requests) {
    Client c;
    c.last = c.api.handle({"POST", "/api/sessions", "{not json"});
    EXPECT_EQ(c.last.status, 400);
    c.call("GET", "/api/unknown");
    EXPECT_EQ(c.last.status, 404);
    c.call("GET", "/elsewhere");
    EXPECT_EQ(c.last.status, 404);
    auto id = c.open("sagnac");
    c.call("POST", "/api/sessions/" + id + "/dance");
    EXPECT_EQ(c.last.status, 404);
    c.call("POST", "/api/sessions/s999/cancel");
    EXPECT_EQ(c.last.status, 404);
}

TEST(serve_api, budget_and_cancel_leave_consistent_summaries) {
    Client c;
    auto id = c.open("teleportation");
    auto base = "/api/sessions/" + id;
    auto limited = c.call("POST", base + "/expand", {{"max_nodes", 5}});
    EXPECT_EQ(limited["budget_exhausted"], true);
    EXPECT_GT(limited["truncated_mass"].get<double>(), 0);

    std::thread worker([&] {
        ApiResponse r = c.api.handle({"POST", base + "/expand", "{}"});
        auto j = Json::parse(r.body);
        double total = j["explored_mass"].get<double>() + j["truncated_mass"].get<double>();
        EXPECT_NEAR(total, 1.0, 1e-9);
        if (j["cancelled"] == true) {
            EXPECT_GT(j["truncated_mass"].get<double>(), 0);
        }
    });
    auto cancel = c.api.handle({"POST", base + "/cancel", ""});
    EXPECT_EQ(cancel.status, 200);
    worker.join();
}
