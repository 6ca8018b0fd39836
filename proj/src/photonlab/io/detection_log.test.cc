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

#include "photonlab/io/detection_log.h"

#include <gtest/gtest.h>

#include <sstream>

#include "photonlab/io/fixtures.h"

using namespace photonlab;

namespace {

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

}  // namespace

TEST(detection_log, columns_follow_board_order) {
    auto doc = fixture("bb84");
    auto log = empty_log(doc.board);
    EXPECT_EQ(log.input_names, (std::vector<std::string>{"alice_basis", "alice_bit", "bob_basis"}));
    EXPECT_EQ(log.detector_names, (std::vector<std::string>{"bob_0", "bob_1"}));
    EXPECT_EQ(log.output_names, (std::vector<std::string>{"bases_differ", "key_bit"}));
    EXPECT_EQ(log.detector_index("bob_1"), 1u);
    EXPECT_THROW(log.input_index("bob_1"), std::out_of_range);
    EXPECT_EQ(
        lines(write_csv(log)).at(0),
        "run,seed,alice_basis,alice_bit,bob_basis,bob_0,bob_1,bases_differ,key_bit,bob_0.step,bob_1.step");
}

TEST(detection_log, rows_are_consistent_with_their_detections) {
    auto doc = fixture("bb84");
    Engine engine(doc.board);
    auto log = sample_log(engine, 42, 500);
    auto text = lines(write_csv(log));
    ASSERT_EQ(text.size(), 501u);
    for (size_t r = 0; r < log.rows.size(); r++) {
        const auto &row = log.rows[r];
        EXPECT_EQ(row.run, r);
        EXPECT_EQ(row.seed, 42u);
        EXPECT_EQ(row.detectors[0] + row.detectors[1], 1);
        EXPECT_EQ(row.outputs[0], row.inputs[0] ^ row.inputs[2]);
        EXPECT_EQ(row.outputs[1], row.detectors[1]);
        auto cells = split(text[r + 1]);
        ASSERT_EQ(cells.size(), 11u);
        for (int d = 0; d < 2; d++) {
            EXPECT_EQ(cells[9 + d].empty(), row.detectors[d] == 0);
            if (row.detectors[d]) {
                EXPECT_EQ(std::stoi(cells[9 + d]), row.steps[d]);
                EXPECT_GT(row.steps[d], 0);
            }
        }
        if (row.outputs[0] == 0) {
            EXPECT_EQ(row.outputs[1], row.inputs[1]);
        }
    }
}

TEST(detection_log, same_seed_is_byte_identical_and_other_seeds_differ) {
    auto doc = fixture("bell-chsh");
    Engine engine(doc.board);
    auto a = write_csv(sample_log(engine, 7, 2000));
    Engine fresh(doc.board);
    auto b = write_csv(sample_log(fresh, 7, 2000));
    EXPECT_EQ(a, b);
    auto c = write_csv(sample_log(engine, 8, 2000));
    EXPECT_NE(a, c);
}

TEST(detection_log, runs_do_not_depend_on_batch_size) {
    auto doc = fixture("elitzur-vaidman");
    Engine engine(doc.board);
    auto short_log = sample_log(engine, 3, 50);
    auto long_log = sample_log(engine, 3, 400);
    for (size_t r = 0; r < short_log.rows.size(); r++) {
        EXPECT_EQ(short_log.rows[r].detectors, long_log.rows[r].detectors);
        EXPECT_EQ(short_log.rows[r].steps, long_log.rows[r].steps);
    }
}

TEST(detection_log, names_needing_quotes_are_escaped) {
    Board board(Grid{4, 3});
    board.place(ElementKind::SinglePhotonSource, {0, 1}, 0, {}, {}, "src");
    board.place(ElementKind::Detector, {3, 1}, 0, {}, {}, "det,\"a\"");
    Engine engine(board);
    auto csv = write_csv(sample_log(engine, 1, 2));
    EXPECT_EQ(lines(csv).at(0), "run,seed,\"det,\"\"a\"\"\",\"det,\"\"a\"\".step\"");
    EXPECT_EQ(lines(csv).at(1), "0,1,1,3");
}
