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

#include "photonlab/util/rng.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace photonlab;

TEST(rng, splitmix_reference_values) {
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
    EXPECT_NE(splitmix64(1), splitmix64(2));
}

TEST(rng, streams_are_reproducible_and_distinct) {
    Rng a(42, 7);
    Rng b(42, 7);
    Rng c(42, 8);
    Rng d(43, 7);
    int same_c = 0;
    int same_d = 0;
    for (int k = 0; k < 100; k++) {
        auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        same_c += x == c.next_u64();
        same_d += x == d.next_u64();
    }
    EXPECT_EQ(same_c, 0);
    EXPECT_EQ(same_d, 0);
}

TEST(rng, uniform_moments) {
    Rng rng(1, 0);
    const int n = 200000;
    double sum = 0;
    double sum_sq = 0;
    for (int k = 0; k < n; k++) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum_sq += u * u;
    }
    double mean = sum / n;
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum_sq / n - mean * mean, 1.0 / 12, 0.002);
}

TEST(rng, gaussian_moments) {
    Rng rng(2, 0);
    const int n = 200000;
    double sum = 0;
    double sum_sq = 0;
    for (int k = 0; k < n; k++) {
        double g = rng.gaussian();
        ASSERT_TRUE(std::isfinite(g));
        sum += g;
        sum_sq += g * g;
    }
    EXPECT_NEAR(sum / n, 0, 5 / std::sqrt(n));
    EXPECT_NEAR(sum_sq / n, 1, 0.02);
}
