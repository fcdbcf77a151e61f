// Copyright 2026 The qftverify Authors
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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "qftv/random.hpp"

namespace qftv {
namespace {

using Block = std::array<std::uint64_t, 4>;

// Known-answer vectors for Philox4x64-10 from the Random123 distribution.
TEST(Philox, Random123KnownAnswers) {
    EXPECT_EQ(philox4x64({0, 0, 0, 0}, {0, 0}),
              (Block{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL, 0x7e68b68aec7ba23bULL}));
    EXPECT_EQ(philox4x64({~0ULL, ~0ULL, ~0ULL, ~0ULL}, {~0ULL, ~0ULL}),
              (Block{0x87b092c3013fe90bULL, 0x438c3c67be8d0224ULL, 0x9cc7d7c69cd777b6ULL, 0xa09caebf594f0ba0ULL}));
    EXPECT_EQ(philox4x64({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
                         {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}),
              (Block{0xa528f45403e61d95ULL, 0x38c72dbd566e9788ULL, 0xa5a1610e72fd18b5ULL, 0x57bd43b5e52b7fe6ULL}));
}

// numpy.random.Philox(counter=0, key=0).random_raw(4) bumps the counter first.
TEST(Philox, MatchesNumpyFirstBlock) {
    EXPECT_EQ(philox4x64({1, 0, 0, 0}, {0, 0}),
              (Block{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL}));
}

TEST(Fnv, KnownValues) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(CounterRng, SameAddressSameSequence) {
    CounterRng a(42, stream_id("x"), 3);
    CounterRng b(42, stream_id("x"), 3);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next_u64(), b.next_u64());
    }
}

TEST(CounterRng, AddressesAreIndependent) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        for (std::uint64_t sub : {0ULL, 1ULL, 2ULL}) {
            CounterRng r(seed, stream_id("s"), sub);
            firsts.insert(r.next_u64());
        }
    }
    CounterRng other(1, stream_id("t"), 0);
    firsts.insert(other.next_u64());
    EXPECT_EQ(firsts.size(), 7u);
}

TEST(CounterRng, UniformMoments) {
    CounterRng r(7, stream_id("moments"));
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = r.next_double();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(s2 / n, 1.0 / 3.0, 0.005);
}

TEST(CounterRng, UniformIndexCoversRange) {
    CounterRng r(9, stream_id("index"));
    std::array<int, 5> counts{};
    for (int i = 0; i < 50000; ++i) {
        std::uint64_t k = r.uniform_index(5);
        ASSERT_LT(k, 5u);
        ++counts[k];
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 10000, 500);
    }
    EXPECT_EQ(r.uniform_index(1), 0u);
}

TEST(CounterRng, NormalMoments) {
    CounterRng r(10, stream_id("normal"));
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = r.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.02);
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

}  // namespace
}  // namespace qftv
