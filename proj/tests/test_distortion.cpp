/*
 * Copyright 2026 The metlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace metlab;

namespace {

SquareMatrix snowflaked_line_image(const std::vector<double>& z, double theta)
{
    return SquareMatrix::generate(
        z.size(), [&](std::size_t i, std::size_t j) { return std::pow(std::abs(z[i] - z[j]), 1.0 - theta); });
}

}  // namespace

TEST(MapDistortion, IdentityAndRescaling)
{
    const auto p = path_metric(6);
    EXPECT_EQ(map_distortion(PulledBackMap(p, p.matrix())).dist, 1.0);

    const auto p2 = path_metric(2);
    const auto r = map_distortion(PulledBackMap(p2, p2.matrix().map_off_diagonal([](double v) { return 2 * v; })));
    EXPECT_EQ(r.dist, 1.0);
    EXPECT_EQ(r.lip, 2.0);
    EXPECT_EQ(r.colip, 0.5);
}

TEST(MapDistortion, ReportsArgmaxPairs)
{
    // f(i) = i^2 on P_3: gaps 1, 3, 5.
    const auto p = path_metric(3);
    const auto m = SquareMatrix::generate(4, [](std::size_t i, std::size_t j) {
        return std::abs(double(i * i) - double(j * j));
    });
    const auto r = map_distortion(PulledBackMap(p, m));
    EXPECT_EQ(r.lip, 5.0);
    EXPECT_EQ(r.lip_pair, (std::pair<std::size_t, std::size_t>{2, 3}));
    EXPECT_EQ(r.colip, 1.0);
    EXPECT_EQ(r.colip_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(r.dist, 5.0);
}

TEST(MapDistortion, SnowflakedLineIdentityAttainsBound)
{
    for (double theta : {0.25, 0.5, 0.75}) {
        for (std::size_t n = 1; n <= 40; ++n) {
            std::vector<double> z(n + 1);
            std::iota(z.begin(), z.end(), 0.0);
            const auto r = map_distortion(PulledBackMap(path_metric(n), snowflaked_line_image(z, theta)));
            EXPECT_NEAR(r.dist, std::pow(double(n), theta), 1e-9);
        }
    }
}

TEST(MapDistortion, Errors)
{
    const auto p = path_metric(2);
    SquareMatrix collapsed = p.matrix();
    collapsed(0, 2) = collapsed(2, 0) = 0.0;
    try {
        PulledBackMap(p, collapsed);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonInjectiveMap);
        EXPECT_EQ(e.indices(), (std::vector<std::size_t>{0, 2}));
    }
    EXPECT_THROW(PulledBackMap(p, SquareMatrix(2)), Error);
}

TEST(MapDistortion, ScaleInvariantAndAtLeastOne)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const auto x = testkit::random_metric(n, rng);
        const auto img = testkit::random_weights(n, rng, 0.01, 3.0);
        const auto base = map_distortion(PulledBackMap(x, img));
        EXPECT_GE(base.dist, 1.0);
        EXPECT_LE(testkit::rel_diff(base.dist, testkit::brute_distortion(x.matrix(), img)), 1e-15);
        for (double t : {1e-3, 0.7, 9.0, 1e5}) {
            const auto scaled = map_distortion(PulledBackMap(x, img.map_off_diagonal([t](double v) { return t * v; })));
            EXPECT_LE(testkit::rel_diff(scaled.dist, base.dist), 1e-12);
        }
    }
}

TEST(MapDistortion, MonotoneSnowflakedImagesObeyLowerBound)
{
    // Any monotone f : P_n -> (R, |.|^{1-theta}) has dist >= n^theta.
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> size(1, 50);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = size(rng);
        const double theta = std::array{0.25, 0.5, 0.75}[trial % 3];
        auto z = testkit::random_increasing(n + 1, rng, 1e-3, 10.0);
        if (trial % 2) {
            std::reverse(z.begin(), z.end());
        }
        const auto r = map_distortion(PulledBackMap(path_metric(n), snowflaked_line_image(z, theta)));
        EXPECT_GE(r.dist, std::pow(double(n), theta) - 1e-9);
    }
}

TEST(IdentityTransformDistortion, Examples)
{
    const auto p = path_metric(3);
    EXPECT_EQ(identity_transform_distortion(p, p, build_modulus(PowerLaw{1, 1})).dist, 1.0);

    const auto eq = equilateral_metric(4);
    EXPECT_EQ(identity_transform_distortion(eq, eq, Modulus::snowflake(0.3)).dist, 1.0);

    const auto p4 = path_metric(4);
    const auto solved = snowflake_distortion(p4, 0.5);
    const auto r = identity_transform_distortion(p4, solved.witness_delta, Modulus::snowflake(0.5));
    EXPECT_NEAR(r.dist, 2.0, 1e-12);

    EXPECT_THROW(identity_transform_distortion(p4, eq, Modulus::snowflake(0.5)), Error);
}

TEST(IdentityTransformDistortion, MatchesMapDistortion)
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = testkit::random_metric(5, rng);
        const auto delta = testkit::random_metric(5, rng);
        const auto omega = testkit::random_pwl(rng);
        const auto direct = map_distortion(PulledBackMap(x, apply_transform(omega, delta).matrix()));
        EXPECT_EQ(identity_transform_distortion(x, delta, omega).dist, direct.dist);
    }
}

TEST(SnowflakeOracle, EquilateralNeedsNoSearch)
{
    EXPECT_EQ(numerical_snowflake_oracle(equilateral_metric(5), 0.5, 0, 1), 1.0);
}

TEST(SnowflakeOracle, PathFourHalf)
{
    const double v = numerical_snowflake_oracle(path_metric(4), 0.5, 2000, 42);
    EXPECT_GE(v, 2.0 - 1e-9);
    EXPECT_LE(v, 2.02);
}

TEST(SnowflakeOracle, DeterministicPerSeedAndUpperBound)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = testkit::random_metric(5, rng);
        const double a = numerical_snowflake_oracle(x, 0.4, 500, 9);
        EXPECT_EQ(a, numerical_snowflake_oracle(x, 0.4, 500, 9));
        EXPECT_GE(a, snowflake_distortion(x, 0.4).D - 1e-9);
    }
    EXPECT_THROW(numerical_snowflake_oracle(path_metric(2), 1.0, 10, 1), Error);
}
