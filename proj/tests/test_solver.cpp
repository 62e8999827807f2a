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

FiniteMetric cycle(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) {
        e.emplace_back(i, (i + 1) % n);
    }
    return graph_metric(n, e);
}

Modulus kinked_pwl() { return build_modulus(PiecewiseLinear{{{0, 0}, {1, 2}, {2, 3}}}); }

/// lambda d <= omega(delta) <= D lambda d on every pair, 1e-9 relative.
void expect_sandwich(const FiniteMetric& x, const SolveResult& r, const Modulus& omega)
{
    EXPECT_NO_THROW(validate_metric(r.witness_delta.matrix()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double img = omega(r.witness_delta(i, j)) / r.lambda;
            EXPECT_GE(img, x(i, j) * (1 - 1e-9)) << i << "," << j;
            EXPECT_LE(img, r.D * x(i, j) * (1 + 1e-9)) << i << "," << j;
        }
    }
    EXPECT_LE(identity_transform_distortion(x, r.witness_delta, omega).dist, r.D * (1 + 1e-9));
    EXPECT_GE(r.D, 1.0);
}

}  // namespace

TEST(DistancesSet, Examples)
{
    EXPECT_EQ(distances_set(path_metric(3)).values, (std::vector<double>{0, 1, 2, 3}));
    EXPECT_EQ(distances_set(equilateral_metric(6)).values, (std::vector<double>{0, 1}));
    std::mt19937_64 rng(1);
    for (std::size_t n = 1; n <= 9; ++n) {
        const auto L = distances_set(testkit::random_metric(n, rng));
        EXPECT_LE(L.size(), n * (n - 1) / 2 + 1);
        EXPECT_EQ(L.values.front(), 0.0);
        EXPECT_TRUE(std::is_sorted(L.values.begin(), L.values.end()));
    }
}

TEST(SnowflakeDistortion, PathsFollowPowerLaw)
{
    for (double theta : {0.25, 0.5, 0.75}) {
        for (std::size_t n = 1; n <= 40; ++n) {
            const auto r = snowflake_distortion(path_metric(n), theta);
            EXPECT_TRUE(r.exact);
            EXPECT_NEAR(r.D, std::pow(double(n), 1.0 - theta), 1e-9);
        }
    }
    EXPECT_NEAR(snowflake_distortion(path_metric(4), 0.5).D, 2.0, 1e-12);
}

TEST(SnowflakeDistortion, EquilateralAndCycle)
{
    for (double theta : {0.1, 0.5, 0.9}) {
        EXPECT_EQ(snowflake_distortion(equilateral_metric(6), theta).D, 1.0);
    }
    const auto c8 = cycle(8);
    EXPECT_NEAR(snowflake_distortion(c8, 0.5).D, 2.0, 1e-12);
}

TEST(SnowflakeDistortion, RejectsThetaOutsideOpenInterval)
{
    for (double theta : {0.0, 1.0, -0.5, 1.5}) {
        try {
            snowflake_distortion(path_metric(2), theta);
            FAIL() << theta;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ThetaOutOfRange);
        }
    }
}

TEST(SnowflakeDistortion, WitnessSandwichAndSupremum)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const double theta = std::array{0.25, 0.5, 0.75}[trial % 3];
        const auto x = testkit::random_metric(n, rng);
        const auto r = snowflake_distortion(x, theta);
        expect_sandwich(x, r, Modulus::snowflake(theta));
        EXPECT_LE(r.D, std::pow(double(n - 1), 1.0 - theta) + 1e-9);
    }
}

TEST(SnowflakeDistortion, AgreesWithOracle)
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 12; ++trial) {
        const auto x = testkit::random_metric(4 + trial % 2, rng);
        const double theta = std::array{0.25, 0.5, 0.75}[trial % 3];
        const double exact = snowflake_distortion(x, theta).D;
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const double v = numerical_snowflake_oracle(x, theta, 400, seed);
            EXPECT_GE(v, exact - 1e-9);
            best = std::min(best, v);
        }
        EXPECT_LE(best, 1.01 * exact);
    }
}

TEST(ModulusFeasible, Examples)
{
    const auto p = path_metric(3);
    const auto ok = modulus_feasible(WeightMatrix(p.matrix()), WeightMatrix(p.matrix()));
    ASSERT_TRUE(ok.feasible);
    EXPECT_EQ(ok.witness->matrix(), p.matrix());

    auto lower = p.matrix();
    lower(0, 1) = lower(1, 0) = 1.5;
    const auto crossed = modulus_feasible(WeightMatrix(lower), WeightMatrix(p.matrix()));
    EXPECT_FALSE(crossed.feasible);
    EXPECT_EQ(*crossed.violated, (std::pair<std::size_t, std::size_t>{0, 1}));

    const auto bad = SquareMatrix::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    const auto tri = modulus_feasible(WeightMatrix(bad), WeightMatrix(bad));
    EXPECT_FALSE(tri.feasible);
    EXPECT_EQ(*tri.violated, (std::pair<std::size_t, std::size_t>{0, 2}));

    EXPECT_THROW(modulus_feasible(WeightMatrix(p.matrix()), WeightMatrix(path_metric(2).matrix())), Error);
}

TEST(ModulusFeasible, WitnessLiesInBox)
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const auto u = testkit::random_weights(n, rng, 1.0, 4.0);
        auto l = u;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                l(i, j) = l(j, i) = u(i, j) * std::uniform_real_distribution<>(0.2, 1.0)(rng);
            }
        }
        const auto f = modulus_feasible(WeightMatrix(l), WeightMatrix(u));
        const auto c = metric_closure(WeightMatrix(u));
        bool expect = true;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                expect = expect && c(i, j) >= l(i, j);
            }
        }
        ASSERT_EQ(f.feasible, expect);
        if (f.feasible) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    EXPECT_GE((*f.witness)(i, j), l(i, j));
                    EXPECT_LE((*f.witness)(i, j), u(i, j));
                }
            }
        }
    }
}

TEST(GeneralModulus, PowerLawMatchesClosedForm)
{
    const auto r = general_modulus_distortion(path_metric(4), Modulus::snowflake(0.5));
    EXPECT_FALSE(r.exact);
    EXPECT_NEAR(r.D, 2.0, 2e-6);
    expect_sandwich(path_metric(4), r, Modulus::snowflake(0.5));

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = testkit::random_metric(5, rng);
        const auto omega = build_modulus(PowerLaw{0.3 + trial, 0.3});
        const auto g = general_modulus_distortion(x, omega);
        EXPECT_LE(testkit::rel_diff(g.D, snowflake_distortion(x, 0.3).D), 1e-6);
        expect_sandwich(x, g, omega);
    }
}

TEST(GeneralModulus, TwoPointsAlwaysOne)
{
    const auto x = line_metric({0.0, 2.5});
    for (const auto& omega : {Modulus::snowflake(0.2), kinked_pwl(), build_modulus(PowerLaw{4, 1})}) {
        const auto r = general_modulus_distortion(x, omega);
        EXPECT_EQ(r.D, 1.0);
        expect_sandwich(x, r, omega);
    }
}

TEST(GeneralModulus, KinkedPwlOnPathTwo)
{
    // omega is linear (slope 2) on [0,1], so lambda <= 1/2 keeps every
    // omega^{-1}(lambda d) in the linear piece: distortion 1.
    const auto omega = kinked_pwl();
    const auto x = path_metric(2);
    const auto r = general_modulus_distortion(x, omega);
    EXPECT_NEAR(r.D, 1.0, 1e-9);
    EXPECT_LE(r.lambda * 2.0, 2.0);
    expect_sandwich(x, r, omega);

    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const double v = numerical_modulus_oracle(x, omega, 2000, seed);
        EXPECT_GE(v, r.D - 1e-9);
        best = std::min(best, v);
    }
    EXPECT_LE(best, 1.01 * r.D);
}

TEST(GeneralModulus, RestrictedLambdaRangeAgreesWithPerLambdaMinimum)
{
    // Kept away from the linear piece the problem is nontrivial; the grid and
    // refinement must still land on the best per-lambda value they visit.
    const auto omega = kinked_pwl();
    const auto x = path_metric(4);
    GeneralSolveOptions opts;
    opts.lambda_range_factor = 1.5;
    const auto r = general_modulus_distortion(x, omega, opts);
    EXPECT_GT(r.D, 1.0 + 1e-3);
    expect_sandwich(x, r, omega);
    EXPECT_LE(testkit::rel_diff(r.D, min_distortion_at_lambda(x, omega, r.lambda, 1e-9)), 1e-8);
    const double center = omega(4.0) / 4.0;
    for (int k = -20; k <= 20; ++k) {
        const double lambda = center * std::pow(1.5, k / 20.0);
        EXPECT_GE(min_distortion_at_lambda(x, omega, lambda, 1e-9), r.D * (1 - 1e-8));
    }
}

TEST(GeneralModulus, PowerLawIsLambdaInvariant)
{
    std::mt19937_64 rng(59);
    const auto x = testkit::random_metric(6, rng);
    const auto omega = build_modulus(PowerLaw{2.0, 0.6});
    const double ref = min_distortion_at_lambda(x, omega, 1.0, 1e-9);
    for (int k = -12; k <= 12; ++k) {
        const double D = min_distortion_at_lambda(x, omega, std::pow(10.0, k / 4.0), 1e-9);
        EXPECT_LE(testkit::rel_diff(D, ref), 2e-9) << k;
    }
}

TEST(GeneralModulus, FeasibilityIsMonotoneInD)
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = testkit::random_metric(5, rng);
        const auto omega = trial % 2 ? testkit::random_pwl(rng) : Modulus::snowflake(0.5);
        const double lambda = std::exp(std::uniform_real_distribution<>(-3, 3)(rng));
        const double D = min_distortion_at_lambda(x, omega, lambda, 1e-9);
        ASSERT_TRUE(detail::feasible_at(x, omega, lambda, D));
        for (double f : {1.0 + 1e-6, 1.1, 2.0, 50.0}) {
            EXPECT_TRUE(detail::feasible_at(x, omega, lambda, D * f));
        }
        if (D > 1.0 + 1e-6) {
            EXPECT_FALSE(detail::feasible_at(x, omega, lambda, D * (1 - 1e-6)));
        }
    }
}

TEST(GeneralModulus, RejectsBadOptions)
{
    GeneralSolveOptions opts;
    opts.lambda_grid_size = 1;
    EXPECT_THROW(general_modulus_distortion(path_metric(3), Modulus::snowflake(0.5), opts), Error);
}

TEST(LiftLineSolution, EquilateralIsTrivial)
{
    const auto omega = Modulus::snowflake(0.5);
    const auto x = equilateral_metric(4);
    const auto L = distances_set(x);
    const auto rho = validate_metric(SquareMatrix::from_rows({{0, omega.inverse(1.0)}, {omega.inverse(1.0), 0}}));
    const auto delta = lift_line_solution(x, L, rho, omega, 1.0, 1.0);
    EXPECT_EQ(delta, equilateral_metric(4));
    EXPECT_EQ(identity_transform_distortion(x, delta, omega).dist, 1.0);
}

TEST(LiftLineSolution, PathTwoSqrt)
{
    const auto omega = Modulus::snowflake(0.5);
    const auto x = path_metric(2);
    const auto L = distances_set(x);
    ASSERT_EQ(L.values, (std::vector<double>{0, 1, 2}));
    const auto line = snowflake_distortion(line_metric(L.values), 0.5);
    EXPECT_NEAR(line.D, std::sqrt(2.0), 1e-12);
    const auto delta = lift_line_solution(x, L, line.witness_delta, omega, line.lambda, line.D);
    EXPECT_LE(identity_transform_distortion(x, delta, omega).dist, std::sqrt(2.0) * (1 + 1e-9));
}

TEST(LiftLineSolution, RoundTripOverRandomMetrics)
{
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        const auto x = testkit::random_metric(2 + trial % 5, rng);
        const auto L = distances_set(x);
        const auto line = line_metric(L.values);
        const bool power = trial % 2 == 0;
        const auto omega = power ? Modulus::snowflake(0.5) : testkit::random_pwl(rng);
        const auto sol = power ? snowflake_distortion(line, 0.5) : general_modulus_distortion(line, omega);
        const auto delta = lift_line_solution(x, L, sol.witness_delta, omega, sol.lambda, sol.D);
        EXPECT_LE(identity_transform_distortion(x, delta, omega).dist, sol.D * (1 + 1e-9));
    }
}

TEST(LiftLineSolution, Errors)
{
    const auto omega = Modulus::snowflake(0.5);
    const auto x = path_metric(2);
    const auto L = distances_set(x);
    const auto line = snowflake_distortion(line_metric(L.values), 0.5);
    try {
        lift_line_solution(x, L, line.witness_delta, omega, line.lambda, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SandwichViolated);
        EXPECT_EQ(e.indices().size(), 2u);
    }
    EXPECT_THROW(lift_line_solution(x, L, path_metric(1), omega, 1.0, 2.0), Error);
    const auto other = path_metric(3);
    try {
        lift_line_solution(other, L, line.witness_delta, omega, line.lambda, line.D);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DistanceNotInSet);
    }
}
