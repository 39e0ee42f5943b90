//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/power_series.test.cpp
//---------------------------------------------------------------------------//
#include "thinchar/power_series.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace thinchar
{
namespace test
{
//---------------------------------------------------------------------------//

PowerSeries geometric_series(double a, std::size_t order)
{
    std::vector<double> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k)
        c[k] = (a - 1) / a * std::pow(a, -static_cast<double>(k));
    return PowerSeries(c);
}

TEST(PowerSeriesTest, multiply)
{
    PowerSeries const one({1, 0, 0, 0});
    PowerSeries const b({0.1, 0.2, 0.3, 0.4});
    EXPECT_EQ(b.coeffs(), series_mul(one, b).coeffs());

    auto const sq = series_mul(PowerSeries({1, 1, 0}), PowerSeries({1, 1, 0}));
    EXPECT_EQ((std::vector<double>{1, 2, 1}), sq.coeffs());

    // (a-1)/(a-z) * (a-z)/(a-1) = 1
    double const a = 2;
    auto const prod
        = series_mul(geometric_series(a, 10), PowerSeries({a / (a - 1), -1 / (a - 1), 0, 0, 0, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(10u, prod.order());
    EXPECT_DOUBLE_EQ(1.0, prod[0]);
    for (std::size_t k = 1; k <= 10; ++k)
        EXPECT_NEAR(0.0, prod[k], 1e-15);

    // truncation at the smaller order
    EXPECT_EQ(1u, series_mul(PowerSeries({1, 1}), PowerSeries({1, 1, 1})).order());
}

TEST(PowerSeriesTest, affine_compose)
{
    auto const g = geometric_series(2.0, 12);
    EXPECT_EQ(g.coeffs(), series_affine_compose(g, 1.0).coeffs());

    auto const zero = series_affine_compose(g, 0.0);
    EXPECT_DOUBLE_EQ(0.5, zero[0]);
    for (std::size_t k = 1; k <= 12; ++k)
        EXPECT_EQ(0.0, zero[k]);

    auto const half = series_affine_compose(g, 0.5);
    for (std::size_t k = 0; k <= 12; ++k)
        EXPECT_DOUBLE_EQ(std::pow(2.0, -static_cast<double>(2 * k + 1)), half[k]);

    EXPECT_THROW(series_affine_compose(g, 1.5), DomainError);
}

TEST(PowerSeriesTest, evaluate)
{
    auto const g = geometric_series(2.0, 60);
    EXPECT_NEAR(2.0 / 3, g(0.5), 1e-15);
    EXPECT_DOUBLE_EQ(0.5, g(0.0));
    EXPECT_THROW(PowerSeries(std::vector<double>{}), DomainError);
}

//---------------------------------------------------------------------------//
}  // namespace test
}  // namespace thinchar
