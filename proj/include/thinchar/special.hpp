//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/special.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace thinchar
{
namespace detail
{
inline constexpr int kGammaMaxIter = 100000;
inline constexpr double kGammaEps = 1e-16;

// Lower series: P(a,x) = x^a e^-x / Gamma(a+1) * sum x^n / ((a+1)...(a+n))
inline double gamma_p_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kGammaMaxIter; ++n)
    {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kGammaEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a,x).
inline double gamma_q_fraction(double a, double x)
{
    constexpr double tiny = std::numeric_limits<double>::min() / kGammaEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kGammaMaxIter; ++i)
    {
        double const an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double const delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kGammaEps)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Regularized lower incomplete gamma P(a, x).
 *
 * Uses the power series below the knee x < a + 1 and the continued
 * fraction for Q above it, so neither branch is evaluated where it
 * converges slowly.
 */
inline double gamma_p(double a, double x)
{
    detail::require<DomainError>(a > 0, "gamma_p: a must be positive");
    detail::require<DomainError>(x >= 0, "gamma_p: x must be non-negative");
    if (x == 0)
        return 0.0;
    if (x < a + 1.0)
        return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_fraction(a, x);
}

//! Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x)
{
    detail::require<DomainError>(a > 0, "gamma_q: a must be positive");
    detail::require<DomainError>(x >= 0, "gamma_q: x must be non-negative");
    if (x == 0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_fraction(a, x);
}

//! Upper tail of the chi-square distribution with \c dof degrees of freedom.
inline double chi2_upper_tail(double statistic, int dof)
{
    detail::require<DomainError>(dof > 0, "chi2_upper_tail: dof must be positive");
    if (statistic <= 0)
        return 1.0;
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
