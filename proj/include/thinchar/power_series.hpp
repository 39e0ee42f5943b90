//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/power_series.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace thinchar
{
//---------------------------------------------------------------------------//
/*!
 * Truncated Taylor series sum_{k<=K} c_k z^k.
 *
 * For a generating function c_k = P^(k)(0)/k! is the mass at k.
 */
template<class T>
class BasicPowerSeries
{
  public:
    using value_type = T;

    BasicPowerSeries() : coeffs_(1, T(0)) {}
    explicit BasicPowerSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs))
    {
        detail::require<DomainError>(!coeffs_.empty(), "power series: needs at least c_0");
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::vector<T> const& coeffs() const noexcept { return coeffs_; }
    T const& operator[](std::size_t k) const { return coeffs_[k]; }

    //! Horner evaluation of the truncated series.
    T operator()(T const& z) const
    {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

  private:
    std::vector<T> coeffs_;
};

using PowerSeries = BasicPowerSeries<double>;

//! Cauchy product truncated at the smaller order.
template<class T>
BasicPowerSeries<T> series_mul(BasicPowerSeries<T> const& a, BasicPowerSeries<T> const& b)
{
    std::size_t const order = std::min(a.order(), b.order());
    std::vector<T> out(order + 1, T(0));
    for (std::size_t k = 0; k <= order; ++k)
    {
        T acc(0);
        for (std::size_t i = 0; i <= k; ++i)
            acc += a[i] * b[k - i];
        out[k] = acc;
    }
    return BasicPowerSeries<T>(std::move(out));
}

//! Composition with z -> s z, i.e. c_k s^k; |s| <= 1 keeps the unit disc.
template<class T>
BasicPowerSeries<T> series_affine_compose(BasicPowerSeries<T> const& a, double s)
{
    detail::require<DomainError>(std::fabs(s) <= 1,
                                 "series_affine_compose: |s| must not exceed 1");
    std::vector<T> out(a.coeffs());
    T power(1);
    T const scale(s);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        out[k] = out[k] * power;
        power = power * scale;
    }
    return BasicPowerSeries<T>(std::move(out));
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
