//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/detail/mp_real.hpp
//! Minimal value type over mpfr_t with a per-thread working precision.
//---------------------------------------------------------------------------//
#pragma once

#include <utility>

#include <mpfr.h>

namespace thinchar
{
namespace detail
{
//---------------------------------------------------------------------------//
/*!
 * Correctly rounded multiple-precision real.
 *
 * New values take the calling thread's working precision (see
 * ScopedPrecision); every operation rounds to nearest.
 */
class MpReal
{
  public:
    static mpfr_prec_t& working_precision() noexcept
    {
        thread_local mpfr_prec_t bits = 256;
        return bits;
    }

    MpReal() noexcept
    {
        mpfr_init2(v_, working_precision());
        mpfr_set_zero(v_, 1);
    }
    MpReal(double d) noexcept  // NOLINT(google-explicit-constructor)
    {
        mpfr_init2(v_, working_precision());
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    MpReal(int n) noexcept  // NOLINT(google-explicit-constructor)
    {
        mpfr_init2(v_, working_precision());
        mpfr_set_si(v_, n, MPFR_RNDN);
    }
    MpReal(unsigned long n) noexcept  // NOLINT(google-explicit-constructor)
    {
        mpfr_init2(v_, working_precision());
        mpfr_set_ui(v_, n, MPFR_RNDN);
    }
    MpReal(MpReal const& other) noexcept
    {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    MpReal(MpReal&& other) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    MpReal& operator=(MpReal const& other) noexcept
    {
        if (this != &other)
        {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& other) noexcept
    {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

    MpReal& operator+=(MpReal const& b) noexcept
    {
        mpfr_add(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    MpReal& operator-=(MpReal const& b) noexcept
    {
        mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }

    friend MpReal operator+(MpReal const& a, MpReal const& b) noexcept
    {
        MpReal r;
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(MpReal const& a, MpReal const& b) noexcept
    {
        MpReal r;
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator*(MpReal const& a, MpReal const& b) noexcept
    {
        MpReal r;
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator/(MpReal const& a, MpReal const& b) noexcept
    {
        MpReal r;
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(MpReal const& a) noexcept
    {
        MpReal r;
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

inline double to_double(MpReal const& v) noexcept { return v.to_double(); }

//! Sets the calling thread's working precision for the lifetime of the guard.
class ScopedPrecision
{
  public:
    explicit ScopedPrecision(mpfr_prec_t bits) noexcept
        : saved_(std::exchange(MpReal::working_precision(), bits))
    {
    }
    ~ScopedPrecision() { MpReal::working_precision() = saved_; }
    ScopedPrecision(ScopedPrecision const&) = delete;
    ScopedPrecision& operator=(ScopedPrecision const&) = delete;

  private:
    mpfr_prec_t saved_;
};

//---------------------------------------------------------------------------//
}  // namespace detail
}  // namespace thinchar
