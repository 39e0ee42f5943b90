//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/series_solver.hpp
//! Coefficient recursions forced by the factorization of the joint PGFs.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>
#include <gmpxx.h>

#include "detail/mp_real.hpp"
#include "errors.hpp"
#include "power_series.hpp"
#include "thinning.hpp"

namespace thinchar
{
//! A candidate coefficient below this is not a probability.
inline constexpr double kNegativeCoeffTolerance = 1e-9;
//! A partial sum above 1 + this is not a probability generating function.
inline constexpr double kExcessMassTolerance = 1e-9;

//---------------------------------------------------------------------------//
/*!
 * Result of running a recursion to order K.
 *
 * residuals[k-1] is the exact residual of the order-k identity evaluated on
 * the reported (rounded) coefficients, k = 1..K-1.
 */
struct RecursionReport
{
    Theorem theorem{Theorem::t1};
    double p{0};
    double q{0};
    PowerSeries series;
    std::vector<double> residuals;
    double c_constant{0};
    double partial_sum{0};
    double min_coeff{0};
    bool negative_coefficient{false};
    bool excess_mass{false};

    bool is_pgf() const noexcept { return !negative_coefficient && !excess_mass; }
    double max_residual() const noexcept
    {
        double m = 0;
        for (double r : residuals)
            m = std::max(m, std::fabs(r));
        return m;
    }
};

namespace detail
{
//---------------------------------------------------------------------------//
// ORDER-k IDENTITIES
//
// Both identities are written as  M * c_{k+1} + A = 0  where M and A only
// involve c_0..c_k. The multiplier M is proportional to (1-p)^k, so the map
// from c_0..c_k to c_{k+1} amplifies perturbations by ~ (1-p)^-k per order;
// the public entry points therefore evaluate over exact rationals.
//---------------------------------------------------------------------------//

template<class F>
std::vector<F> powers(F const& base, std::size_t n)
{
    std::vector<F> out(n + 1);
    out[0] = F(1);
    for (std::size_t k = 1; k <= n; ++k)
        out[k] = out[k - 1] * base;
    return out;
}

/*!
 * Geometric identity, cleared of denominators:
 *   p P'(su) D(u) + (1-p) c_1 G(u) - C G(u) D(u) = 0,
 * with s = 1-p, G(u) = P(su), D(u) = p P(u) + (1-p) c_0, C = c_1 / c_0.
 */
template<class F>
std::pair<F, F> t1_order_terms(std::span<F const> c,
                               std::size_t k,
                               F const& p,
                               std::span<F const> spow)
{
    F const& c0 = c[0];
    F const& c1 = c[1];
    F const big_c = c1 / c0;
    F const one_minus_p = F(1) - p;
    auto d = [&](std::size_t n) -> F { return n == 0 ? c0 : F(p * c[n]); };

    F a(0);
    for (std::size_t n = 0; n < k; ++n)
    {
        // e_n = (n+1) c_{n+1} s^n
        a += p * F(static_cast<unsigned long>(n + 1)) * c[n + 1] * spow[n] * d(k - n);
    }
    a += one_minus_p * c1 * c[k] * spow[k];
    F conv(0);
    for (std::size_t n = 0; n <= k; ++n)
        conv += c[n] * spow[n] * d(k - n);
    a -= big_c * conv;

    F const m = p * F(static_cast<unsigned long>(k + 1)) * spow[k] * c0;
    return {m, a};
}

/*!
 * Poisson identity, cleared of denominators:
 *   p P'(su) P(tu) + q P'(tu) P(su) - C2 P(su) P(tu) = 0,
 * with s = 1-p, t = 1-q, C2 = (p+q) c_1 / c_0.
 */
template<class F>
std::pair<F, F> t2_order_terms(std::span<F const> c,
                               std::size_t k,
                               F const& p,
                               F const& q,
                               std::span<F const> spow,
                               std::span<F const> tpow)
{
    F const& c0 = c[0];
    F const big_c = (p + q) * c[1] / c0;

    F a(0);
    for (std::size_t n = 0; n < k; ++n)
    {
        F const w = F(static_cast<unsigned long>(n + 1)) * c[n + 1] * c[k - n];
        a += w * (p * spow[n] * tpow[k - n] + q * tpow[n] * spow[k - n]);
    }
    F conv(0);
    for (std::size_t n = 0; n <= k; ++n)
        conv += c[n] * c[k - n] * spow[n] * tpow[k - n];
    a -= big_c * conv;

    F const m = F(static_cast<unsigned long>(k + 1)) * c0 * (p * spow[k] + q * tpow[k]);
    return {m, a};
}

inline void check_recursion_inputs(std::size_t ncoeffs, double c0, double p, double q)
{
    require<PreconditionError>(ncoeffs >= 2, "recursion: need at least c_0 and c_1");
    require<PreconditionError>(std::isfinite(c0) && c0 > 0,
                               "recursion: c_0 = P(0) must be positive");
    require<DomainError>(p > 0 && p < 1, "recursion: p must lie in (0, 1)");
    require<DomainError>(q > 0 && q < 1, "recursion: q must lie in (0, 1)");
}

inline double to_double(mpq_class const& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

//---------------------------------------------------------------------------//
/*!
 * Extend c (holding c_0..c_1) to order K in the field F.
 */
template<class F>
void extend(std::vector<F>& c, Theorem theorem, F const& p, F const& q, std::size_t order)
{
    auto const spow = powers(F(F(1) - p), order);
    auto const tpow = powers(F(F(1) - q), order);
    c.reserve(order + 1);
    for (std::size_t k = c.size() - 1; k < order; ++k)
    {
        std::span<F const> cs(c);
        auto [m, a] = theorem == Theorem::t1 ? t1_order_terms<F>(cs, k, p, spow)
                                             : t2_order_terms<F>(cs, k, p, q, spow, tpow);
        c.push_back(F(-a / m));
    }
}

template<class F>
F next_coeff(std::span<F const> c, Theorem theorem, F const& p, F const& q)
{
    std::size_t const k = c.size() - 1;
    auto const spow = powers(F(F(1) - p), k);
    auto const tpow = powers(F(F(1) - q), k);
    auto [m, a] = theorem == Theorem::t1 ? t1_order_terms<F>(c, k, p, spow)
                                         : t2_order_terms<F>(c, k, p, q, spow, tpow);
    return F(-a / m);
}

inline double next_coeff_exact(std::span<double const> coeffs, Theorem theorem, double p, double q)
{
    check_recursion_inputs(coeffs.size(), coeffs.empty() ? 0.0 : coeffs[0], p, q);
    std::vector<mpq_class> c(coeffs.begin(), coeffs.end());
    return to_double(next_coeff<mpq_class>(c, theorem, mpq_class(p), mpq_class(q)));
}

//! Exact residuals of the order-k identities on the rounded coefficients.
inline std::vector<double> residuals(std::vector<double> const& coeffs,
                                     Theorem theorem,
                                     double p,
                                     double q)
{
    std::vector<mpq_class> c(coeffs.begin(), coeffs.end());
    std::size_t const order = c.size() - 1;
    mpq_class const pp(p), qq(q);
    auto const spow = powers(mpq_class(1 - pp), order);
    auto const tpow = powers(mpq_class(1 - qq), order);
    std::span<mpq_class const> cs(c);
    std::vector<double> out;
    for (std::size_t k = 1; k < order; ++k)
    {
        auto [m, a] = theorem == Theorem::t1 ? t1_order_terms<mpq_class>(cs, k, pp, spow)
                                             : t2_order_terms<mpq_class>(cs, k, pp, qq, spow, tpow);
        out.push_back(to_double(mpq_class(m * c[k + 1] + a)));
    }
    return out;
}

inline RecursionReport solve(Theorem theorem, double c0, double c1, double p, double q,
                             std::size_t order)
{
    check_recursion_inputs(2, c0, p, q);
    require<PreconditionError>(c0 <= 1, "recursion: c_0 must not exceed 1");
    require<PreconditionError>(std::isfinite(c1), "recursion: c_1 must be finite");
    require<PreconditionError>(order >= 2, "recursion: order K must be at least 2");

    std::vector<mpq_class> c{mpq_class(c0), mpq_class(c1)};
    extend<mpq_class>(c, theorem, mpq_class(p), mpq_class(q), order);

    std::vector<double> coeffs;
    coeffs.reserve(c.size());
    mpq_class sum(0);
    for (auto const& v : c)
    {
        coeffs.push_back(to_double(v));
        sum += v;
    }

    RecursionReport report;
    report.theorem = theorem;
    report.p = p;
    report.q = theorem == Theorem::t1 ? 0.0 : q;
    report.c_constant = theorem == Theorem::t1 ? c1 / c0 : (p + q) * c1 / c0;
    report.partial_sum = to_double(sum);
    report.min_coeff = *std::min_element(coeffs.begin(), coeffs.end());
    report.negative_coefficient = report.min_coeff < -kNegativeCoeffTolerance;
    report.excess_mass = report.partial_sum > 1 + kExcessMassTolerance;
    report.residuals = residuals(coeffs, theorem, p, q);
    report.series = PowerSeries(std::move(coeffs));
    return report;
}

/*!
 * Working precision for a recursion to order K.
 *
 * Rounding errors at order k are amplified by about min(1-p, 1-q)^-k, so
 * the bits lost up to order K add up to sum_k k log2(1/s).
 */
inline mpfr_prec_t recursion_precision(Theorem theorem, double p, double q, std::size_t order)
{
    double s = 1 - p;
    if (theorem == Theorem::t2)
        s = std::min(s, 1 - q);
    double const k = static_cast<double>(order);
    return static_cast<mpfr_prec_t>(128 + std::ceil(std::log2(1 / s) * k * (k + 1) / 2));
}

//! Partial sum plus a geometric-ratio estimate of the remainder, in field F.
template<class F>
double normalized_mass(Theorem theorem, double c0, double c1, double p, double q,
                       std::size_t order)
{
    std::vector<F> c{F(c0), F(c1)};
    extend<F>(c, theorem, F(p), F(q), order);
    F sum(0);
    for (auto const& v : c)
        sum += v;
    double total = to_double(sum);
    double const last = to_double(c[order]);
    double const prev = to_double(c[order - 1]);
    if (prev > 0 && last >= 0)
    {
        double const r = last / prev;
        if (r < 1)
            total += last * r / (1 - r);
    }
    return total;
}

//! Same as normalized_mass<F> using MPFR at recursion_precision.
inline double normalized_mass(Theorem theorem, double c0, double c1, double p, double q,
                              std::size_t order)
{
    ScopedPrecision guard(recursion_precision(theorem, p, q, order));
    return normalized_mass<MpReal>(theorem, c0, c1, p, q, order);
}

/*!
 * Find c_1 such that the solution through (c_0, c_1) has unit mass.
 *
 * Brackets from [0, c_0] (doubling the upper end while the mass stays
 * below one) and refines with TOMS 748.
 */
inline double normalize(Theorem theorem, double c0, double p, double q, std::size_t order,
                        double tol)
{
    require<PreconditionError>(std::isfinite(c0) && c0 > 0 && c0 <= 1,
                               "normalize: c_0 must lie in (0, 1]");
    require<DomainError>(p > 0 && p < 1, "normalize: p must lie in (0, 1)");
    require<DomainError>(q > 0 && q < 1, "normalize: q must lie in (0, 1)");
    require<PreconditionError>(order >= 2, "normalize: order K must be at least 2");
    require<DomainError>(tol > 0, "normalize: tolerance must be positive");
    if (c0 == 1)
        return 0.0;

    // log(mass) is close to affine in c_1 for both families, which keeps the
    // root finder to a handful of evaluations.
    auto f = [&](double c1) { return std::log(normalized_mass(theorem, c0, c1, p, q, order)); };
    double lo = 0;
    double hi = c0;
    double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < 64 && fhi < 0; ++i)
    {
        lo = hi;
        flo = fhi;
        hi *= 2;
        fhi = f(hi);
    }
    if (fhi == 0)
        return hi;
    if (!(flo < 0 && fhi > 0))
    {
        throw SolverError("normalize: no sign change of log(mass) on [" + std::to_string(lo)
                          + ", " + std::to_string(hi) + "] (values " + std::to_string(flo)
                          + ", " + std::to_string(fhi) + "); increase K");
    }

    // Near the root d(mass)/d(c_1) <= 1/c_0^2 for both families, so a bracket
    // narrower than c_0^2 tol pins |mass - 1| below tol.
    double const width = c0 * c0 * tol;
    auto done = [width](double x0, double x1) { return std::fabs(x1 - x0) <= width; };
    std::uintmax_t max_iter = 200;
    auto const [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, max_iter);
    double const root = 0.5 * (a + b);
    double const residual = normalized_mass(theorem, c0, root, p, q, order) - 1.0;
    if (!(std::fabs(residual) <= tol))
    {
        throw SolverError("normalize: |mass - 1| = " + std::to_string(residual)
                          + " exceeds tolerance at c_1 = " + std::to_string(root)
                          + " after " + std::to_string(max_iter) + " iterations; increase K");
    }
    return root;
}
}  // namespace detail

//---------------------------------------------------------------------------//
// GEOMETRIC FORMS
//---------------------------------------------------------------------------//
/*!
 * Next coefficient c_{k+1} from c_0..c_k (k >= 1) under the geometric
 * factorization identity. c_1 is free; every later coefficient is fixed.
 */
inline double t1_next_coeff(std::span<double const> coeffs, double p)
{
    return detail::next_coeff_exact(coeffs, Theorem::t1, p, 0.5);
}

//! Run the geometric recursion from (c0, c1) to order K.
inline RecursionReport t1_solve(double c0, double c1, double p, std::size_t order)
{
    detail::require<DomainError>(p > 0 && p < 1, "t1_solve: p must lie in (0, 1)");
    return detail::solve(Theorem::t1, c0, c1, p, 0.5, order);
}

//! The c1 for which the geometric recursion yields unit total mass.
inline double t1_normalize(double c0, double p, std::size_t order, double tol)
{
    return detail::normalize(Theorem::t1, c0, p, 0.5, order, tol);
}

//---------------------------------------------------------------------------//
// POISSON FORMS
//---------------------------------------------------------------------------//
inline double t2_next_coeff(std::span<double const> coeffs, double p, double q)
{
    return detail::next_coeff_exact(coeffs, Theorem::t2, p, q);
}

inline RecursionReport t2_solve(double c0, double c1, double p, double q, std::size_t order)
{
    return detail::solve(Theorem::t2, c0, c1, p, q, order);
}

inline double t2_normalize(double c0, double p, double q, std::size_t order, double tol)
{
    return detail::normalize(Theorem::t2, c0, p, q, order, tol);
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
