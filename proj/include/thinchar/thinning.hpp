//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/thinning.hpp
//! Complementary binomial thinning and the two families of thinned forms.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>

#include "errors.hpp"
#include "pmf.hpp"
#include "rng.hpp"

namespace thinchar
{
//---------------------------------------------------------------------------//
//! Which pair of forms: (L1, L2) characterizes geometric, (K1, K2) Poisson.
enum class Theorem
{
    t1 = 1,
    t2 = 2,
};

inline char const* to_string(Theorem t) noexcept
{
    return t == Theorem::t1 ? "T1" : "T2";
}

//! How kept counts are drawn; both produce Binomial(x, keep_prob).
enum class ThinningMethod
{
    binomial,
    bernoulli_loop,
};

//---------------------------------------------------------------------------//
/*!
 * Thinning probabilities.
 *
 * \c p drives the split of X (kept with probability 1-p) and the selector
 * epsilon(p); \c q drives the split of Y in the second construction only.
 */
struct ThinningParams
{
    double p;
    double q;

    explicit ThinningParams(double p_, double q_ = 0.5) : p(p_), q(q_)
    {
        detail::require<DomainError>(p > 0 && p < 1, "thinning: p must lie in (0, 1)");
        detail::require<DomainError>(q > 0 && q < 1, "thinning: q must lie in (0, 1)");
    }
};

//! One realization of a pair of forms together with the underlying (X, Y).
struct FormSample
{
    std::uint64_t l1{0};
    std::uint64_t l2{0};
    std::uint64_t x{0};
    std::uint64_t y{0};
    Theorem theorem{Theorem::t1};

    bool operator==(FormSample const&) const = default;
};

struct ThinSplit
{
    std::uint64_t kept{0};
    std::uint64_t complement{0};
};

//---------------------------------------------------------------------------//
/*!
 * Binomial(n, prob) by sequential inversion.
 *
 * Works on min(prob, 1-prob) and processes n in blocks of 512 trials so
 * (1-prob)^block never underflows.
 */
inline std::uint64_t binomial_draw(std::uint64_t n, double prob, RngStream& rng)
{
    if (n == 0 || prob <= 0)
        return 0;
    if (prob >= 1)
        return n;
    bool const flip = prob > 0.5;
    double const pp = flip ? 1.0 - prob : prob;
    double const qq = 1.0 - pp;
    double const ratio = pp / qq;

    constexpr std::uint64_t block = 512;
    std::uint64_t total = 0;
    for (std::uint64_t done = 0; done < n; done += block)
    {
        std::uint64_t const m = std::min(block, n - done);
        double f = std::pow(qq, static_cast<double>(m));
        double u = rng.uniform();
        std::uint64_t k = 0;
        while (u >= f && k < m)
        {
            u -= f;
            ++k;
            f *= ratio * static_cast<double>(m - k + 1) / static_cast<double>(k);
        }
        total += k;
    }
    return flip ? n - total : total;
}

/*!
 * Split x into (kept, x - kept) using one Bernoulli(keep_prob) sequence.
 *
 * kept is X~_{keep} and the complement is the sum of the complementary
 * indicators over the same sequence, so the parts add up to x exactly.
 */
inline ThinSplit complementary_thin(std::uint64_t x,
                                    double keep_prob,
                                    RngStream& rng,
                                    ThinningMethod method = ThinningMethod::binomial)
{
    detail::require<DomainError>(keep_prob > 0 && keep_prob < 1,
                                 "complementary_thin: keep_prob must lie in (0, 1)");
    std::uint64_t kept = 0;
    if (method == ThinningMethod::binomial)
    {
        kept = binomial_draw(x, keep_prob, rng);
    }
    else
    {
        for (std::uint64_t j = 0; j < x; ++j)
            kept += rng.bernoulli(keep_prob) ? 1 : 0;
    }
    return {kept, x - kept};
}

//---------------------------------------------------------------------------//
// FORMS FROM GIVEN (X, Y)
//---------------------------------------------------------------------------//
/*!
 * L1 = X~_{1-p} + eps(p) Y, L2 = X~_p + (1 - eps(p)) Y.
 *
 * eps(p) = 1 with probability p. Draw order: eps, then the thinning of X.
 */
inline FormSample thin_pair_t1(std::uint64_t x,
                               std::uint64_t y,
                               ThinningParams const& params,
                               RngStream& rng,
                               ThinningMethod method = ThinningMethod::binomial)
{
    bool const eps = rng.bernoulli(params.p);
    auto const split = complementary_thin(x, 1.0 - params.p, rng, method);
    FormSample s;
    s.x = x;
    s.y = y;
    s.l1 = split.kept + (eps ? y : 0);
    s.l2 = split.complement + (eps ? 0 : y);
    s.theorem = Theorem::t1;
    return s;
}

/*!
 * K1 = X~_{1-p} + Y~_{1-q}, K2 = (X - X~_{1-p}) + (Y - Y~_{1-q}).
 *
 * Each of X and Y is split with its own Bernoulli sequence; the second form
 * collects the complements.
 */
inline FormSample thin_pair_t2(std::uint64_t x,
                               std::uint64_t y,
                               ThinningParams const& params,
                               RngStream& rng,
                               ThinningMethod method = ThinningMethod::binomial)
{
    auto const sx = complementary_thin(x, 1.0 - params.p, rng, method);
    auto const sy = complementary_thin(y, 1.0 - params.q, rng, method);
    FormSample s;
    s.x = x;
    s.y = y;
    s.l1 = sx.kept + sy.kept;
    s.l2 = sx.complement + sy.complement;
    s.theorem = Theorem::t2;
    return s;
}

inline FormSample thin_pair(Theorem theorem,
                            std::uint64_t x,
                            std::uint64_t y,
                            ThinningParams const& params,
                            RngStream& rng,
                            ThinningMethod method = ThinningMethod::binomial)
{
    return theorem == Theorem::t1 ? thin_pair_t1(x, y, params, rng, method)
                                  : thin_pair_t2(x, y, params, rng, method);
}

//---------------------------------------------------------------------------//
// SAMPLERS (draw X, Y i.i.d. from the base law first)
//---------------------------------------------------------------------------//
inline FormSample sample_t1_forms(DiscreteSampler const& base,
                                  ThinningParams const& params,
                                  RngStream& rng,
                                  ThinningMethod method = ThinningMethod::binomial)
{
    auto const x = base(rng);
    auto const y = base(rng);
    return thin_pair_t1(x, y, params, rng, method);
}

inline FormSample sample_t1_forms(Pmf const& pmf,
                                  ThinningParams const& params,
                                  RngStream& rng,
                                  ThinningMethod method = ThinningMethod::binomial)
{
    return sample_t1_forms(DiscreteSampler(pmf), params, rng, method);
}

inline FormSample sample_t2_forms(DiscreteSampler const& base,
                                  ThinningParams const& params,
                                  RngStream& rng,
                                  ThinningMethod method = ThinningMethod::binomial)
{
    auto const x = base(rng);
    auto const y = base(rng);
    return thin_pair_t2(x, y, params, rng, method);
}

inline FormSample sample_t2_forms(Pmf const& pmf,
                                  ThinningParams const& params,
                                  RngStream& rng,
                                  ThinningMethod method = ThinningMethod::binomial)
{
    return sample_t2_forms(DiscreteSampler(pmf), params, rng, method);
}

//---------------------------------------------------------------------------//
// CLOSED-FORM JOINT PGFS
//---------------------------------------------------------------------------//
namespace detail
{
inline void check_unit_square(double u, double v)
{
    require<DomainError>(std::fabs(u) <= 1 && std::fabs(v) <= 1,
                         "joint pgf: |u| and |v| must not exceed 1");
}
}  // namespace detail

//! E u^L1 v^L2 = P((1-p)u + pv) (p P(u) + (1-p) P(v)).
inline double joint_pgf_t1(Pmf const& pmf, ThinningParams const& params, double u, double v)
{
    detail::check_unit_square(u, v);
    double const p = params.p;
    return pgf_eval(pmf, (1 - p) * u + p * v)
           * (p * pgf_eval(pmf, u) + (1 - p) * pgf_eval(pmf, v));
}

//! E u^K1 v^K2 = P((1-p)u + pv) P((1-q)u + qv).
inline double joint_pgf_t2(Pmf const& pmf, ThinningParams const& params, double u, double v)
{
    detail::check_unit_square(u, v);
    double const p = params.p;
    double const q = params.q;
    return pgf_eval(pmf, (1 - p) * u + p * v) * pgf_eval(pmf, (1 - q) * u + q * v);
}

inline double joint_pgf(Theorem theorem, Pmf const& pmf, ThinningParams const& params,
                        double u, double v)
{
    return theorem == Theorem::t1 ? joint_pgf_t1(pmf, params, u, v)
                                  : joint_pgf_t2(pmf, params, u, v);
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
