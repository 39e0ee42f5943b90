//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/pmf.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace thinchar
{
//! Allowed slack in the mass balance sum(probs) + deficit = 1.
inline constexpr double kMassTolerance = 1e-9;

//---------------------------------------------------------------------------//
/*!
 * Truncated distribution on {0, ..., n_max}.
 *
 * Mass above n_max is not represented; it is tracked as \c deficit so that
 * every downstream tolerance can carry an explicit truncation term.
 */
class Pmf
{
  public:
    Pmf(std::vector<double> probs, double deficit, std::string label = {})
        : probs_(std::move(probs)), deficit_(deficit), label_(std::move(label))
    {
        detail::require<InvalidDistributionError>(!probs_.empty(),
                                                  "pmf: empty probability vector");
        for (double v : probs_)
        {
            detail::require<InvalidDistributionError>(
                std::isfinite(v) && v >= 0, "pmf: probabilities must be finite and >= 0");
        }
        detail::require<InvalidDistributionError>(std::isfinite(deficit_) && deficit_ >= 0,
                                                  "pmf: deficit must be >= 0");
        detail::require<InvalidDistributionError>(
            std::fabs(this->mass() + deficit_ - 1.0) <= kMassTolerance,
            "pmf: probabilities plus deficit must sum to 1");
    }

    std::span<double const> probs() const noexcept { return probs_; }
    std::size_t n_max() const noexcept { return probs_.size() - 1; }
    std::size_t size() const noexcept { return probs_.size(); }
    double deficit() const noexcept { return deficit_; }
    std::string const& label() const noexcept { return label_; }

    //! Probability of k, zero outside the stored support.
    double operator[](std::size_t k) const noexcept
    {
        return k < probs_.size() ? probs_[k] : 0.0;
    }

    //! Represented mass, sum of probs.
    double mass() const noexcept
    {
        return std::accumulate(probs_.begin(), probs_.end(), 0.0);
    }

    //! Truncated first moment (not renormalized).
    double mean() const noexcept
    {
        double m = 0;
        for (std::size_t k = 0; k < probs_.size(); ++k)
            m += static_cast<double>(k) * probs_[k];
        return m;
    }

  private:
    std::vector<double> probs_;
    double deficit_;
    std::string label_;
};

//! Build a pmf from weights already summing to at most 1; the rest is deficit.
inline Pmf make_pmf(std::vector<double> probs, std::string label = {})
{
    double const total = std::accumulate(probs.begin(), probs.end(), 0.0);
    double deficit = 1.0 - total;
    if (deficit < 0 && deficit >= -kMassTolerance)
        deficit = 0;
    return Pmf(std::move(probs), deficit, std::move(label));
}

//---------------------------------------------------------------------------//
// FAMILIES
//---------------------------------------------------------------------------//
/*!
 * Geometric law with PGF (a-1)/(a-z): pmf(k) = ((a-1)/a) a^-k.
 */
inline Pmf geometric_pmf(double a, std::size_t n_max)
{
    detail::require<DomainError>(std::isfinite(a) && a > 1,
                                 "geometric_pmf: parameter a must exceed 1");
    std::vector<double> probs(n_max + 1);
    double const head = (a - 1) / a;
    for (std::size_t k = 0; k <= n_max; ++k)
        probs[k] = head * std::pow(a, -static_cast<double>(k));
    double const deficit = std::pow(a, -static_cast<double>(n_max + 1));
    return Pmf(std::move(probs), deficit, "geometric:" + std::to_string(a));
}

//! Poisson law, PGF exp(lambda (z - 1)).
inline Pmf poisson_pmf(double lambda, std::size_t n_max)
{
    detail::require<DomainError>(std::isfinite(lambda) && lambda > 0,
                                 "poisson_pmf: lambda must be positive");
    // Anchor at the mode in log space, then recur outward so that
    // successive ratios are exact to one rounding.
    std::vector<double> probs(n_max + 1);
    auto const mode = std::min(static_cast<std::size_t>(lambda), n_max);
    double const md = static_cast<double>(mode);
    probs[mode] = std::exp(-lambda + md * std::log(lambda) - std::lgamma(md + 1));
    for (std::size_t k = mode + 1; k <= n_max; ++k)
        probs[k] = probs[k - 1] * lambda / static_cast<double>(k);
    for (std::size_t k = mode; k > 0; --k)
        probs[k - 1] = probs[k] * static_cast<double>(k) / lambda;
    // P(X > n_max) = P(n_max + 1, lambda)
    double const deficit = gamma_p(static_cast<double>(n_max) + 1.0, lambda);
    return Pmf(std::move(probs), deficit, "poisson:" + std::to_string(lambda));
}

//! Discrete uniform on {0, ..., m}.
inline Pmf uniform_pmf(long m)
{
    detail::require<DomainError>(m >= 0, "uniform_pmf: m must be >= 0");
    auto const n = static_cast<std::size_t>(m) + 1;
    return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)), 0.0,
               "uniform:" + std::to_string(m));
}

//---------------------------------------------------------------------------//
// EVALUATION AND SAMPLING
//---------------------------------------------------------------------------//
//! sum_k probs[k] z^k for |z| <= 1 (Horner).
inline double pgf_eval(Pmf const& pmf, double z)
{
    detail::require<DomainError>(std::fabs(z) <= 1.0,
                                 "pgf_eval: |z| must not exceed 1");
    auto probs = pmf.probs();
    double acc = 0;
    for (auto it = probs.rbegin(); it != probs.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

//! Total variation distance over the union of both supports.
inline double tv_distance(Pmf const& a, Pmf const& b) noexcept
{
    std::size_t const n = std::max(a.size(), b.size());
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k)
        sum += std::fabs(a[k] - b[k]);
    return 0.5 * sum;
}

//---------------------------------------------------------------------------//
/*!
 * Inversion sampler over the represented support.
 *
 * Draws k with probability probs[k] / sum(probs), i.e. the deficit is
 * removed by renormalization rather than lumped onto n_max.
 */
class DiscreteSampler
{
  public:
    explicit DiscreteSampler(Pmf const& pmf) : cdf_(pmf.size())
    {
        auto probs = pmf.probs();
        std::partial_sum(probs.begin(), probs.end(), cdf_.begin());
        detail::require<InvalidDistributionError>(cdf_.back() > 0,
                                                  "sample: all probabilities are zero");
        last_ = cdf_.size() - 1;
        while (probs[last_] == 0)
            --last_;
    }

    std::size_t operator()(RngStream& rng) const noexcept
    {
        double const u = rng.uniform() * cdf_.back();
        auto const it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        auto const k = static_cast<std::size_t>(it - cdf_.begin());
        return std::min(k, last_);
    }

  private:
    std::vector<double> cdf_;
    std::size_t last_{0};
};

//! One draw; construct a DiscreteSampler directly for repeated draws.
inline std::size_t sample(Pmf const& pmf, RngStream& rng)
{
    return DiscreteSampler(pmf)(rng);
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
