//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/exact_law.hpp
//! Exact joint laws of the thinned forms by direct accumulation.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pmf.hpp"
#include "thinning.hpp"

namespace thinchar
{
//! Default limit on dense joint grid cells (about 128 MiB of doubles).
inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 24;

struct JointMeta
{
    std::string label;
    double p{0};
    double q{0};
    Theorem theorem{Theorem::t1};
};

//---------------------------------------------------------------------------//
/*!
 * Dense joint pmf of two non-negative integer statistics.
 *
 * Row index is the first form, column index the second. Storage is
 * row-major and square with side 2 n_max + 1.
 */
class JointPmf
{
  public:
    JointPmf(std::size_t rows, std::size_t cols, double deficit, JointMeta meta)
        : rows_(rows), cols_(cols), probs_(rows * cols, 0.0), deficit_(deficit),
          meta_(std::move(meta))
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double deficit() const noexcept { return deficit_; }
    JointMeta const& meta() const noexcept { return meta_; }

    double& operator()(std::size_t i, std::size_t j) noexcept
    {
        return probs_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return probs_[i * cols_ + j];
    }

    std::vector<double> const& data() const noexcept { return probs_; }

    double mass() const noexcept
    {
        double s = 0;
        for (double v : probs_)
            s += v;
        return s;
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> probs_;
    double deficit_;
    JointMeta meta_;
};

namespace detail
{
//---------------------------------------------------------------------------//
/*!
 * Binomial(n, r) probabilities for k = 0..n.
 *
 * Multiplicative recurrence in linear space when (1-r)^n is comfortably
 * representable and n <= 500; log-space otherwise.
 */
inline std::vector<double> binomial_row(std::size_t n, double r)
{
    std::vector<double> w(n + 1);
    double const nd = static_cast<double>(n);
    double const start = std::pow(1 - r, nd);
    if (n <= 500 && start > 1e-280)
    {
        w[0] = start;
        double const ratio = r / (1 - r);
        for (std::size_t k = 1; k <= n; ++k)
            w[k] = w[k - 1] * ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
        return w;
    }
    double const lr = std::log(r);
    double const lq = std::log1p(-r);
    double const lgn = std::lgamma(nd + 1);
    for (std::size_t k = 0; k <= n; ++k)
    {
        double const kd = static_cast<double>(k);
        w[k] = std::exp(lgn - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1) + kd * lr
                        + (nd - kd) * lq);
    }
    return w;
}

inline std::size_t checked_side(Pmf const& pmf, std::size_t max_cells)
{
    std::size_t const side = 2 * pmf.n_max() + 1;
    require<CapacityError>(side <= max_cells / side,
                           "exact law: grid of " + std::to_string(side) + "^2 cells exceeds cap of "
                               + std::to_string(max_cells));
    return side;
}

inline double joint_deficit(Pmf const& pmf)
{
    double const m = pmf.mass();
    return std::max(0.0, 1.0 - m * m);
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Joint law of (L1, L2).
 *
 * For every x, i <= x kept and y: with probability p the value y joins the
 * first form, otherwise the second. Cost O(n_max^3).
 */
inline JointPmf exact_joint_t1(Pmf const& pmf,
                               ThinningParams const& params,
                               std::size_t max_cells = kDefaultMaxCells)
{
    std::size_t const side = detail::checked_side(pmf, max_cells);
    double const p = params.p;
    JointPmf joint(side, side, detail::joint_deficit(pmf),
                   {pmf.label(), params.p, params.q, Theorem::t1});
    auto probs = pmf.probs();
    for (std::size_t x = 0; x < probs.size(); ++x)
    {
        if (probs[x] == 0)
            continue;
        auto const w = detail::binomial_row(x, 1 - p);
        for (std::size_t i = 0; i <= x; ++i)
        {
            double const wx = probs[x] * w[i];
            for (std::size_t y = 0; y < probs.size(); ++y)
            {
                double const base = wx * probs[y];
                joint(i + y, x - i) += p * base;
                joint(i, x - i + y) += (1 - p) * base;
            }
        }
    }
    return joint;
}

/*!
 * Joint law of (K1, K2): 2-D convolution of the complementary splits of X
 * (keep 1-p) and of Y (keep 1-q). Cost O(n_max^4).
 */
inline JointPmf exact_joint_t2(Pmf const& pmf,
                               ThinningParams const& params,
                               std::size_t max_cells = kDefaultMaxCells)
{
    std::size_t const side = detail::checked_side(pmf, max_cells);
    JointPmf joint(side, side, detail::joint_deficit(pmf),
                   {pmf.label(), params.p, params.q, Theorem::t2});
    auto probs = pmf.probs();
    std::size_t const n = probs.size();

    std::vector<std::vector<double>> wx(n), wy(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        wx[k] = detail::binomial_row(k, 1 - params.p);
        wy[k] = detail::binomial_row(k, 1 - params.q);
    }
    for (std::size_t x = 0; x < n; ++x)
    {
        if (probs[x] == 0)
            continue;
        for (std::size_t i = 0; i <= x; ++i)
        {
            double const a = probs[x] * wx[x][i];
            for (std::size_t y = 0; y < n; ++y)
            {
                if (probs[y] == 0)
                    continue;
                for (std::size_t j = 0; j <= y; ++j)
                    joint(i + j, (x - i) + (y - j)) += a * probs[y] * wy[y][j];
            }
        }
    }
    return joint;
}

inline JointPmf exact_joint(Theorem theorem,
                            Pmf const& pmf,
                            ThinningParams const& params,
                            std::size_t max_cells = kDefaultMaxCells)
{
    return theorem == Theorem::t1 ? exact_joint_t1(pmf, params, max_cells)
                                  : exact_joint_t2(pmf, params, max_cells);
}

//---------------------------------------------------------------------------//
//! Row and column sums; both inherit the joint deficit.
inline std::pair<Pmf, Pmf> marginals(JointPmf const& j)
{
    std::vector<double> rows(j.rows(), 0.0), cols(j.cols(), 0.0);
    for (std::size_t i = 0; i < j.rows(); ++i)
    {
        for (std::size_t k = 0; k < j.cols(); ++k)
        {
            rows[i] += j(i, k);
            cols[k] += j(i, k);
        }
    }
    return {Pmf(std::move(rows), j.deficit(), j.meta().label + "/first"),
            Pmf(std::move(cols), j.deficit(), j.meta().label + "/second")};
}

/*!
 * Total variation between the joint and the product of its marginals,
 * both renormalized by the represented mass.
 */
inline double tv_independence_gap(JointPmf const& j)
{
    double const total = j.mass();
    if (total <= 0)
        return 0.0;
    std::vector<double> rows(j.rows(), 0.0), cols(j.cols(), 0.0);
    for (std::size_t i = 0; i < j.rows(); ++i)
    {
        for (std::size_t k = 0; k < j.cols(); ++k)
        {
            rows[i] += j(i, k) / total;
            cols[k] += j(i, k) / total;
        }
    }
    double sum = 0;
    for (std::size_t i = 0; i < j.rows(); ++i)
        for (std::size_t k = 0; k < j.cols(); ++k)
            sum += std::fabs(j(i, k) / total - rows[i] * cols[k]);
    return 0.5 * sum;
}

//! sum_ij J(i,j) u^i v^j, nested Horner.
inline double joint_pgf_from_law(JointPmf const& j, double u, double v)
{
    detail::check_unit_square(u, v);
    double outer = 0;
    for (std::size_t ii = j.rows(); ii-- > 0;)
    {
        double inner = 0;
        for (std::size_t kk = j.cols(); kk-- > 0;)
            inner = inner * v + j(ii, kk);
        outer = outer * u + inner;
    }
    return outer;
}

//! Product law a(i) b(j) on a grid sized to both supports.
inline JointPmf product_joint(Pmf const& a, Pmf const& b, JointMeta meta = {})
{
    double const deficit = std::max(0.0, 1.0 - a.mass() * b.mass());
    JointPmf j(a.size(), b.size(), deficit, std::move(meta));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            j(i, k) = a[i] * b[k];
    return j;
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
