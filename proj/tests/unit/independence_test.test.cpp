//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/independence_test.test.cpp
//---------------------------------------------------------------------------//
#include "thinchar/independence_test.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "thinchar/exact_law.hpp"

namespace thinchar
{
namespace test
{
//---------------------------------------------------------------------------//

std::vector<FormSample> draw_forms(Theorem theorem, Pmf const& pmf, ThinningParams const& params,
                                   std::size_t n, std::uint64_t seed)
{
    DiscreteSampler const base(pmf);
    RngStream rng(seed);
    std::vector<FormSample> out;
    for (std::size_t k = 0; k < n; ++k)
    {
        out.push_back(theorem == Theorem::t1 ? sample_t1_forms(base, params, rng)
                                             : sample_t2_forms(base, params, rng));
    }
    return out;
}

std::vector<std::uint64_t> draw(Pmf const& pmf, std::size_t n, std::uint64_t seed)
{
    DiscreteSampler const base(pmf);
    RngStream rng(seed);
    std::vector<std::uint64_t> out(n);
    for (auto& x : out)
        x = base(rng);
    return out;
}

double min_expected(ContingencyTable const& t)
{
    auto const rt = t.row_totals();
    auto const ct = t.col_totals();
    double const n = static_cast<double>(t.total());
    return static_cast<double>(*std::min_element(rt.begin(), rt.end()))
           * static_cast<double>(*std::min_element(ct.begin(), ct.end())) / n;
}

TEST(TableTest, unit_bins)
{
    std::vector<FormSample> s(4);
    s[0].l1 = 0, s[0].l2 = 0;
    s[1].l1 = 0, s[1].l2 = 1;
    s[2].l1 = 1, s[2].l2 = 0;
    s[3].l1 = 1, s[3].l2 = 1;
    auto const t = build_table(s, PoolingRule{0.0});
    ASSERT_EQ(2u, t.rows);
    ASSERT_EQ(2u, t.cols);
    for (auto c : t.counts)
        EXPECT_EQ(1u, c);

    EXPECT_THROW(build_table(std::span<FormSample const>(s).first(1)), InsufficientDataError);
    std::vector<FormSample> constant(10);
    EXPECT_THROW(build_table(constant), DegenerateTableError);
}

TEST(TableTest, pooling_reaches_threshold)
{
    auto const s = draw_forms(Theorem::t1, geometric_pmf(2.0, 60), ThinningParams(0.5), 10000, 1);
    auto const t = build_table(s);
    EXPECT_GE(min_expected(t), 5.0);
    EXPECT_EQ(10000u, t.total());
    EXPECT_GE(t.rows, 4u);

    // the pooled row bins cover the bulk of the exact marginal
    auto const [m1, m2] = marginals(exact_joint_t1(geometric_pmf(2.0, 40), ThinningParams(0.5)));
    double const tail = 1 - [&] {
        double acc = 0;
        for (std::size_t k = 0; k < t.row_lower.back(); ++k)
            acc += m1[k];
        return acc;
    }();
    EXPECT_NEAR(tail * 10000, static_cast<double>(t.row_totals().back()), 5 * std::sqrt(tail * 10000) + 1);

    auto const heavy = draw_forms(Theorem::t1, geometric_pmf(1.1, 400), ThinningParams(0.5), 3000, 2);
    auto const th = build_table(heavy);
    EXPECT_GE(min_expected(th), 5.0);
    for (std::size_t k = 1; k < th.row_lower.size(); ++k)
        EXPECT_LT(th.row_lower[k - 1], th.row_lower[k]);
}

TEST(Chi2Test, reference_tables)
{
    auto const flat = chi2_independence(ContingencyTable::from_counts({{25, 25}, {25, 25}}));
    EXPECT_EQ(0.0, flat.statistic);
    EXPECT_EQ(1.0, flat.p_value);

    auto const r = chi2_independence(ContingencyTable::from_counts({{30, 20}, {20, 30}}));
    EXPECT_NEAR(4.0, r.statistic, 1e-12);
    EXPECT_EQ(1, r.dof);
    // scipy.stats.chi2.sf(4, 1)
    EXPECT_NEAR(0.04550026389635857, r.p_value, 1e-10);
    EXPECT_EQ(100u, r.n_pairs);

    auto const rank_one = chi2_independence(ContingencyTable::from_counts({{2, 4, 6}, {4, 8, 12}}));
    EXPECT_NEAR(0.0, rank_one.statistic, 1e-12);
    EXPECT_EQ(2, rank_one.dof);

    EXPECT_THROW(chi2_independence(ContingencyTable::from_counts({{1, 2}})), DegenerateTableError);
    EXPECT_THROW(chi2_independence(ContingencyTable::from_counts({{1, 0}, {2, 0}})),
                 DegenerateTableError);
}

TEST(Chi2Test, permutation_invariance)
{
    std::vector<std::vector<std::uint64_t>> const m{{13, 7, 22, 4}, {9, 31, 5, 17}, {3, 8, 12, 40}};
    double const ref = chi2_independence(ContingencyTable::from_counts(m)).statistic;

    auto rows = m;
    std::reverse(rows.begin(), rows.end());
    std::swap(rows[0], rows[1]);
    EXPECT_EQ(ref, chi2_independence(ContingencyTable::from_counts(rows)).statistic);

    std::size_t const order[] = {2, 0, 3, 1};
    auto cols = m;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j)
            cols[i][j] = m[i][order[j]];
    EXPECT_EQ(ref, chi2_independence(ContingencyTable::from_counts(cols)).statistic);
}

TEST(PermutationTest, constant_and_dependent)
{
    RngStream rng(3);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> constant, diagonal;
    for (std::uint64_t i = 1; i <= 50; ++i)
    {
        constant.emplace_back(i % 7, 4);
        diagonal.emplace_back(i, i);
    }
    EXPECT_EQ(1.0, permutation_independence(constant, 199, rng).p_value);

    auto const r = permutation_independence(diagonal, 999, rng);
    EXPECT_LE(r.p_value, 0.01);
    EXPECT_EQ(TestMethod::permutation, r.method);
    EXPECT_EQ(3u, r.seed);

    EXPECT_THROW(permutation_independence(diagonal, 50, rng), DomainError);
}

TEST(PermutationTest, doubling_b)
{
    // weakly dependent pairs so p sits mid-range
    RngStream data(17);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (int i = 0; i < 200; ++i)
    {
        auto const a = data.below(4);
        auto const b = data.bernoulli(0.15) ? a : data.below(4);
        pairs.emplace_back(a, b);
    }
    RngStream r1(1), r2(2);
    double const p1 = permutation_independence(pairs, 999, r1).p_value;
    double const p2 = permutation_independence(pairs, 1998, r2).p_value;
    EXPECT_NEAR(p1, p2, 2 / std::sqrt(999.0));
}

TEST(PermutationTest, null_uniformity)
{
    auto const pmf = poisson_pmf(2.0, 40);
    std::vector<double> pvalues;
    for (std::uint64_t run = 0; run < 500; ++run)
    {
        auto const a = draw(pmf, 100, 2 * run);
        auto const b = draw(pmf, 100, 2 * run + 1);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (std::size_t k = 0; k < a.size(); ++k)
            pairs.emplace_back(a[k], b[k]);
        RngStream rng(run, 9);
        pvalues.push_back(permutation_independence(pairs, 199, rng).p_value);
    }
    std::sort(pvalues.begin(), pvalues.end());
    double ks = 0;
    double const n = static_cast<double>(pvalues.size());
    for (std::size_t i = 0; i < pvalues.size(); ++i)
    {
        ks = std::max(ks, static_cast<double>(i + 1) / n - pvalues[i]);
        ks = std::max(ks, pvalues[i] - static_cast<double>(i) / n);
    }
    EXPECT_LE(ks, 0.08);
}

TEST(GofTest, report_contract)
{
    auto const xs = draw(geometric_pmf(2.0, 60), 2000, 4);
    RngStream rng(12, 3);
    auto const r = gof_test_t1(xs, 0.5, rng);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    EXPECT_EQ(12u, r.seed);
    EXPECT_EQ(3u, r.stream);
    EXPECT_EQ(1000u, r.n_pairs);
    EXPECT_EQ("T1", r.theorem);
    EXPECT_EQ("single", r.replicate_policy);
    EXPECT_GT(r.dof, 0);

    RngStream again(12, 3);
    EXPECT_EQ(r, gof_test_t1(xs, 0.5, again));

    // odd length drops the trailing observation
    RngStream odd_rng(12, 3);
    std::vector<std::uint64_t> odd(xs.begin(), xs.end() - 1);
    EXPECT_EQ(999u, gof_test_t1(odd, 0.5, odd_rng).n_pairs);
}

TEST(GofTest, replicates_and_permutation)
{
    auto const xs = draw(poisson_pmf(1.0, 40), 2000, 5);
    GofOptions opts;
    opts.replicates = 3;
    RngStream rng(1);
    auto const r = gof_test_t2(xs, 0.3, 0.6, rng, opts);
    EXPECT_EQ("mean-of-3", r.replicate_policy);
    EXPECT_EQ("T2", r.theorem);
    EXPECT_DOUBLE_EQ(0.6, r.q);

    opts.method = TestMethod::permutation;
    opts.permutations = 199;
    RngStream prng(2);
    auto const pr = gof_test_t2(xs, 0.3, 0.6, prng, opts);
    EXPECT_EQ(TestMethod::permutation, pr.method);
    EXPECT_GE(pr.p_value, 1.0 / 200);
    EXPECT_LE(pr.p_value, 1.0);
}

TEST(GofTest, detects_alternatives)
{
    RngStream rng(6);
    auto const uni = draw(uniform_pmf(4), 4000, 7);
    EXPECT_LT(gof_test_t1(uni, 0.5, rng).p_value, 1e-6);
    auto const geo = draw(geometric_pmf(2.0, 60), 4000, 8);
    EXPECT_LT(gof_test_t2(geo, 0.3, 0.6, rng).p_value, 1e-3);
}

TEST(GofTest, errors)
{
    RngStream rng(0);
    std::vector<std::uint64_t> const zeros(100, 0);
    EXPECT_THROW(gof_test_t1(zeros, 0.5, rng), DegenerateTableError);
    GofOptions perm;
    perm.method = TestMethod::permutation;
    EXPECT_THROW(gof_test_t2(zeros, 0.3, 0.6, rng, perm), DegenerateTableError);

    std::vector<std::uint64_t> const few(39, 1);
    EXPECT_THROW(gof_test_t1(few, 0.5, rng), InsufficientDataError);
    EXPECT_THROW(gof_test_t1(zeros, 1.5, rng), DomainError);
}

//---------------------------------------------------------------------------//
}  // namespace test
}  // namespace thinchar
