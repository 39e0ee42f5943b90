//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/io.hpp
//! JSON and CSV encodings of library results.
//!
//! CSV: comma separated, one header row, LF line endings, reals with 17
//! significant digits. JSON: keys in a fixed insertion order.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "exact_law.hpp"
#include "independence_test.hpp"
#include "series_solver.hpp"
#include "thinning.hpp"

namespace thinchar
{
using Json = nlohmann::ordered_json;

//! Real formatted with 17 significant digits.
inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

//---------------------------------------------------------------------------//
// FORM SAMPLES
//---------------------------------------------------------------------------//
inline void write_samples_csv(std::ostream& os, std::span<FormSample const> samples)
{
    os << "l1,l2,x,y\n";
    for (auto const& s : samples)
        os << s.l1 << ',' << s.l2 << ',' << s.x << ',' << s.y << '\n';
}

//---------------------------------------------------------------------------//
// JOINT LAWS
//---------------------------------------------------------------------------//
struct JointSummary
{
    double tv_independence_gap{0};
    double mean_first{0};
    double mean_second{0};
    double deficit{0};
};

inline JointSummary summarize(JointPmf const& j)
{
    auto const [m1, m2] = marginals(j);
    return {tv_independence_gap(j), m1.mean(), m2.mean(), j.deficit()};
}

inline Json to_json(JointSummary const& s)
{
    Json out;
    out["tv_independence_gap"] = s.tv_independence_gap;
    out["mean_first"] = s.mean_first;
    out["mean_second"] = s.mean_second;
    out["deficit"] = s.deficit;
    return out;
}

inline Json to_json(JointPmf const& j)
{
    Json out;
    out["type"] = "joint_pmf";
    out["theorem"] = to_string(j.meta().theorem);
    out["base_law"] = j.meta().label;
    out["p"] = j.meta().p;
    out["q"] = j.meta().theorem == Theorem::t2 ? Json(j.meta().q) : Json(nullptr);
    out["rows"] = j.rows();
    out["cols"] = j.cols();
    out["deficit"] = j.deficit();
    out["summary"] = to_json(summarize(j));
    Json probs = Json::array();
    for (std::size_t i = 0; i < j.rows(); ++i)
    {
        Json row = Json::array();
        for (std::size_t k = 0; k < j.cols(); ++k)
            row.push_back(j(i, k));
        probs.push_back(std::move(row));
    }
    out["probs"] = std::move(probs);
    return out;
}

//! Non-zero cells as "i,j,prob" rows.
inline void write_joint_csv(std::ostream& os, JointPmf const& j)
{
    os << "i,j,prob\n";
    for (std::size_t i = 0; i < j.rows(); ++i)
        for (std::size_t k = 0; k < j.cols(); ++k)
            if (j(i, k) != 0)
                os << i << ',' << k << ',' << format_real(j(i, k)) << '\n';
}

//---------------------------------------------------------------------------//
// RECURSIONS
//---------------------------------------------------------------------------//
inline Json to_json(RecursionReport const& r, bool normalized = false)
{
    Json out;
    out["type"] = "recursion_report";
    out["theorem"] = to_string(r.theorem);
    out["p"] = r.p;
    out["q"] = r.theorem == Theorem::t2 ? Json(r.q) : Json(nullptr);
    out["order"] = r.series.order();
    out["c0"] = r.series[0];
    out["c1"] = r.series[1];
    out["normalized"] = normalized;
    out["c_constant"] = r.c_constant;
    out["coefficients"] = r.series.coeffs();
    out["residuals"] = r.residuals;
    out["max_residual"] = r.max_residual();
    out["partial_sum"] = r.partial_sum;
    out["min_coeff"] = r.min_coeff;
    out["flags"] = Json{{"negative_coefficient", r.negative_coefficient},
                        {"excess_mass", r.excess_mass}};
    out["is_pgf"] = r.is_pgf();
    return out;
}

//---------------------------------------------------------------------------//
// TESTS AND POWER CURVES
//---------------------------------------------------------------------------//
inline Json to_json(TestReport const& r)
{
    Json out;
    out["type"] = "test_report";
    out["theorem"] = r.theorem.empty() ? Json(nullptr) : Json(r.theorem);
    out["method"] = to_string(r.method);
    out["statistic"] = r.statistic;
    out["dof"] = r.dof;
    out["p_value"] = r.p_value;
    out["n_pairs"] = r.n_pairs;
    out["p"] = r.p;
    out["q"] = r.theorem == "T2" ? Json(r.q) : Json(nullptr);
    out["seed"] = r.seed;
    out["stream"] = r.stream;
    out["replicate_policy"] = r.replicate_policy;
    return out;
}

inline Json to_json(std::span<PowerPoint const> curve)
{
    Json out = Json::array();
    for (auto const& pt : curve)
    {
        Json o;
        o["n"] = pt.n;
        o["alpha"] = pt.alpha;
        o["trials"] = pt.trials;
        o["size"] = pt.size;
        o["power"] = pt.power;
        o["se_size"] = pt.se_size;
        o["se_power"] = pt.se_power;
        o["degenerate_null"] = pt.degenerate_null;
        o["degenerate_alt"] = pt.degenerate_alt;
        out.push_back(std::move(o));
    }
    return out;
}

inline void write_power_csv(std::ostream& os, std::span<PowerPoint const> curve)
{
    os << "n,alpha,size,power,se_size,se_power\n";
    for (auto const& pt : curve)
    {
        os << pt.n << ',' << format_real(pt.alpha) << ',' << format_real(pt.size) << ','
           << format_real(pt.power) << ',' << format_real(pt.se_size) << ','
           << format_real(pt.se_power) << '\n';
    }
}

//---------------------------------------------------------------------------//
}  // namespace thinchar
