//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/cli.hpp
//! Command-line front end: sample, exact, solve, test, power.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "errors.hpp"
#include "exact_law.hpp"
#include "independence_test.hpp"
#include "io.hpp"
#include "pmf.hpp"
#include "series_solver.hpp"
#include "thinning.hpp"

namespace thinchar
{
namespace cli
{
//! Process exit codes.
enum ExitCode : int
{
    kSuccess = 0,
    kUsage = 2,
    kNotPgf = 3,
    kCapacity = 4,
};

//! Truncation target when --n-max is not given.
inline constexpr double kAutoDeficit = 1e-15;
inline constexpr std::size_t kAutoNMaxCap = 5000;

//---------------------------------------------------------------------------//
/*!
 * Parse "family:param[,param...]".
 *
 * Families: geometric:a, poisson:lambda, uniform:m, custom:w0,w1,...
 * (explicit probabilities, remainder becomes deficit).
 */
inline Pmf parse_law(std::string const& text, std::optional<std::size_t> n_max)
{
    auto const colon = text.find(':');
    detail::require<DomainError>(colon != std::string::npos,
                                 "distribution '" + text + "': expected family:param");
    std::string const family = text.substr(0, colon);
    std::vector<double> params;
    std::stringstream ss(text.substr(colon + 1));
    for (std::string tok; std::getline(ss, tok, ',');)
    {
        std::size_t used = 0;
        double v = 0;
        try
        {
            v = std::stod(tok, &used);
        }
        catch (std::exception const&)
        {
            used = 0;
        }
        detail::require<DomainError>(used == tok.size() && !tok.empty(),
                                     "distribution '" + text + "': bad number '" + tok + "'");
        params.push_back(v);
    }
    auto one_param = [&] {
        detail::require<DomainError>(params.size() == 1,
                                     "distribution '" + text + "': expected one parameter");
        return params.front();
    };

    if (family == "geometric")
    {
        double const a = one_param();
        detail::require<DomainError>(a > 1, "geometric: parameter a must exceed 1");
        std::size_t n = n_max.value_or(std::min<std::size_t>(
            kAutoNMaxCap,
            static_cast<std::size_t>(std::ceil(-std::log(kAutoDeficit) / std::log(a)))));
        return geometric_pmf(a, n);
    }
    if (family == "poisson")
    {
        double const lambda = one_param();
        detail::require<DomainError>(lambda > 0, "poisson: lambda must be positive");
        std::size_t n = 0;
        if (n_max)
        {
            n = *n_max;
        }
        else
        {
            n = static_cast<std::size_t>(std::ceil(lambda));
            while (n < kAutoNMaxCap && gamma_p(static_cast<double>(n) + 1, lambda) > kAutoDeficit)
                ++n;
        }
        return poisson_pmf(lambda, n);
    }
    if (family == "uniform")
    {
        double const m = one_param();
        detail::require<DomainError>(m >= 0 && m == std::floor(m),
                                     "uniform: m must be a non-negative integer");
        return uniform_pmf(static_cast<long>(m));
    }
    if (family == "custom")
    {
        detail::require<DomainError>(!params.empty(), "custom: needs probabilities");
        return make_pmf(params, text);
    }
    throw DomainError("distribution '" + text
                      + "': unknown family (geometric, poisson, uniform, custom)");
}

inline Theorem parse_theorem(int t)
{
    return t == 1 ? Theorem::t1 : Theorem::t2;
}

namespace detail
{
//! Writes to --out when given, else to the command's output stream.
template<class Fn>
void emit(std::string const& path, std::ostream& out, Fn write)
{
    if (path.empty() || path == "-")
    {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    thinchar::detail::require<DomainError>(file.good(), "cannot open output file '" + path + "'");
    write(file);
    thinchar::detail::require<DomainError>(file.good(), "failed writing '" + path + "'");
}

inline std::vector<std::uint64_t> read_observations(std::string const& path)
{
    std::ifstream in(path);
    thinchar::detail::require<DomainError>(in.good(), "cannot open input file '" + path + "'");
    std::vector<std::uint64_t> xs;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno)
    {
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto const last = line.find_last_not_of(" \t\r");
        std::string const tok = line.substr(first, last - first + 1);
        bool ok = tok.find_first_not_of("0123456789") == std::string::npos && tok.size() <= 19;
        if (!ok)
        {
            throw DomainError("line " + std::to_string(lineno) + ": '" + tok
                              + "' is not a non-negative integer");
        }
        xs.push_back(std::stoull(tok));
    }
    return xs;
}

inline ThinningMethod parse_thinning(std::string const& s)
{
    return s == "bernoulli" ? ThinningMethod::bernoulli_loop : ThinningMethod::binomial;
}

inline TestMethod parse_method(std::string const& s)
{
    return s == "permutation" ? TestMethod::permutation : TestMethod::chi2;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Run the command line. Returns the process exit code.
 *
 * Flags override values from --config (TOML/INI); the default seed may also
 * be set through THINCHAR_SEED.
 */
inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Thinned-form characterizations of geometric and Poisson laws", "thinchar"};
    app.set_config("--config", "", "Read option defaults from a TOML/INI file");
    app.require_subcommand(1);

    // shared settings
    int theorem = 1;
    double p = 0.5;
    double q = 0.5;
    std::optional<std::size_t> n_max;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string out_path;
    std::string format = "json";

    auto add_theorem = [&](CLI::App* sub) {
        sub->add_option("--theorem", theorem, "1 = geometric forms (L1, L2), 2 = Poisson forms (K1, K2)")
            ->check(CLI::IsMember({1, 2}))
            ->capture_default_str();
        sub->add_option("--p", p, "Thinning probability p in (0,1)")->capture_default_str();
        sub->add_option("--q", q, "Second thinning probability (theorem 2)")->capture_default_str();
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Master RNG seed")
            ->envname("THINCHAR_SEED")
            ->capture_default_str();
        sub->add_option("--stream", stream, "RNG stream id")->capture_default_str();
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out,-o", out_path, "Output file (default: standard output)");
    };

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Draw realizations of the forms as CSV");
    std::string dist;
    std::size_t n_samples = 1000;
    std::string thinning = "binomial";
    add_theorem(sample_cmd);
    sample_cmd->add_option("--dist", dist, "Base law, e.g. geometric:2, poisson:1.5, uniform:4")
        ->required();
    sample_cmd->add_option("--n", n_samples, "Number of samples")->capture_default_str();
    sample_cmd->add_option("--n-max", n_max, "Truncation point of the base law");
    sample_cmd->add_option("--thinning", thinning, "binomial or bernoulli")
        ->check(CLI::IsMember({"binomial", "bernoulli"}))
        ->capture_default_str();
    add_seed(sample_cmd);
    add_out(sample_cmd);

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "Exact joint law of the forms");
    std::size_t max_cells = kDefaultMaxCells;
    add_theorem(exact_cmd);
    exact_cmd->add_option("--dist", dist, "Base law")->required();
    exact_cmd->add_option("--n-max", n_max, "Truncation point of the base law");
    exact_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    exact_cmd->add_option("--max-cells", max_cells, "Largest dense grid allowed")
        ->capture_default_str();
    add_out(exact_cmd);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Run the coefficient recursion");
    double c0 = 0;
    std::optional<double> c1;
    std::size_t order = 30;
    bool normalize = false;
    double tol = 1e-9;
    add_theorem(solve_cmd);
    solve_cmd->add_option("--c0", c0, "P(0)")->required();
    solve_cmd->add_option("--c1", c1, "P'(0); omit with --normalize");
    solve_cmd->add_option("--K", order, "Highest order computed")->capture_default_str();
    solve_cmd->add_flag("--normalize", normalize, "Choose c1 so the coefficients sum to 1");
    solve_cmd->add_option("--tol", tol, "Normalization tolerance")->capture_default_str();
    add_out(solve_cmd);

    // test
    auto* test_cmd = app.add_subcommand("test", "Goodness-of-fit test on observed counts");
    std::string input;
    std::string method = "chi2";
    std::size_t permutations = 999;
    std::size_t replicates = 1;
    double min_expected = 5.0;
    add_theorem(test_cmd);
    test_cmd->add_option("--input,-i", input, "File with one non-negative integer per line")
        ->required();
    test_cmd->add_option("--method", method, "chi2 or permutation")
        ->check(CLI::IsMember({"chi2", "permutation"}))
        ->capture_default_str();
    test_cmd->add_option("--permutations", permutations, "Permutations (permutation method)")
        ->capture_default_str();
    test_cmd->add_option("--replicates", replicates, "Thinning replicates averaged")
        ->capture_default_str();
    test_cmd->add_option("--min-expected", min_expected, "Pooling threshold per cell")
        ->capture_default_str();
    add_seed(test_cmd);
    add_out(test_cmd);

    // power
    auto* power_cmd = app.add_subcommand("power", "Monte Carlo size and power");
    std::string null_dist, alt_dist;
    std::vector<std::size_t> sizes{2000};
    std::size_t trials = 1000;
    double alpha = 0.05;
    unsigned threads = 1;
    std::string power_format = "csv";
    add_theorem(power_cmd);
    power_cmd->add_option("--null", null_dist, "Law under the null")->required();
    power_cmd->add_option("--alt", alt_dist, "Law under the alternative")->required();
    power_cmd->add_option("--n", sizes, "Sample sizes, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    power_cmd->add_option("--trials", trials, "Replications per sample size")->capture_default_str();
    power_cmd->add_option("--alpha", alpha, "Test level")->capture_default_str();
    power_cmd->add_option("--method", method, "chi2 or permutation")
        ->check(CLI::IsMember({"chi2", "permutation"}))
        ->capture_default_str();
    power_cmd->add_option("--permutations", permutations, "Permutations (permutation method)")
        ->capture_default_str();
    power_cmd->add_option("--n-max", n_max, "Truncation point of both laws");
    power_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
    power_cmd->add_option("--format", power_format, "csv or json")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    add_seed(power_cmd);
    add_out(power_cmd);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try
    {
        Theorem const th = parse_theorem(theorem);
        if (*sample_cmd)
        {
            ThinningParams const params(p, q);
            Pmf const law = parse_law(dist, n_max);
            DiscreteSampler const base(law);
            RngStream rng(seed, stream);
            auto const how = detail::parse_thinning(thinning);
            std::vector<FormSample> rows;
            rows.reserve(n_samples);
            for (std::size_t k = 0; k < n_samples; ++k)
            {
                rows.push_back(th == Theorem::t1 ? sample_t1_forms(base, params, rng, how)
                                                 : sample_t2_forms(base, params, rng, how));
            }
            detail::emit(out_path, out, [&](std::ostream& os) { write_samples_csv(os, rows); });
        }
        else if (*exact_cmd)
        {
            ThinningParams const params(p, q);
            Pmf const law = parse_law(dist, n_max);
            auto const joint = exact_joint(th, law, params, max_cells);
            if (format == "json")
            {
                detail::emit(out_path, out,
                             [&](std::ostream& os) { os << to_json(joint).dump(2) << '\n'; });
            }
            else
            {
                detail::emit(out_path, out, [&](std::ostream& os) { write_joint_csv(os, joint); });
                auto const s = summarize(joint);
                err << "tv_independence_gap=" << format_real(s.tv_independence_gap) << '\n'
                    << "mean_first=" << format_real(s.mean_first) << '\n'
                    << "mean_second=" << format_real(s.mean_second) << '\n'
                    << "deficit=" << format_real(s.deficit) << '\n';
            }
        }
        else if (*solve_cmd)
        {
            thinchar::detail::require<DomainError>(normalize || c1.has_value(),
                                                   "solve: give --c1 or --normalize");
            double c1_value = 0;
            if (normalize)
            {
                c1_value = th == Theorem::t1 ? t1_normalize(c0, p, order, tol)
                                             : t2_normalize(c0, p, q, order, tol);
            }
            else
            {
                c1_value = *c1;
            }
            auto const report = th == Theorem::t1 ? t1_solve(c0, c1_value, p, order)
                                                  : t2_solve(c0, c1_value, p, q, order);
            detail::emit(out_path, out, [&](std::ostream& os) {
                os << to_json(report, normalize).dump(2) << '\n';
            });
            if (!report.is_pgf())
            {
                err << "solve: coefficients do not form a probability generating function\n";
                return kNotPgf;
            }
        }
        else if (*test_cmd)
        {
            ThinningParams const params(p, q);
            auto const xs = detail::read_observations(input);
            GofOptions opts;
            opts.method = detail::parse_method(method);
            opts.permutations = permutations;
            opts.replicates = replicates;
            opts.pooling.min_expected = min_expected;
            RngStream rng(seed, stream);
            auto const report = gof_test(th, xs, params, rng, opts);
            detail::emit(out_path, out,
                         [&](std::ostream& os) { os << to_json(report).dump(2) << '\n'; });
        }
        else if (*power_cmd)
        {
            PowerConfig cfg;
            cfg.theorem = th;
            cfg.params = ThinningParams(p, q);
            cfg.options.method = detail::parse_method(method);
            cfg.options.permutations = permutations;
            cfg.alpha = alpha;
            cfg.trials = trials;
            cfg.threads = threads;
            Pmf const null_law = parse_law(null_dist, n_max);
            Pmf const alt_law = parse_law(alt_dist, n_max);
            auto const curve = power_study(null_law, alt_law, sizes, cfg, RngStream(seed, stream));
            detail::emit(out_path, out, [&](std::ostream& os) {
                if (power_format == "csv")
                    write_power_csv(os, curve);
                else
                    os << to_json(std::span<PowerPoint const>(curve)).dump(2) << '\n';
            });
        }
    }
    catch (CapacityError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kCapacity;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kSuccess;
}

//---------------------------------------------------------------------------//
}  // namespace cli
}  // namespace thinchar
