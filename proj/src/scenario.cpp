// hrs-sim: hierarchical rate splitting simulator for FDD massive MIMO
// Copyright (C) 2026 the hrs-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hrs/scenario.hpp"

#include <fstream>
#include <sstream>

#include "hrs/common.hpp"
#include "hrs/precoding.hpp"

namespace hrs {

void ScenarioConfig::validate() const
{
    if (m < 2)
        throw config_error("config: M must be >= 2");
    if (groups == 0 || k == 0)
        throw config_error("config: K and G must be positive");
    if (k % groups != 0)
        throw config_error("config: K must be divisible by G for the equal-group setup");
    if (tau2 < 0.0 || tau2 > 1.0)
        throw config_error("config: tau2 must lie in [0, 1]");
    if (spread <= 0.0)
        throw config_error("config: delta (angular spread) must be > 0");
    if (snr_db.empty())
        throw config_error("config: the SNR list must not be empty");
    if (n_draws < 1)
        throw config_error("config: draws must be >= 1");
    if (groups * dominant_rank > m)
        throw config_error("config: violated sum_g r^d_g <= M (G * r^d = " +
                           std::to_string(groups * dominant_rank) + ", M = " + std::to_string(m) +
                           ")");
    const arma::uword kbar = users_per_group();
    if (b < kbar)
        throw config_error("config: violated K_g <= b_g (K_g = " + std::to_string(kbar) +
                           ", b = " + std::to_string(b) + ")");
    if ((groups - 1) * dominant_rank + b > m)
        throw config_error("config: violated b_g <= M - sum_{l != g} r^d_l");
    if (b > dominant_rank)
        throw config_error("config: violated b_g <= r^d_g (b = " + std::to_string(b) +
                           ", r^d = " + std::to_string(dominant_rank) + ")");
    if (grid_step <= 0.0 || grid_step > 0.5)
        throw config_error("config: grid_step must lie in (0, 0.5]");
    if (fixed_alpha <= 0.0 || fixed_alpha > 1.0 || fixed_beta <= 0.0 || fixed_beta > 1.0)
        throw config_error("config: alpha and beta must lie in (0, 1]");
}

Scenario assemble_scenario(const ScenarioConfig &config)
{
    config.validate();

    Scenario s;
    s.config = config;

    const AntennaArray array = build_uca(config.m);
    for (std::size_t g = 0; g < config.groups; ++g)
        s.stats.push_back(make_group_statistics(array, config.theta(g), config.spread, config.tau2,
                                                config.dominant_rank, config.quad_nodes,
                                                config.rank_tol));

    for (std::size_t g = 0; g < config.groups; ++g)
        s.outer.push_back(build_outer_precoder(s.stats, g, config.b, config.users_per_group()));

    s.rbar.resize(config.groups);
    for (std::size_t g = 0; g < config.groups; ++g)
    {
        s.rbar[g].resize(config.groups);
        for (std::size_t l = 0; l < config.groups; ++l)
        {
            arma::cx_mat r = s.outer[l].t() * s.stats[g].R * s.outer[l];
            if (l == g)
                r = 0.5 * (r + r.t()); // exact Hermitian for the solvers
            s.rbar[g][l] = std::move(r);
        }
    }
    return s;
}

namespace {

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string &value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_double(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("");
        return v;
    }
    catch (const std::exception &)
    {
        throw config_error("config: invalid numeric value for '" + key + "': " + value);
    }
}

std::uint64_t parse_uint(const std::string &key, const std::string &value)
{
    const double v = parse_double(key, value);
    if (v < 0.0 || v != std::floor(v))
        throw config_error("config: '" + key + "' must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

} // namespace

void apply_config_entry(ScenarioConfig &config, const std::string &key, const std::string &value)
{
    if (key == "scenario" || key == "name")
    {
        config.name = value;
        if (value == "disjoint")
            config.spread = M_PI / 8.0;
        else if (value == "overlap" || value == "overlapping")
            config.spread = M_PI / 3.0;
        else if (value != "custom")
            throw config_error("config: scenario must be disjoint, overlap, or custom");
    }
    else if (key == "M")
        config.m = static_cast<arma::uword>(parse_uint(key, value));
    else if (key == "K")
        config.k = static_cast<arma::uword>(parse_uint(key, value));
    else if (key == "G")
        config.groups = static_cast<arma::uword>(parse_uint(key, value));
    else if (key == "b")
        config.b = static_cast<arma::uword>(parse_uint(key, value));
    else if (key == "rd")
        config.dominant_rank = static_cast<arma::uword>(parse_uint(key, value));
    else if (key == "tau2")
        config.tau2 = parse_double(key, value);
    else if (key == "delta")
        config.spread = parse_double(key, value);
    else if (key == "theta0")
        config.theta0 = parse_double(key, value);
    else if (key == "theta_step")
        config.theta_step = parse_double(key, value);
    else if (key == "snr")
    {
        config.snr_db.clear();
        for (const auto &v : split_list(value))
            config.snr_db.push_back(parse_double(key, v));
    }
    else if (key == "draws")
        config.n_draws = static_cast<std::size_t>(parse_uint(key, value));
    else if (key == "seed")
        config.seed = parse_uint(key, value);
    else if (key == "schemes")
        config.schemes = split_list(value);
    else if (key == "power_mode")
    {
        if (value == "closed_form")
            config.power_mode = PowerMode::kClosedForm;
        else if (value == "exhaustive")
            config.power_mode = PowerMode::kExhaustive;
        else if (value == "fixed")
            config.power_mode = PowerMode::kFixed;
        else
            throw config_error("config: power_mode must be closed_form, exhaustive, or fixed");
    }
    else if (key == "alpha")
        config.fixed_alpha = parse_double(key, value);
    else if (key == "beta")
        config.fixed_beta = parse_double(key, value);
    else if (key == "grid_step")
        config.grid_step = parse_double(key, value);
    else if (key == "objective")
    {
        if (value == "detequiv" || value == "asymptotic")
            config.objective = SearchObjective::kDetEquiv;
        else if (value == "monte_carlo")
            config.objective = SearchObjective::kMonteCarlo;
        else
            throw config_error("config: objective must be detequiv or monte_carlo");
    }
    else if (key == "gamma_form")
    {
        if (value == "literal")
            config.gamma_form = SpectralForm::kLiteral;
        else if (value == "zf_limit")
            config.gamma_form = SpectralForm::kZfLimit;
        else
            throw config_error("config: gamma_form must be literal or zf_limit");
    }
    else if (key == "quad_nodes")
        config.quad_nodes = static_cast<int>(parse_uint(key, value));
    else if (key == "rank_tol")
        config.rank_tol = parse_double(key, value);
    else if (key == "threads")
        config.threads = static_cast<unsigned>(parse_uint(key, value));
    else if (key == "timing")
        config.timing = (value == "1" || value == "true" || value == "on");
    else
        throw config_error("config: unknown key '" + key + "'");
}

ScenarioConfig parse_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("config: cannot open " + path);

    ScenarioConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) +
                               " is not of the form key = value");
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

} // namespace hrs
