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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <armadillo>

#include "hrs/channel_model.hpp"

namespace hrs {

enum class PowerMode
{
    kClosedForm, // Proposition-style closed form
    kExhaustive, // grid search
    kFixed       // user-supplied (alpha, beta)
};

enum class SearchObjective
{
    kDetEquiv,  // large-system sum rate (fast, deterministic)
    kMonteCarlo // simulated sum rate on the shared draws
};

/// Spectral evaluation of the closed-form interference coefficients; see
/// power_alloc.hpp.
enum class SpectralForm
{
    kLiteral,
    kZfLimit
};

struct ScenarioConfig
{
    std::string name = "disjoint";
    arma::uword m = 100;        // BS antennas
    arma::uword k = 12;         // users in total
    arma::uword groups = 4;     // G
    arma::uword b = 15;         // effective channel dimension per group
    arma::uword dominant_rank = 20; // r^d per group
    double tau2 = 0.4;          // CSIT error fraction
    double spread = M_PI / 8.0; // angular spread Delta (radians)
    double theta0 = -M_PI / 2.0;     // azimuth of group 1
    double theta_step = M_PI / 3.0;  // azimuth increment between groups
    std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
    std::size_t n_draws = 500;
    std::uint64_t seed = 1;
    std::vector<std::string> schemes = {"TTP",     "Baseline2",   "Baseline3",  "HRS_CLF",
                                        "HRS_EXS", "HRS_DetEquiv", "TTP_DetEquiv"};
    PowerMode power_mode = PowerMode::kClosedForm;
    double fixed_alpha = 1.0;
    double fixed_beta = 1.0;
    double grid_step = 0.01;
    SearchObjective objective = SearchObjective::kDetEquiv;
    SpectralForm gamma_form = SpectralForm::kZfLimit;
    int quad_nodes = 200;
    double rank_tol = 1e-6;
    unsigned threads = 0;   // 0 = hardware concurrency
    bool timing = false;    // emit wall-clock times in CSV rows

    arma::uword users_per_group() const { return k / groups; }
    double theta(std::size_t g) const { return theta0 + theta_step * static_cast<double>(g); }

    /// Throws config_error naming the violated constraint.
    void validate() const;
};

/// A fully assembled scenario: group statistics, outer precoders, and the
/// reduced covariances Rbar[g][l] = B_l^H R_g B_l.
struct Scenario
{
    ScenarioConfig config;
    std::vector<GroupStatistics> stats;
    std::vector<arma::cx_mat> outer; // B_g, M x b
    std::vector<std::vector<arma::cx_mat>> rbar;

    std::vector<arma::uword> users() const
    {
        return std::vector<arma::uword>(config.groups, config.users_per_group());
    }
    /// RZF regularization for total power p: K / (b_total * p).
    double regularization(double p) const
    {
        return static_cast<double>(config.k) /
               (static_cast<double>(config.groups * config.b) * p);
    }
};

Scenario assemble_scenario(const ScenarioConfig &config);

/// Reads a flat key = value config file ('#' starts a comment). Unknown keys
/// raise config_error. Returns defaults updated by the file content.
ScenarioConfig parse_config_file(const std::string &path);

/// Applies one key = value override (same keys as the file format).
void apply_config_entry(ScenarioConfig &config, const std::string &key, const std::string &value);

} // namespace hrs
