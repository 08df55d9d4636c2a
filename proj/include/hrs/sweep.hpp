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

#include <string>
#include <vector>

#include "hrs/scenario.hpp"

namespace hrs {

/// One (scheme, SNR) result row.
struct SweepRow
{
    std::string scenario;
    std::string scheme;
    double snr_db = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
    double r_oc = 0.0;
    double r_ic = 0.0;
    double r_p = 0.0;
    double r_sum = 0.0;
    double stderr_sum = 0.0;
    std::size_t n_draws = 0;
    long wall_ms = 0;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
};

/// Runs the configured schemes over the SNR list. All Monte Carlo schemes of
/// one SNR point share the same channel draws; deterministic-equivalent rows
/// carry n_draws = 0 and zero standard error. Rows are ordered by (scheme,
/// SNR) with schemes in the configured order. Fully deterministic given the
/// base seed (wall-clock columns are emitted as 0 unless timing is enabled).
SweepResult run_sweep(const Scenario &scenario);

/// Writes the result as UTF-8 CSV with header
/// scenario,scheme,snr_db,alpha,beta,r_oc,r_ic,r_p,r_sum,stderr,n_draws,wall_ms
/// and floating values at 6 significant digits.
void emit_csv(const SweepResult &result, const std::string &path);

/// Parses a file produced by emit_csv (round-trip oracle and plot tooling).
SweepResult parse_csv(const std::string &path);

/// Writes one two-column (snr, r_sum) file per (scenario, scheme) curve into
/// the directory, named <scenario>_<scheme>.dat, for direct gnuplot use.
void emit_plot_data(const SweepResult &result, const std::string &directory);

} // namespace hrs
