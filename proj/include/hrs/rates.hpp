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

#include <armadillo>

#include "hrs/precoding.hpp"
#include "hrs/scenario.hpp"

namespace hrs {

/// Instantaneous SINRs of one draw, one entry per user (grouped).
struct SinrTable
{
    std::vector<arma::vec> oc; // outer common
    std::vector<arma::vec> ic; // inner common
    std::vector<arma::vec> p;  // private
    std::string scheme;
};

/// Per-message rates in bits/s/Hz.
struct RateReport
{
    double r_oc = 0.0;
    arma::vec r_ic_group;  // per group
    double r_ic = 0.0;
    std::vector<arma::vec> r_p_user; // per user
    double r_p = 0.0;
    double r_sum = 0.0;
    std::string scheme;
    std::size_t n_draws = 1;
    double stderr_sum = 0.0; // standard error of r_sum over draws
};

/// The squared channel/precoder inner products of one draw. They do not
/// depend on the power split, so a single table serves every (alpha, beta)
/// and every scheme evaluated on the draw.
struct DrawTables
{
    // Flattened over users u = g * K_g + k (equal group sizes) or ragged
    // offsets for general group sizes.
    std::vector<arma::uword> group_of;   // group index per user
    std::vector<arma::uword> index_in_group;
    arma::mat p_full;   // K x K_streams : |h_u^H B_l w_lj|^2, streams flattened
    arma::mat ic_full;  // K x G        : |h_u^H B_l w_ic_l|^2
    arma::vec oc;       // K            : |h_u^H w_oc|^2
    // Scheduled baselines (selection by estimated effective gain):
    arma::umat selected;   // G x 1 : selected user per group
    arma::mat sched_cross; // G x G : |h_{g,sel}^H B_l w_sched_l|^2
    double b3_gain = 0.0;  // best user's |h^H B w|^2, full power, no interference
};

/// Builds the quadratic-form tables of one draw.
DrawTables build_draw_tables(const ChannelDraw &draw, const PrecoderSet &precoders);

/// Instantaneous HRS SINRs per user. The denominators follow successive
/// decoding: the inner-common SINR removes the own inner-common term, the
/// private SINR additionally removes the own private term.
SinrTable hrs_sinrs(const ChannelDraw &draw, const PrecoderSet &precoders,
                    const PowerSplit &split);

/// Same evaluation from precomputed tables.
SinrTable hrs_sinrs_from_tables(const DrawTables &tables, std::size_t groups,
                                const std::vector<arma::uword> &users_per_group,
                                const PowerSplit &split);

/// Rates from an SINR table: common-message rates take the minimum SINR over
/// the users that must decode them.
RateReport hrs_rates(const SinrTable &table);

/// Conventional two-tier broadcast with uniform per-stream power P/K. The
/// SINRs coincide bitwise with the HRS private SINRs at alpha = beta = 1 for
/// equal group sizes.
RateReport ttp_rates(const ChannelDraw &draw, const PrecoderSet &precoders, double p);

enum class SchedulingLevel
{
    kGroup, // one user per group, P/G each, inter-group interference remains
    kSystem // single best user, full power, interference-free
};

/// User-scheduling baselines. Selection maximizes the estimated effective
/// channel gain ||B_g^H hhat|| (transmitter-side knowledge); rates use the
/// true channels. Ties select the lowest user index.
RateReport scheduled_rates(const ChannelDraw &draw, const PrecoderSet &precoders, double p,
                           SchedulingLevel level);

/// Evaluation scheme of a Monte Carlo run.
enum class McScheme
{
    kHrs,
    kTtp,
    kBaseline2,
    kBaseline3
};

/// Seeded Monte Carlo average of per-draw rate reports. Deterministic given
/// the base seed, independent of the thread count: per-draw results are
/// stored by index and reduced in draw order.
RateReport monte_carlo(const Scenario &scenario, McScheme scheme, const PowerSplit &split,
                       std::size_t n_draws, std::uint64_t base_seed, unsigned threads = 0);

/// Shared-draw engine: builds all per-draw tables at one power level. Used by
/// the sweep so that every scheme and every candidate split is evaluated on
/// identical channel realizations.
std::vector<DrawTables> build_all_tables(const Scenario &scenario, double p, std::size_t n_draws,
                                         std::uint64_t base_seed, unsigned threads = 0);

/// Mean rate report over precomputed tables at a given split.
RateReport reduce_hrs(const std::vector<DrawTables> &tables, const Scenario &scenario,
                      const PowerSplit &split, const std::string &scheme_name);

/// Mean TTP report over precomputed tables.
RateReport reduce_ttp(const std::vector<DrawTables> &tables, const Scenario &scenario, double p);

/// Mean per-scheduling-baseline report over precomputed tables.
RateReport reduce_scheduled(const std::vector<DrawTables> &tables, const Scenario &scenario,
                            double p, SchedulingLevel level);

} // namespace hrs
