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

namespace hrs {

/// Fixed point of the large-system resolvent trace: m solves
/// m = (1/b) tr(Rbar T(m)) with T(m) = (Kbar/b * Rbar/(1+m) + eps I)^{-1}.
struct FixedPoint
{
    double m = 0.0;
    arma::cx_mat t; // converged resolvent T
    int iterations = 0;
    double residual = 0.0;
};

/// Plain fixed-point iteration from the given start until |dm| <= tol.
/// Throws convergence_error (reporting the final residual) after max_iter.
FixedPoint solve_fixed_point(const arma::cx_mat &rbar, double kbar, double bbar, double eps,
                             double tol = 1e-12, int max_iter = 10000, double start = 1.0);

struct DetEquivConfig
{
    double kbar = 0.0; // users per group
    double bbar = 0.0; // effective dimension per group
    double eps = 0.0;  // RZF regularization
    double tau2 = 0.0;
    double p = 0.0;    // total power
    std::size_t groups = 0;
};

/// All large-system quantities of the two-tier system. Indexing convention:
/// rbar[g][l] = B_l^H R_g B_l; upsilon(g, l) couples group l's transmit power
/// into group g's users and uses group l's fixed point.
struct DetEquiv
{
    DetEquivConfig config;
    std::vector<std::vector<arma::cx_mat>> rbar;
    arma::vec m;        // fixed points, one per group
    std::vector<arma::cx_mat> t;
    arma::vec m_prime;  // -dm/deps
    arma::mat m_cross;  // cross derivatives, (g, l)
    arma::vec psi;      // normalization loading, (Kbar/b) m' / (1+m)^2
    arma::vec xi_sq;    // (xi^o)^2 = Kbar / psi
    arma::vec phi;      // coherent signal coefficient
    arma::mat upsilon;  // interference coupling, (g, l)
    arma::vec kappa;    // outer-common beamforming gain
    arma::vec omega;    // intra-group interference factor
};

/// Solves all fixed points and derivative terms and assembles the derived
/// coefficients. Throws instability_error when a derivative denominator is
/// not positive (outside the validity region).
DetEquiv assemble_det_equiv(const std::vector<std::vector<arma::cx_mat>> &rbar,
                            const DetEquivConfig &config);

/// Large-system SINRs and rates of HRS and of the conventional two-tier
/// baseline at a given power split.
struct AsymptoticRates
{
    arma::vec sinr_oc;  // per group
    arma::vec sinr_ic;
    arma::vec sinr_p;
    arma::vec sinr_ttp;
    double r_oc = 0.0;  // log2(1 + min_g sinr_oc)
    double r_ic = 0.0;  // sum over groups
    double r_p = 0.0;   // Kbar * sum over groups
    double r_sum_hrs = 0.0;
    double r_sum_ttp = 0.0;
    double gain = 0.0;  // r_sum_hrs - r_sum_ttp
    double alpha = 1.0;
    double beta = 1.0;
};

/// Evaluates the closed-form SINR expressions at (alpha, beta) and composes
/// the rates. The TTP SINR is filled as well (it does not depend on the
/// split).
AsymptoticRates hrs_asymptotic_sinrs(const DetEquiv &de, const PowerSplit &split);

/// TTP-only evaluation (identical to hrs_asymptotic_sinrs at alpha=beta=1).
AsymptoticRates ttp_asymptotic_rate(const DetEquiv &de);

/// Diagnostic snapshot: one CSV row per group pair (g, l) with the scalar
/// fields of the group and the coupling entries.
void export_det_equiv_csv(const DetEquiv &de, const std::string &path);

} // namespace hrs
