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

#include <vector>

#include <armadillo>

#include "hrs/det_equiv.hpp"
#include "hrs/rates.hpp"
#include "hrs/scenario.hpp"

namespace hrs {

/// Long-term interference coefficients driving the closed-form power split.
/// inter_group (Gamma_OG) measures residual inter-group coupling through the
/// reduced covariances; intra_group (Gamma_IG) measures the CSIT-error-driven
/// intra-group interference floor.
struct InterferenceSummary
{
    double inter_group = 0.0;
    double intra_group = 0.0;
    arma::vec per_group_inter; // contributions before the min over groups
    arma::vec per_group_intra;
    SpectralForm form = SpectralForm::kZfLimit;
};

/// Computes the interference coefficients from the reduced covariances
/// rbar[g][l] = B_l^H R_g B_l.
///
/// SpectralForm::kLiteral evaluates the printed closed forms
///   Gamma_OG = min_g sum_{l != g} (1/G) tr(Rbar_gl Rbar_ll^{-1}) / tr(Rbar_ll^{-1})
///   Gamma_IG = min_g (tau^2/G) (b / tr(Rbar_gg^{-1})) (Kbar-1)/Kbar,
/// which assume a well-conditioned Rbar (they weigh all eigenmodes by their
/// inverses). SpectralForm::kZfLimit evaluates the same coefficients as the
/// exact zero-regularization limit of the resolvent fixed point:
///   solve (1/b) tr(Rbar_ll ((Kbar/b) Rbar_ll + mu_l I)^{-1}) = 1 for mu_l,
///   That_l = ((Kbar/b) Rbar_ll + mu_l I)^{-1},
///   Gamma_IG = min_g (tau^2/G) tr(Rbar That Rbar That) / tr(Rbar That^2) (Kbar-1)/Kbar
///   Gamma_OG = min_g sum_{l != g} (1/G) tr(Rbar_ll That_l Rbar_gl That_l) / tr(Rbar_ll That_l^2).
/// The two forms coincide as mu -> 0 (e.g. for scaled-identity Rbar); the
/// limit form stays finite when the effective rank of Rbar falls below b,
/// where the printed forms collapse. kZfLimit is the default used by the
/// closed-form allocation.
///
/// Throws config_error when an Rbar_ll is numerically singular (b exceeds the
/// effective rank) in literal form.
InterferenceSummary interference_summary(const std::vector<std::vector<arma::cx_mat>> &rbar,
                                         double tau2, std::size_t groups, double kbar, double bbar,
                                         SpectralForm form = SpectralForm::kZfLimit);

/// Combined closed-form split: alpha from the intra-group rule, beta from the
/// inter-group rule, then alpha reset to 1 whenever beta < 1.
///   alpha_cand = min{ Kbar / (P Gamma_IG), 1 }   (1 when Gamma_IG = 0)
///   beta       = min{ K / (P Gamma_OG + Kbar), 1 }
PowerSplit closed_form_split(const InterferenceSummary &summary, double p, double k_total,
                             double kbar);

/// Result of a grid search over (alpha, beta).
struct GridSearchResult
{
    PowerSplit split;
    double objective = 0.0; // sum rate at the argmax
};

/// Exhaustive search over alpha, beta in {step, 2 step, ..., 1} maximizing
/// the large-system sum rate. Ties break toward larger alpha, then larger
/// beta.
GridSearchResult exhaustive_split(const DetEquiv &de, double grid_step);

/// Exhaustive search maximizing the simulated sum rate averaged over the
/// given shared draw tables (all splits see identical channels).
GridSearchResult exhaustive_split(const std::vector<DrawTables> &tables, const Scenario &scenario,
                                  double p, double grid_step, unsigned threads = 0);

} // namespace hrs
