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

#include "hrs/channel_model.hpp"

namespace hrs {

/// Power split between the message layers. beta is the fraction of the total
/// power given to the group (inner common + private) messages, alpha the
/// fraction of each group's share given to the private messages. Both lie in
/// (0, 1].
struct PowerSplit
{
    double alpha = 1.0;
    double beta = 1.0;
    double total = 1.0; // total transmit power P, linear scale

    double outer_common_power() const { return total * (1.0 - beta); }
    double inner_common_power(std::size_t groups) const
    {
        return total * beta * (1.0 - alpha) / static_cast<double>(groups);
    }
    double private_power(std::size_t groups, arma::uword users_in_group) const
    {
        return total * beta * alpha / (static_cast<double>(groups) * users_in_group);
    }
};

/// Outer precoder of group g: the b_g dominant eigenmodes of the covariance
/// projected onto the null space of the other groups' dominant subspaces.
/// Columns are orthonormal and orthogonal to every other group's dominant
/// eigenvectors. Throws config_error when b_g violates
/// K_g <= b_g <= M - sum_{l != g} r^d_l or b_g > r^d_g (the violated
/// inequality is named), and when the null-space dimension found numerically
/// disagrees with that count.
arma::cx_mat build_outer_precoder(const std::vector<GroupStatistics> &stats, std::size_t g,
                                  arma::uword b_g, arma::uword users_in_group);

/// Regularized zero-forcing on the effective channel estimate (b_g x K_g),
/// scaled so that trace(W^H B^H B W) = K_g.
struct RzfPrecoder
{
    arma::cx_mat w;        // b_g x K_g, includes the power normalization
    double xi = 0.0;       // normalization scalar
    arma::cx_mat lifted_w; // B * w, M x K_g (cached, used by every SINR)
};

RzfPrecoder rzf_inner_precoder(const arma::cx_mat &h_eff_hat, const arma::cx_mat &b,
                               double regularization);

/// Equally weighted matched beamformer over all users' lifted channel
/// estimates B_g B_g^H hhat_gk, normalized to unit norm. Throws
/// degenerate_channel_error when the sum cancels to (numerically) zero.
arma::cx_vec outer_common_precoder(const std::vector<arma::cx_mat> &b,
                                   const std::vector<arma::cx_mat> &h_eff_hat);

/// Inner common precoder of one group: the mean of the group's RZF columns,
/// scaled so that ||B w_ic|| = 1.
struct InnerCommonPrecoder
{
    arma::cx_vec w; // b_g vector, includes the scaling
    double zeta = 0.0;
};

InnerCommonPrecoder inner_common_precoder(const arma::cx_mat &w_rzf, const arma::cx_mat &b);

/// All precoders of one channel draw.
struct PrecoderSet
{
    std::vector<arma::cx_mat> b;       // outer precoders, M x b_g
    std::vector<RzfPrecoder> w;        // inner RZF precoders
    std::vector<InnerCommonPrecoder> w_ic;
    std::vector<arma::cx_vec> lifted_w_ic; // B_g * w_ic_g, M vectors
    arma::cx_vec w_oc;                 // M vector, unit norm
    double regularization = 0.0;       // epsilon used for the RZF
};

/// Builds the RZF, inner common, and outer common precoders for one draw on
/// top of fixed outer precoders. regularization is epsilon = K / (b P) with
/// b = sum_g b_g, supplied by the caller.
PrecoderSet build_precoders(const std::vector<arma::cx_mat> &b, const ChannelDraw &draw,
                            double regularization);

/// Mean transmit power E[||x||^2] of the rate-splitting signal for one draw,
/// over unit-power independent symbols. Equals the configured total power up
/// to the precoder normalizations.
double transmit_power(const PrecoderSet &precoders, const PowerSplit &split,
                      const std::vector<arma::uword> &users_per_group);

} // namespace hrs
