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

#include "hrs/precoding.hpp"

#include "hrs/common.hpp"

namespace hrs {

namespace {
constexpr double k_vanishing_sv = 1e-8;   // singular values below this are "zero"
constexpr double k_degenerate = 1e-14;    // norms/traces below this are degenerate
} // namespace

arma::cx_mat build_outer_precoder(const std::vector<GroupStatistics> &stats, std::size_t g,
                                  arma::uword b_g, arma::uword users_in_group)
{
    const arma::uword m = stats.at(g).R.n_rows;

    arma::uword rd_others = 0;
    for (std::size_t l = 0; l < stats.size(); ++l)
        if (l != g)
            rd_others += stats[l].dominant_rank;

    if (b_g < users_in_group)
        throw config_error("build_outer_precoder: violated K_g <= b_g (K_g = " +
                           std::to_string(users_in_group) + ", b_g = " + std::to_string(b_g) + ")");
    if (rd_others + b_g > m)
        throw config_error("build_outer_precoder: violated b_g <= M - sum_{l != g} r^d_l (b_g = " +
                           std::to_string(b_g) + ", M - sum r^d = " + std::to_string(m - rd_others) +
                           ")");
    if (b_g > stats[g].dominant_rank)
        throw config_error("build_outer_precoder: violated b_g <= r^d_g (b_g = " +
                           std::to_string(b_g) + ", r^d_g = " +
                           std::to_string(stats[g].dominant_rank) + ")");

    arma::cx_mat null_basis;
    if (rd_others == 0)
    {
        // Single group: no null-space constraint, the full space is available.
        null_basis.eye(m, m);
    }
    else
    {
        arma::cx_mat u_others(m, rd_others);
        arma::uword col = 0;
        for (std::size_t l = 0; l < stats.size(); ++l)
        {
            if (l == g)
                continue;
            u_others.cols(col, col + stats[l].dominant_rank - 1) = stats[l].dominant();
            col += stats[l].dominant_rank;
        }

        arma::cx_mat left, right;
        arma::vec sv;
        if (!arma::svd(left, sv, right, u_others, "std"))
            throw invalid_input_error("build_outer_precoder: SVD failed");

        // The expected null-space dimension is M - sum r^d; verify that the
        // numerical count of vanishing singular values agrees.
        arma::uword vanish = 0;
        for (arma::uword i = 0; i < sv.n_elem; ++i)
            if (sv(i) < k_vanishing_sv)
                ++vanish;
        const arma::uword expected = m - rd_others;
        const arma::uword from_sv = (m - sv.n_elem) + vanish;
        if (from_sv != expected)
            throw invalid_input_error(
                "build_outer_precoder: null-space dimension mismatch (expected " +
                std::to_string(expected) + ", singular-value count gives " +
                std::to_string(from_sv) + "); the dominant subspaces are rank deficient");
        null_basis = left.cols(m - expected, m - 1);
    }

    // Dominant eigenmodes of the projected covariance.
    const arma::cx_mat projected = null_basis.t() * stats[g].R * null_basis;
    EigenBasis basis = eigendecompose(arma::cx_mat(0.5 * (projected + projected.t())), 0.0);
    if (basis.vectors.n_cols < b_g)
        throw config_error("build_outer_precoder: projected covariance rank " +
                           std::to_string(basis.vectors.n_cols) + " is below b_g = " +
                           std::to_string(b_g));
    return null_basis * basis.vectors.cols(0, b_g - 1);
}

RzfPrecoder rzf_inner_precoder(const arma::cx_mat &h_eff_hat, const arma::cx_mat &b,
                               double regularization)
{
    if (regularization <= 0.0)
        throw config_error("rzf_inner_precoder: regularization must be > 0");

    const arma::uword dim = h_eff_hat.n_rows;
    const arma::uword users = h_eff_hat.n_cols;

    // Zero effective channels leave no direction to normalize; the trace
    // below would vanish identically.
    if (arma::accu(arma::square(arma::abs(h_eff_hat))) < k_degenerate)
        throw degenerate_channel_error("rzf_inner_precoder: normalization trace is numerically zero");

    arma::cx_mat gram = h_eff_hat * h_eff_hat.t();
    gram.diag() += static_cast<double>(dim) * regularization;

    arma::cx_mat unscaled;
    if (!arma::solve(unscaled, gram, h_eff_hat, arma::solve_opts::likely_sympd))
        throw invalid_input_error("rzf_inner_precoder: linear solve failed");

    RzfPrecoder out;
    out.lifted_w = b * unscaled;
    const double power = arma::accu(arma::square(arma::abs(out.lifted_w)));
    if (!(power > 0.0) || !std::isfinite(power))
        throw degenerate_channel_error("rzf_inner_precoder: normalization trace is numerically zero");
    out.xi = std::sqrt(static_cast<double>(users) / power);
    out.w = out.xi * unscaled;
    out.lifted_w *= out.xi;
    return out;
}

arma::cx_vec outer_common_precoder(const std::vector<arma::cx_mat> &b,
                                   const std::vector<arma::cx_mat> &h_eff_hat)
{
    if (b.empty() || b.size() != h_eff_hat.size())
        throw config_error("outer_common_precoder: need one effective channel per group");

    arma::cx_vec sum(b.front().n_rows, arma::fill::zeros);
    bool any_user = false;
    for (std::size_t g = 0; g < b.size(); ++g)
    {
        if (h_eff_hat[g].n_cols == 0)
            continue;
        any_user = true;
        sum += b[g] * arma::cx_vec(arma::sum(h_eff_hat[g], 1));
    }
    if (!any_user)
        throw config_error("outer_common_precoder: at least one user is required");

    const double norm = arma::norm(sum);
    if (norm < k_degenerate)
        throw degenerate_channel_error("outer_common_precoder: user channels cancel to zero");
    return sum / norm;
}

InnerCommonPrecoder inner_common_precoder(const arma::cx_mat &w_rzf, const arma::cx_mat &b)
{
    if (w_rzf.n_cols == 0)
        throw config_error("inner_common_precoder: group has no users");

    arma::cx_vec mean_dir = arma::mean(w_rzf, 1);
    arma::cx_vec lifted = b * mean_dir;
    const double norm = arma::norm(lifted);
    if (norm < k_degenerate)
        throw degenerate_channel_error("inner_common_precoder: mean precoder is numerically zero");

    InnerCommonPrecoder out;
    out.zeta = 1.0 / norm;
    out.w = out.zeta * mean_dir;
    return out;
}

PrecoderSet build_precoders(const std::vector<arma::cx_mat> &b, const ChannelDraw &draw,
                            double regularization)
{
    if (b.size() != draw.h_hat.size())
        throw config_error("build_precoders: group count mismatch");

    PrecoderSet set;
    set.b = b;
    set.regularization = regularization;

    std::vector<arma::cx_mat> h_eff_hat(b.size());
    for (std::size_t g = 0; g < b.size(); ++g)
    {
        h_eff_hat[g] = b[g].t() * draw.h_hat[g];
        set.w.push_back(rzf_inner_precoder(h_eff_hat[g], b[g], regularization));
        set.w_ic.push_back(inner_common_precoder(set.w.back().w, b[g]));
        set.lifted_w_ic.push_back(b[g] * set.w_ic.back().w);
    }
    set.w_oc = outer_common_precoder(b, h_eff_hat);
    return set;
}

double transmit_power(const PrecoderSet &precoders, const PowerSplit &split,
                      const std::vector<arma::uword> &users_per_group)
{
    const std::size_t groups = precoders.b.size();
    const double oc_norm = arma::norm(precoders.w_oc);
    double power = split.outer_common_power() * oc_norm * oc_norm;
    for (std::size_t g = 0; g < groups; ++g)
    {
        const double ic_norm = arma::norm(precoders.lifted_w_ic[g]);
        power += split.inner_common_power(groups) * ic_norm * ic_norm;
        power += split.private_power(groups, users_per_group[g]) *
                 arma::accu(arma::square(arma::abs(precoders.w[g].lifted_w)));
    }
    return power;
}

} // namespace hrs
