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

#include "hrs/power_alloc.hpp"

#include <cmath>

#include "hrs/common.hpp"

namespace hrs {

namespace {

double real_trace(const arma::cx_mat &a) { return arma::trace(a).real(); }

/// Solves (1/b) sum_i lam_i / ((Kbar/b) lam_i + mu) = 1 for mu >= 0 by
/// bisection. The left side decreases from b/Kbar (as mu -> 0) to 0, so a
/// root exists whenever the spectrum is not identically zero and b > Kbar;
/// for b <= Kbar the root is mu = 0 (the literal regime).
double zf_limit_mu(const arma::vec &lam, double kbar, double bbar)
{
    const auto excess = [&](double mu) {
        double s = 0.0;
        for (arma::uword i = 0; i < lam.n_elem; ++i)
            s += lam(i) / ((kbar / bbar) * lam(i) + mu);
        return s / bbar - 1.0;
    };
    double lo = 0.0, hi = arma::accu(lam) / bbar; // excess(hi) < 0
    if (excess(1e-14) <= 0.0)
        return 0.0;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

InterferenceSummary interference_summary(const std::vector<std::vector<arma::cx_mat>> &rbar,
                                         double tau2, std::size_t groups, double kbar, double bbar,
                                         SpectralForm form)
{
    InterferenceSummary out;
    out.form = form;
    out.per_group_inter.set_size(groups);
    out.per_group_intra.set_size(groups);

    if (form == SpectralForm::kLiteral)
    {
        std::vector<arma::cx_mat> inv_own(groups);
        std::vector<double> trace_inv(groups);
        for (std::size_t l = 0; l < groups; ++l)
        {
            const double rcond = arma::rcond(rbar[l][l]);
            if (!(rcond > 1e-14))
                throw config_error(
                    "interference_summary: Rbar_ll is numerically singular (group " +
                    std::to_string(l + 1) + "); b_g exceeds the effective rank");
            inv_own[l] = arma::inv(rbar[l][l]);
            trace_inv[l] = real_trace(inv_own[l]);
        }
        for (std::size_t g = 0; g < groups; ++g)
        {
            double inter = 0.0;
            for (std::size_t l = 0; l < groups; ++l)
                if (l != g)
                    inter += (1.0 / static_cast<double>(groups)) *
                             real_trace(rbar[g][l] * inv_own[l]) / trace_inv[l];
            out.per_group_inter(g) = inter;
            out.per_group_intra(g) = (tau2 / static_cast<double>(groups)) *
                                     (bbar / trace_inv[g]) * (kbar - 1.0) / kbar;
        }
    }
    else
    {
        std::vector<arma::cx_mat> t_hat(groups);
        std::vector<double> s2(groups);
        for (std::size_t l = 0; l < groups; ++l)
        {
            arma::vec lam;
            arma::cx_mat v;
            if (!arma::eig_sym(lam, v, rbar[l][l]))
                throw invalid_input_error("interference_summary: eigensolver failed");
            lam.transform([](double x) { return std::max(x, 0.0); });
            const double mu = zf_limit_mu(lam, kbar, bbar);
            arma::cx_mat a = (kbar / bbar) * rbar[l][l];
            a.diag() += mu;
            if (!(arma::rcond(a) > 1e-14))
                throw config_error(
                    "interference_summary: Rbar_ll is numerically singular (group " +
                    std::to_string(l + 1) + "); b_g exceeds the effective rank");
            t_hat[l] = arma::inv(a);
            s2[l] = real_trace(rbar[l][l] * t_hat[l] * t_hat[l]);
        }
        for (std::size_t g = 0; g < groups; ++g)
        {
            const double s2p = real_trace(rbar[g][g] * t_hat[g] * rbar[g][g] * t_hat[g]);
            out.per_group_intra(g) = (tau2 / static_cast<double>(groups)) * (s2p / s2[g]) *
                                     (kbar - 1.0) / kbar;
            double inter = 0.0;
            for (std::size_t l = 0; l < groups; ++l)
                if (l != g)
                    inter += (1.0 / static_cast<double>(groups)) *
                             real_trace(rbar[l][l] * t_hat[l] * rbar[g][l] * t_hat[l]) / s2[l];
            out.per_group_inter(g) = inter;
        }
    }

    // Residual negative dust from nearly-vanishing cross covariances.
    out.per_group_inter.transform([](double x) { return std::max(x, 0.0); });
    out.inter_group = out.per_group_inter.min();
    out.intra_group = out.per_group_intra.min();
    return out;
}

PowerSplit closed_form_split(const InterferenceSummary &summary, double p, double k_total,
                             double kbar)
{
    if (p <= 0.0)
        throw config_error("closed_form_split: total power must be > 0");

    PowerSplit split;
    split.total = p;
    split.alpha = (summary.intra_group <= 0.0)
                      ? 1.0
                      : std::min(kbar / (p * summary.intra_group), 1.0);
    split.beta = (summary.inter_group <= 0.0)
                     ? std::min(k_total / kbar, 1.0)
                     : std::min(k_total / (p * summary.inter_group + kbar), 1.0);
    if (split.beta < 1.0)
        split.alpha = 1.0;
    return split;
}

GridSearchResult exhaustive_split(const DetEquiv &de, double grid_step)
{
    if (grid_step <= 0.0 || grid_step > 0.5)
        throw config_error("exhaustive_split: grid_step must lie in (0, 0.5]");

    const int n = static_cast<int>(std::round(1.0 / grid_step));
    GridSearchResult best;
    best.objective = -arma::datum::inf;

    PowerSplit split;
    split.total = de.config.p;
    for (int ia = 1; ia <= n; ++ia)
    {
        for (int ib = 1; ib <= n; ++ib)
        {
            split.alpha = std::min(1.0, ia * grid_step);
            split.beta = std::min(1.0, ib * grid_step);
            const double value = hrs_asymptotic_sinrs(de, split).r_sum_hrs;
            // Ties break toward larger alpha, then larger beta; scanning in
            // ascending order with >= achieves exactly that.
            if (value >= best.objective)
            {
                best.objective = value;
                best.split = split;
            }
        }
    }
    return best;
}

GridSearchResult exhaustive_split(const std::vector<DrawTables> &tables, const Scenario &scenario,
                                  double p, double grid_step, unsigned threads)
{
    if (grid_step <= 0.0 || grid_step > 0.5)
        throw config_error("exhaustive_split: grid_step must lie in (0, 0.5]");
    if (tables.empty())
        throw config_error("exhaustive_split: no draws supplied");

    const int n = static_cast<int>(std::round(1.0 / grid_step));
    const std::size_t groups = scenario.config.groups;
    const auto users = scenario.users();
    const arma::uword total_users = scenario.config.k;

    // Flat per-(draw, user) records so the grid loop runs without
    // allocations: [oc, ic_own, p_own, ic_group_sum(G), p_group_sum(G)].
    const std::size_t stride = 3 + 2 * groups;
    std::vector<double> flat(tables.size() * total_users * stride);
    std::vector<arma::uword> group_of(total_users);
    std::vector<arma::uword> stream_offset(groups, 0);
    for (std::size_t l = 1; l < groups; ++l)
        stream_offset[l] = stream_offset[l - 1] + users[l - 1];
    for (std::size_t d = 0; d < tables.size(); ++d)
    {
        const DrawTables &t = tables[d];
        for (arma::uword u = 0; u < total_users; ++u)
        {
            const std::size_t g = t.group_of[u];
            group_of[u] = g;
            double *rec = &flat[(d * total_users + u) * stride];
            rec[0] = t.oc(u);
            rec[1] = t.ic_full(u, g);
            rec[2] = t.p_full(u, stream_offset[g] + t.index_in_group[u]);
            for (std::size_t l = 0; l < groups; ++l)
            {
                rec[3 + l] = t.ic_full(u, l);
                double streams = 0.0;
                for (arma::uword j = 0; j < users[l]; ++j)
                    streams += t.p_full(u, stream_offset[l] + j);
                rec[3 + groups + l] = streams;
            }
        }
    }

    std::vector<double> objective(static_cast<std::size_t>(n) * n);
    parallel_for(static_cast<std::size_t>(n) * n, threads, [&](std::size_t idx) {
        const int ia = static_cast<int>(idx / n) + 1;
        const int ib = static_cast<int>(idx % n) + 1;
        PowerSplit split;
        split.total = p;
        split.alpha = std::min(1.0, ia * grid_step);
        split.beta = std::min(1.0, ib * grid_step);
        const double p_oc = split.outer_common_power();
        const double p_ic = split.inner_common_power(groups);
        std::vector<double> p_priv(groups), ic_minima(groups);
        for (std::size_t l = 0; l < groups; ++l)
            p_priv[l] = split.private_power(groups, users[l]);

        double sum = 0.0;
        for (std::size_t d = 0; d < tables.size(); ++d)
        {
            double oc_min = arma::datum::inf;
            std::fill(ic_minima.begin(), ic_minima.end(), arma::datum::inf);
            double r_p = 0.0;
            const double *draw_base = &flat[d * total_users * stride];
            for (arma::uword u = 0; u < total_users; ++u)
            {
                const double *rec = draw_base + u * stride;
                const std::size_t g = group_of[u];
                double in = 1.0;
                for (std::size_t l = 0; l < groups; ++l)
                    in += p_ic * rec[3 + l] + p_priv[l] * rec[3 + groups + l];
                const double own_ic = p_ic * rec[1];
                const double own_p = p_priv[g] * rec[2];
                oc_min = std::min(oc_min, p_oc * rec[0] / in);
                ic_minima[g] = std::min(ic_minima[g], own_ic / (in - own_ic));
                r_p += std::log2(1.0 + own_p / (in - own_ic - own_p));
            }
            double r = std::log2(1.0 + oc_min) + r_p;
            for (std::size_t g = 0; g < groups; ++g)
                r += std::log2(1.0 + ic_minima[g]);
            sum += r;
        }
        objective[idx] = sum / static_cast<double>(tables.size());
    });

    GridSearchResult best;
    best.objective = -arma::datum::inf;
    for (int ia = 1; ia <= n; ++ia)
    {
        for (int ib = 1; ib <= n; ++ib)
        {
            const double value = objective[static_cast<std::size_t>(ia - 1) * n + (ib - 1)];
            if (value >= best.objective)
            {
                best.objective = value;
                best.split.alpha = std::min(1.0, ia * grid_step);
                best.split.beta = std::min(1.0, ib * grid_step);
                best.split.total = p;
            }
        }
    }
    return best;
}

} // namespace hrs
