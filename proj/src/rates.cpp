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

#include "hrs/rates.hpp"

#include <cmath>

#include "hrs/common.hpp"

namespace hrs {

namespace {

double sq_abs(const arma::cx_double &z) { return z.real() * z.real() + z.imag() * z.imag(); }

double log2_1p(double x) { return std::log2(1.0 + x); }

} // namespace

DrawTables build_draw_tables(const ChannelDraw &draw, const PrecoderSet &precoders)
{
    const std::size_t groups = precoders.b.size();
    arma::uword total_users = 0, total_streams = 0;
    for (std::size_t g = 0; g < groups; ++g)
    {
        total_users += draw.h[g].n_cols;
        total_streams += precoders.w[g].w.n_cols;
    }

    DrawTables t;
    t.group_of.resize(total_users);
    t.index_in_group.resize(total_users);
    t.p_full.set_size(total_users, total_streams);
    t.ic_full.set_size(total_users, groups);
    t.oc.set_size(total_users);

    // Stream offsets per group in the flattened stream axis.
    std::vector<arma::uword> stream_offset(groups, 0);
    for (std::size_t l = 1; l < groups; ++l)
        stream_offset[l] = stream_offset[l - 1] + precoders.w[l - 1].w.n_cols;

    arma::uword u = 0;
    for (std::size_t g = 0; g < groups; ++g)
    {
        for (arma::uword k = 0; k < draw.h[g].n_cols; ++k, ++u)
        {
            const arma::cx_vec h = draw.h[g].col(k);
            t.group_of[u] = g;
            t.index_in_group[u] = k;
            t.oc(u) = sq_abs(arma::cdot(h, precoders.w_oc));
            for (std::size_t l = 0; l < groups; ++l)
            {
                t.ic_full(u, l) = sq_abs(arma::cdot(h, precoders.lifted_w_ic[l]));
                const arma::cx_mat &bw = precoders.w[l].lifted_w;
                for (arma::uword j = 0; j < bw.n_cols; ++j)
                    t.p_full(u, stream_offset[l] + j) = sq_abs(arma::cdot(h, bw.col(j)));
            }
        }
    }

    // Scheduled baselines: select per group by the estimated effective gain.
    t.selected.set_size(groups, 1);
    std::vector<arma::cx_vec> sched_beam(groups);
    double best_gain = -1.0;
    std::size_t best_group = 0;
    arma::uword best_user = 0;
    for (std::size_t g = 0; g < groups; ++g)
    {
        const arma::cx_mat eff = precoders.b[g].t() * draw.h_hat[g];
        arma::uword k_star = 0;
        double gain = -1.0;
        for (arma::uword k = 0; k < eff.n_cols; ++k)
        {
            const double cand = arma::norm(eff.col(k));
            if (cand > gain)
            {
                gain = cand;
                k_star = k;
            }
        }
        t.selected(g, 0) = k_star;
        sched_beam[g] = precoders.b[g] * arma::cx_vec(eff.col(k_star) / arma::norm(eff.col(k_star)));
        if (gain > best_gain)
        {
            best_gain = gain;
            best_group = g;
            best_user = k_star;
        }
    }
    t.sched_cross.set_size(groups, groups);
    for (std::size_t g = 0; g < groups; ++g)
    {
        const arma::cx_vec h = draw.h[g].col(t.selected(g, 0));
        for (std::size_t l = 0; l < groups; ++l)
            t.sched_cross(g, l) = sq_abs(arma::cdot(h, sched_beam[l]));
    }
    t.b3_gain = sq_abs(arma::cdot(draw.h[best_group].col(best_user), sched_beam[best_group]));
    return t;
}

SinrTable hrs_sinrs_from_tables(const DrawTables &tables, std::size_t groups,
                                const std::vector<arma::uword> &users_per_group,
                                const PowerSplit &split)
{
    SinrTable out;
    out.scheme = "HRS";
    out.oc.resize(groups);
    out.ic.resize(groups);
    out.p.resize(groups);
    for (std::size_t g = 0; g < groups; ++g)
    {
        out.oc[g].set_size(users_per_group[g]);
        out.ic[g].set_size(users_per_group[g]);
        out.p[g].set_size(users_per_group[g]);
    }

    const double p_oc = split.outer_common_power();
    std::vector<double> p_ic(groups), p_priv(groups);
    std::vector<arma::uword> stream_offset(groups, 0);
    for (std::size_t l = 0; l < groups; ++l)
    {
        p_ic[l] = split.inner_common_power(groups);
        p_priv[l] = split.private_power(groups, users_per_group[l]);
        if (l > 0)
            stream_offset[l] = stream_offset[l - 1] + users_per_group[l - 1];
    }

    const arma::uword total_users = tables.oc.n_elem;
    for (arma::uword u = 0; u < total_users; ++u)
    {
        const std::size_t g = tables.group_of[u];
        const arma::uword k = tables.index_in_group[u];

        double in = 1.0;
        for (std::size_t l = 0; l < groups; ++l)
        {
            in += p_ic[l] * tables.ic_full(u, l);
            double streams = 0.0;
            for (arma::uword j = 0; j < users_per_group[l]; ++j)
                streams += tables.p_full(u, stream_offset[l] + j);
            in += p_priv[l] * streams;
        }

        const double own_ic = p_ic[g] * tables.ic_full(u, g);
        const double own_p = p_priv[g] * tables.p_full(u, stream_offset[g] + k);
        out.oc[g](k) = p_oc * tables.oc(u) / in;
        out.ic[g](k) = own_ic / (in - own_ic);
        out.p[g](k) = own_p / (in - own_ic - own_p);
    }
    return out;
}

SinrTable hrs_sinrs(const ChannelDraw &draw, const PrecoderSet &precoders, const PowerSplit &split)
{
    std::vector<arma::uword> users(draw.h.size());
    for (std::size_t g = 0; g < draw.h.size(); ++g)
        users[g] = draw.h[g].n_cols;
    return hrs_sinrs_from_tables(build_draw_tables(draw, precoders), precoders.b.size(), users,
                                 split);
}

RateReport hrs_rates(const SinrTable &table)
{
    RateReport rep;
    rep.scheme = table.scheme;
    const std::size_t groups = table.oc.size();
    rep.r_ic_group.set_size(groups);
    rep.r_p_user.resize(groups);

    double oc_min = arma::datum::inf;
    for (std::size_t g = 0; g < groups; ++g)
    {
        oc_min = std::min(oc_min, table.oc[g].min());
        rep.r_ic_group(g) = log2_1p(table.ic[g].min());
        rep.r_p_user[g] = arma::log2(1.0 + table.p[g]);
        rep.r_p += arma::accu(rep.r_p_user[g]);
    }
    rep.r_oc = log2_1p(oc_min);
    rep.r_ic = arma::accu(rep.r_ic_group);
    rep.r_sum = rep.r_oc + rep.r_ic + rep.r_p;
    return rep;
}

RateReport ttp_rates(const ChannelDraw &draw, const PrecoderSet &precoders, double p)
{
    // Two-tier broadcast is the alpha = beta = 1 point of the splitting
    // kernel: zero common power and uniform P/K per stream.
    PowerSplit full;
    full.alpha = 1.0;
    full.beta = 1.0;
    full.total = p;
    SinrTable table = hrs_sinrs(draw, precoders, full);
    table.scheme = "TTP";
    RateReport rep = hrs_rates(table);
    rep.r_oc = 0.0;
    rep.r_ic_group.zeros();
    rep.r_ic = 0.0;
    rep.r_sum = rep.r_p;
    return rep;
}

RateReport scheduled_rates(const ChannelDraw &draw, const PrecoderSet &precoders, double p,
                           SchedulingLevel level)
{
    const DrawTables tables = build_draw_tables(draw, precoders);
    const std::size_t groups = precoders.b.size();

    RateReport rep;
    rep.scheme = (level == SchedulingLevel::kGroup) ? "Baseline2" : "Baseline3";
    rep.r_ic_group.zeros(groups);
    rep.r_p_user.resize(groups);
    for (std::size_t g = 0; g < groups; ++g)
        rep.r_p_user[g].zeros(1);

    if (level == SchedulingLevel::kGroup)
    {
        const double share = p / static_cast<double>(groups);
        for (std::size_t g = 0; g < groups; ++g)
        {
            double interference = 1.0;
            for (std::size_t l = 0; l < groups; ++l)
                if (l != g)
                    interference += share * tables.sched_cross(g, l);
            const double rate = log2_1p(share * tables.sched_cross(g, g) / interference);
            rep.r_p_user[g](0) = rate;
            rep.r_p += rate;
        }
    }
    else
    {
        rep.r_p = log2_1p(p * tables.b3_gain);
        rep.r_p_user[0](0) = rep.r_p;
    }
    rep.r_sum = rep.r_p;
    return rep;
}

namespace {

struct Accumulator
{
    RateReport mean;
    double sum_sq = 0.0;
    std::size_t count = 0;

    void init_like(const RateReport &rep)
    {
        mean = rep;
        mean.r_oc = 0.0;
        mean.r_ic_group.zeros();
        mean.r_ic = 0.0;
        for (auto &v : mean.r_p_user)
            v.zeros();
        mean.r_p = 0.0;
        mean.r_sum = 0.0;
    }

    void add(const RateReport &rep)
    {
        if (count == 0)
            init_like(rep);
        mean.r_oc += rep.r_oc;
        mean.r_ic_group += rep.r_ic_group;
        mean.r_ic += rep.r_ic;
        for (std::size_t g = 0; g < rep.r_p_user.size(); ++g)
            mean.r_p_user[g] += rep.r_p_user[g];
        mean.r_p += rep.r_p;
        mean.r_sum += rep.r_sum;
        sum_sq += rep.r_sum * rep.r_sum;
        ++count;
    }

    RateReport finish(const std::string &scheme)
    {
        const double n = static_cast<double>(count);
        mean.r_oc /= n;
        mean.r_ic_group /= n;
        mean.r_ic /= n;
        for (auto &v : mean.r_p_user)
            v /= n;
        mean.r_p /= n;
        mean.r_sum /= n;
        mean.scheme = scheme;
        mean.n_draws = count;
        const double var = std::max(0.0, sum_sq / n - mean.r_sum * mean.r_sum);
        mean.stderr_sum = (count > 1) ? std::sqrt(var / (n - 1.0)) : 0.0;
        return mean;
    }
};

} // namespace

std::vector<DrawTables> build_all_tables(const Scenario &scenario, double p, std::size_t n_draws,
                                         std::uint64_t base_seed, unsigned threads)
{
    const double eps = scenario.regularization(p);
    const auto users = scenario.users();
    std::vector<DrawTables> tables(n_draws);
    parallel_for(n_draws, threads, [&](std::size_t d) {
        const ChannelDraw draw = sample_draw(scenario.stats, users, draw_seed(base_seed, d));
        const PrecoderSet pre = build_precoders(scenario.outer, draw, eps);
        tables[d] = build_draw_tables(draw, pre);
    });
    return tables;
}

RateReport reduce_hrs(const std::vector<DrawTables> &tables, const Scenario &scenario,
                      const PowerSplit &split, const std::string &scheme_name)
{
    const auto users = scenario.users();
    Accumulator acc;
    for (const auto &t : tables)
        acc.add(hrs_rates(hrs_sinrs_from_tables(t, scenario.config.groups, users, split)));
    return acc.finish(scheme_name);
}

RateReport reduce_ttp(const std::vector<DrawTables> &tables, const Scenario &scenario, double p)
{
    PowerSplit full;
    full.total = p;
    const auto users = scenario.users();
    Accumulator acc;
    for (const auto &t : tables)
    {
        RateReport rep = hrs_rates(hrs_sinrs_from_tables(t, scenario.config.groups, users, full));
        rep.r_oc = 0.0;
        rep.r_ic_group.zeros();
        rep.r_ic = 0.0;
        rep.r_sum = rep.r_p;
        acc.add(rep);
    }
    return acc.finish("TTP");
}

RateReport reduce_scheduled(const std::vector<DrawTables> &tables, const Scenario &scenario,
                            double p, SchedulingLevel level)
{
    const std::size_t groups = scenario.config.groups;
    Accumulator acc;
    for (const auto &t : tables)
    {
        RateReport rep;
        rep.scheme = (level == SchedulingLevel::kGroup) ? "Baseline2" : "Baseline3";
        rep.r_ic_group.zeros(groups);
        rep.r_p_user.resize(groups);
        for (std::size_t g = 0; g < groups; ++g)
            rep.r_p_user[g].zeros(1);
        if (level == SchedulingLevel::kGroup)
        {
            const double share = p / static_cast<double>(groups);
            for (std::size_t g = 0; g < groups; ++g)
            {
                double interference = 1.0;
                for (std::size_t l = 0; l < groups; ++l)
                    if (l != g)
                        interference += share * t.sched_cross(g, l);
                const double rate = log2_1p(share * t.sched_cross(g, g) / interference);
                rep.r_p_user[g](0) = rate;
                rep.r_p += rate;
            }
        }
        else
        {
            rep.r_p = log2_1p(p * t.b3_gain);
            rep.r_p_user[0](0) = rep.r_p;
        }
        rep.r_sum = rep.r_p;
        acc.add(rep);
    }
    return acc.finish(level == SchedulingLevel::kGroup ? "Baseline2" : "Baseline3");
}

RateReport monte_carlo(const Scenario &scenario, McScheme scheme, const PowerSplit &split,
                       std::size_t n_draws, std::uint64_t base_seed, unsigned threads)
{
    if (n_draws < 1)
        throw config_error("monte_carlo: n_draws must be >= 1");

    const auto tables = build_all_tables(scenario, split.total, n_draws, base_seed, threads);
    switch (scheme)
    {
    case McScheme::kHrs:
        return reduce_hrs(tables, scenario, split, "HRS");
    case McScheme::kTtp:
        return reduce_ttp(tables, scenario, split.total);
    case McScheme::kBaseline2:
        return reduce_scheduled(tables, scenario, split.total, SchedulingLevel::kGroup);
    case McScheme::kBaseline3:
        return reduce_scheduled(tables, scenario, split.total, SchedulingLevel::kSystem);
    }
    throw config_error("monte_carlo: unknown scheme");
}

} // namespace hrs
