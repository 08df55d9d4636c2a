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

#include "hrs/det_equiv.hpp"

#include <cstdio>

#include "hrs/common.hpp"

namespace hrs {

namespace {

arma::cx_mat resolvent(const arma::cx_mat &rbar, double kbar, double bbar, double eps, double m)
{
    arma::cx_mat a = (kbar / bbar / (1.0 + m)) * rbar;
    a.diag() += eps;
    return arma::inv(a);
}

double real_trace(const arma::cx_mat &a) { return arma::trace(a).real(); }

} // namespace

FixedPoint solve_fixed_point(const arma::cx_mat &rbar, double kbar, double bbar, double eps,
                             double tol, int max_iter, double start)
{
    if (eps <= 0.0)
        throw config_error("solve_fixed_point: regularization must be > 0");

    double m = start;
    for (int it = 1; it <= max_iter; ++it)
    {
        const arma::cx_mat t = resolvent(rbar, kbar, bbar, eps, m);
        const double next = real_trace(rbar * t) / bbar;
        const double dm = std::abs(next - m);
        m = next;
        if (dm <= tol)
        {
            FixedPoint fp;
            fp.m = m;
            fp.t = resolvent(rbar, kbar, bbar, eps, m);
            fp.iterations = it;
            fp.residual = std::abs(real_trace(rbar * fp.t) / bbar - m);
            return fp;
        }
    }
    const arma::cx_mat t = resolvent(rbar, kbar, bbar, eps, m);
    throw convergence_error("solve_fixed_point: no convergence after " +
                            std::to_string(max_iter) + " iterations (residual " +
                            std::to_string(std::abs(real_trace(rbar * t) / bbar - m)) + ")");
}

DetEquiv assemble_det_equiv(const std::vector<std::vector<arma::cx_mat>> &rbar,
                            const DetEquivConfig &config)
{
    const std::size_t groups = config.groups;
    if (rbar.size() != groups)
        throw config_error("assemble_det_equiv: rbar must be G x G");

    DetEquiv de;
    de.config = config;
    de.rbar = rbar;
    de.m.set_size(groups);
    de.m_prime.set_size(groups);
    de.m_cross.set_size(groups, groups);
    de.psi.set_size(groups);
    de.xi_sq.set_size(groups);
    de.phi.set_size(groups);
    de.upsilon.set_size(groups, groups);
    de.kappa.set_size(groups);
    de.omega.set_size(groups);
    de.t.resize(groups);

    const double kbar = config.kbar;
    const double bbar = config.bbar;

    // Per-group fixed points; they couple only through the inputs.
    for (std::size_t g = 0; g < groups; ++g)
    {
        FixedPoint fp = solve_fixed_point(rbar[g][g], kbar, bbar, config.eps);
        de.m(g) = fp.m;
        de.t[g] = std::move(fp.t);
    }

    // Derivative denominators are shared between m' and the cross terms of
    // the same column group.
    arma::vec denom(groups);
    for (std::size_t l = 0; l < groups; ++l)
    {
        const arma::cx_mat rt = rbar[l][l] * de.t[l];
        const double trace_rtrt = real_trace(rt * rt);
        denom(l) = 1.0 - (kbar / bbar) * trace_rtrt / (bbar * (1.0 + de.m(l)) * (1.0 + de.m(l)));
        if (denom(l) <= 0.0)
            throw instability_error(
                "assemble_det_equiv: derivative denominator is not positive for group " +
                std::to_string(l + 1));
    }

    for (std::size_t g = 0; g < groups; ++g)
    {
        // With orthonormal outer precoders B^H B = I, the m' numerator
        // reduces to (1/b) tr(Rbar T^2).
        de.m_prime(g) = (real_trace(rbar[g][g] * de.t[g] * de.t[g]) / bbar) / denom(g);
        for (std::size_t l = 0; l < groups; ++l)
            de.m_cross(g, l) =
                (real_trace(rbar[l][l] * de.t[l] * rbar[g][l] * de.t[l]) / bbar) / denom(l);
    }

    double sum_traces = 0.0;
    for (std::size_t l = 0; l < groups; ++l)
        sum_traces += real_trace(rbar[l][l]);

    for (std::size_t g = 0; g < groups; ++g)
    {
        const double one_m = 1.0 + de.m(g);
        de.psi(g) = (kbar / bbar) * de.m_prime(g) / (one_m * one_m);
        de.xi_sq(g) = kbar / de.psi(g);
        de.phi(g) = (1.0 - config.tau2) * de.m(g) * de.m(g) / (one_m * one_m);
        de.omega(g) = ((kbar - 1.0) / kbar) * (1.0 - config.tau2 * (1.0 - one_m * one_m)) /
                      (one_m * one_m);
        const double tr_own = real_trace(rbar[g][g]);
        de.kappa(g) = tr_own * tr_own / (kbar * sum_traces);
        for (std::size_t l = 0; l < groups; ++l)
        {
            const double one_ml = 1.0 + de.m(l);
            de.upsilon(g, l) = (config.p / static_cast<double>(groups)) * de.m_cross(g, l) /
                               (bbar * one_ml * one_ml);
        }
    }
    return de;
}

AsymptoticRates hrs_asymptotic_sinrs(const DetEquiv &de, const PowerSplit &split)
{
    const std::size_t groups = de.config.groups;
    const double k_total = de.config.kbar * static_cast<double>(groups);
    const double p = de.config.p;
    const double alpha = split.alpha;
    const double beta = split.beta;

    AsymptoticRates out;
    out.alpha = alpha;
    out.beta = beta;
    out.sinr_oc.set_size(groups);
    out.sinr_ic.set_size(groups);
    out.sinr_p.set_size(groups);
    out.sinr_ttp.set_size(groups);

    for (std::size_t g = 0; g < groups; ++g)
    {
        double inter = 0.0;
        for (std::size_t l = 0; l < groups; ++l)
            if (l != g)
                inter += de.xi_sq(l) * de.upsilon(g, l);
        const double own = de.xi_sq(g) * de.upsilon(g, g) * de.omega(g);
        const double sig = (p / k_total) * de.xi_sq(g) * de.phi(g);

        out.sinr_oc(g) = de.kappa(g) * p * (1.0 - beta) * (1.0 - de.config.tau2) /
                         (beta * (inter + own + sig) + 1.0);
        const double group_load = de.xi_sq(g) * (de.upsilon(g, g) * de.omega(g) +
                                                 (p / k_total) * de.phi(g));
        out.sinr_ic(g) =
            beta * (1.0 - alpha) * group_load / (beta * inter + beta * alpha * group_load + 1.0);
        out.sinr_p(g) = beta * alpha * sig / (beta * inter + beta * alpha * own + 1.0);
        out.sinr_ttp(g) = sig / (inter + own + 1.0);
    }

    out.r_oc = std::log2(1.0 + out.sinr_oc.min());
    out.r_ic = arma::accu(arma::log2(1.0 + out.sinr_ic));
    out.r_p = de.config.kbar * arma::accu(arma::log2(1.0 + out.sinr_p));
    out.r_sum_hrs = out.r_oc + out.r_ic + out.r_p;
    out.r_sum_ttp = de.config.kbar * arma::accu(arma::log2(1.0 + out.sinr_ttp));
    out.gain = out.r_sum_hrs - out.r_sum_ttp;
    return out;
}

AsymptoticRates ttp_asymptotic_rate(const DetEquiv &de)
{
    PowerSplit full;
    full.alpha = 1.0;
    full.beta = 1.0;
    full.total = de.config.p;
    return hrs_asymptotic_sinrs(de, full);
}

void export_det_equiv_csv(const DetEquiv &de, const std::string &path)
{
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw io_error("export_det_equiv_csv: cannot open " + path);
    std::fprintf(f, "g,l,m,m_prime,psi,xi_sq,phi,kappa,omega,m_cross,upsilon\n");
    for (std::size_t g = 0; g < de.config.groups; ++g)
        for (std::size_t l = 0; l < de.config.groups; ++l)
            std::fprintf(f, "%zu,%zu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                         g + 1, l + 1, de.m(g), de.m_prime(g), de.psi(g), de.xi_sq(g), de.phi(g),
                         de.kappa(g), de.omega(g), de.m_cross(g, l), de.upsilon(g, l));
    std::fclose(f);
}

} // namespace hrs
