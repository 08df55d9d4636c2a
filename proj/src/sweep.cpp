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

#include "hrs/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hrs/common.hpp"
#include "hrs/power_alloc.hpp"

namespace hrs {

namespace {

using clock_type = std::chrono::steady_clock;

long elapsed_ms(clock_type::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(clock_type::now() - start)
        .count();
}

SweepRow make_row(const Scenario &scenario, const std::string &scheme, double snr_db,
                  const RateReport &rep, double alpha, double beta)
{
    SweepRow row;
    row.scenario = scenario.config.name;
    row.scheme = scheme;
    row.snr_db = snr_db;
    row.alpha = alpha;
    row.beta = beta;
    row.r_oc = rep.r_oc;
    row.r_ic = rep.r_ic;
    row.r_p = rep.r_p;
    row.r_sum = rep.r_sum;
    row.stderr_sum = rep.stderr_sum;
    row.n_draws = rep.n_draws;
    return row;
}

bool wants(const ScenarioConfig &config, const std::string &scheme)
{
    return std::find(config.schemes.begin(), config.schemes.end(), scheme) !=
           config.schemes.end();
}

} // namespace

SweepResult run_sweep(const Scenario &scenario)
{
    const ScenarioConfig &cfg = scenario.config;
    cfg.validate();

    // The closed-form coefficients are long-term quantities, shared by all
    // SNR points.
    const InterferenceSummary summary = interference_summary(
        scenario.rbar, cfg.tau2, cfg.groups, static_cast<double>(cfg.users_per_group()),
        static_cast<double>(cfg.b), cfg.gamma_form);

    SweepResult result;
    const bool any_mc = wants(cfg, "TTP") || wants(cfg, "Baseline2") || wants(cfg, "Baseline3") ||
                        wants(cfg, "HRS_CLF") || wants(cfg, "HRS_EXS");

    for (double snr_db : cfg.snr_db)
    {
        const auto t_start = clock_type::now();
        const double p = std::pow(10.0, snr_db / 10.0);

        DetEquivConfig de_cfg;
        de_cfg.kbar = static_cast<double>(cfg.users_per_group());
        de_cfg.bbar = static_cast<double>(cfg.b);
        de_cfg.eps = scenario.regularization(p);
        de_cfg.tau2 = cfg.tau2;
        de_cfg.p = p;
        de_cfg.groups = cfg.groups;
        const DetEquiv de = assemble_det_equiv(scenario.rbar, de_cfg);

        PowerSplit clf;
        switch (cfg.power_mode)
        {
        case PowerMode::kClosedForm:
        case PowerMode::kExhaustive:
            clf = closed_form_split(summary, p, static_cast<double>(cfg.k), de_cfg.kbar);
            break;
        case PowerMode::kFixed:
            clf.alpha = cfg.fixed_alpha;
            clf.beta = cfg.fixed_beta;
            clf.total = p;
            break;
        }

        std::vector<DrawTables> tables;
        if (any_mc)
            tables = build_all_tables(scenario, p, cfg.n_draws, cfg.seed, cfg.threads);

        if (wants(cfg, "TTP"))
        {
            RateReport rep = reduce_ttp(tables, scenario, p);
            SweepRow row = make_row(scenario, "TTP", snr_db, rep, 1.0, 1.0);
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
        if (wants(cfg, "Baseline2"))
        {
            RateReport rep = reduce_scheduled(tables, scenario, p, SchedulingLevel::kGroup);
            SweepRow row = make_row(scenario, "Baseline2", snr_db, rep, 1.0, 1.0);
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
        if (wants(cfg, "Baseline3"))
        {
            RateReport rep = reduce_scheduled(tables, scenario, p, SchedulingLevel::kSystem);
            SweepRow row = make_row(scenario, "Baseline3", snr_db, rep, 1.0, 1.0);
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
        if (wants(cfg, "HRS_CLF"))
        {
            RateReport rep = reduce_hrs(tables, scenario, clf, "HRS_CLF");
            SweepRow row = make_row(scenario, "HRS_CLF", snr_db, rep, clf.alpha, clf.beta);
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
        if (wants(cfg, "HRS_EXS"))
        {
            GridSearchResult search;
            if (cfg.objective == SearchObjective::kMonteCarlo)
                search = exhaustive_split(tables, scenario, p, cfg.grid_step, cfg.threads);
            else
                search = exhaustive_split(de, cfg.grid_step);
            RateReport rep = reduce_hrs(tables, scenario, search.split, "HRS_EXS");
            SweepRow row =
                make_row(scenario, "HRS_EXS", snr_db, rep, search.split.alpha, search.split.beta);
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
        if (wants(cfg, "HRS_DetEquiv"))
        {
            const AsymptoticRates asym = hrs_asymptotic_sinrs(de, clf);
            SweepRow row;
            row.scenario = cfg.name;
            row.scheme = "HRS_DetEquiv";
            row.snr_db = snr_db;
            row.alpha = clf.alpha;
            row.beta = clf.beta;
            row.r_oc = asym.r_oc;
            row.r_ic = asym.r_ic;
            row.r_p = asym.r_p;
            row.r_sum = asym.r_sum_hrs;
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
        if (wants(cfg, "TTP_DetEquiv"))
        {
            const AsymptoticRates asym = ttp_asymptotic_rate(de);
            SweepRow row;
            row.scenario = cfg.name;
            row.scheme = "TTP_DetEquiv";
            row.snr_db = snr_db;
            row.r_p = asym.r_sum_ttp;
            row.r_sum = asym.r_sum_ttp;
            row.wall_ms = cfg.timing ? elapsed_ms(t_start) : 0;
            result.rows.push_back(std::move(row));
        }
    }

    // Output ordering is (scheme, SNR) with schemes in configured order.
    std::map<std::string, std::size_t> scheme_rank;
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        scheme_rank[cfg.schemes[i]] = i;
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [&](const SweepRow &a, const SweepRow &b) {
                         const std::size_t ra = scheme_rank[a.scheme], rb = scheme_rank[b.scheme];
                         if (ra != rb)
                             return ra < rb;
                         return a.snr_db < b.snr_db;
                     });
    return result;
}

void emit_csv(const SweepResult &result, const std::string &path)
{
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw io_error("emit_csv: cannot open " + path);
    std::fprintf(f, "scenario,scheme,snr_db,alpha,beta,r_oc,r_ic,r_p,r_sum,stderr,n_draws,wall_ms\n");
    for (const auto &row : result.rows)
        std::fprintf(f, "%s,%s,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%zu,%ld\n",
                     row.scenario.c_str(), row.scheme.c_str(), row.snr_db, row.alpha, row.beta,
                     row.r_oc, row.r_ic, row.r_p, row.r_sum, row.stderr_sum, row.n_draws,
                     row.wall_ms);
    std::fclose(f);
}

SweepResult parse_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("parse_csv: cannot open " + path);

    SweepResult result;
    std::string line;
    if (!std::getline(in, line))
        throw io_error("parse_csv: empty file " + path);
    if (line != "scenario,scheme,snr_db,alpha,beta,r_oc,r_ic,r_p,r_sum,stderr,n_draws,wall_ms")
        throw io_error("parse_csv: unexpected header in " + path);

    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 12)
            throw io_error("parse_csv: malformed row '" + line + "'");
        SweepRow row;
        row.scenario = fields[0];
        row.scheme = fields[1];
        row.snr_db = std::stod(fields[2]);
        row.alpha = std::stod(fields[3]);
        row.beta = std::stod(fields[4]);
        row.r_oc = std::stod(fields[5]);
        row.r_ic = std::stod(fields[6]);
        row.r_p = std::stod(fields[7]);
        row.r_sum = std::stod(fields[8]);
        row.stderr_sum = std::stod(fields[9]);
        row.n_draws = static_cast<std::size_t>(std::stoull(fields[10]));
        row.wall_ms = std::stol(fields[11]);
        result.rows.push_back(std::move(row));
    }
    return result;
}

void emit_plot_data(const SweepResult &result, const std::string &directory)
{
    std::map<std::string, std::vector<const SweepRow *>> curves;
    for (const auto &row : result.rows)
        curves[row.scenario + "_" + row.scheme].push_back(&row);
    for (auto &[name, rows] : curves)
    {
        std::sort(rows.begin(), rows.end(),
                  [](const SweepRow *a, const SweepRow *b) { return a->snr_db < b->snr_db; });
        const std::string path = directory + "/" + name + ".dat";
        std::FILE *f = std::fopen(path.c_str(), "w");
        if (f == nullptr)
            throw io_error("emit_plot_data: cannot open " + path);
        std::fprintf(f, "# snr_db r_sum\n");
        for (const SweepRow *row : rows)
            std::fprintf(f, "%.6g %.6g\n", row->snr_db, row->r_sum);
        std::fclose(f);
    }
}

} // namespace hrs
