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

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrs/power_alloc.hpp"
#include "hrs/sweep.hpp"

namespace {

struct CommonOptions
{
    std::string config_path;
    std::string scenario_name;
    std::string snr_list;
    std::string scheme_list;
    std::string gamma_form;
    std::string power_mode;
    std::string objective;
    long draws = -1;
    long long seed = -1;
    double grid_step = -1.0;
    double alpha = -1.0;
    double beta = -1.0;
    long threads = -1;
    bool timing = false;
};

void add_common(CLI::App *cmd, CommonOptions &opt)
{
    cmd->add_option("--config", opt.config_path, "scenario config file (key = value lines)");
    cmd->add_option("--scenario", opt.scenario_name, "disjoint, overlap, or custom");
    cmd->add_option("--snr", opt.snr_list, "comma-separated SNR list in dB");
    cmd->add_option("--draws", opt.draws, "Monte Carlo draws per SNR point");
    cmd->add_option("--seed", opt.seed, "base RNG seed");
    cmd->add_option("--scheme", opt.scheme_list, "comma-separated scheme list");
    cmd->add_option("--grid-step", opt.grid_step, "exhaustive-search grid step");
    cmd->add_option("--gamma-form", opt.gamma_form,
                    "closed-form coefficient evaluation: zf_limit (default) or literal");
    cmd->add_option("--power-mode", opt.power_mode, "closed_form, exhaustive, or fixed");
    cmd->add_option("--objective", opt.objective,
                    "exhaustive-search objective: detequiv or monte_carlo");
    cmd->add_option("--alpha", opt.alpha, "fixed alpha for power-mode fixed");
    cmd->add_option("--beta", opt.beta, "fixed beta for power-mode fixed");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    cmd->add_flag("--timing", opt.timing, "emit wall-clock times in CSV rows");
}

hrs::ScenarioConfig resolve_config(const CommonOptions &opt)
{
    hrs::ScenarioConfig config;
    if (!opt.config_path.empty())
        config = hrs::parse_config_file(opt.config_path);
    if (!opt.scenario_name.empty())
        hrs::apply_config_entry(config, "scenario", opt.scenario_name);
    if (!opt.snr_list.empty())
        hrs::apply_config_entry(config, "snr", opt.snr_list);
    if (!opt.scheme_list.empty())
        hrs::apply_config_entry(config, "schemes", opt.scheme_list);
    if (!opt.gamma_form.empty())
        hrs::apply_config_entry(config, "gamma_form", opt.gamma_form);
    if (!opt.power_mode.empty())
        hrs::apply_config_entry(config, "power_mode", opt.power_mode);
    if (!opt.objective.empty())
        hrs::apply_config_entry(config, "objective", opt.objective);
    if (opt.draws >= 0)
        config.n_draws = static_cast<std::size_t>(opt.draws);
    if (opt.seed >= 0)
        config.seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.grid_step > 0.0)
        config.grid_step = opt.grid_step;
    if (opt.alpha > 0.0)
        config.fixed_alpha = opt.alpha;
    if (opt.beta > 0.0)
        config.fixed_beta = opt.beta;
    if (opt.threads >= 0)
        config.threads = static_cast<unsigned>(opt.threads);
    if (opt.timing)
        config.timing = true;
    config.validate();
    return config;
}

void print_rows(const hrs::SweepResult &result)
{
    std::printf("%-10s %-13s %7s %8s %8s %9s %9s %9s %9s %9s\n", "scenario", "scheme", "snr_db",
                "alpha", "beta", "r_oc", "r_ic", "r_p", "r_sum", "stderr");
    for (const auto &row : result.rows)
        std::printf("%-10s %-13s %7.4g %8.4g %8.4g %9.4g %9.4g %9.4g %9.4g %9.4g\n",
                    row.scenario.c_str(), row.scheme.c_str(), row.snr_db, row.alpha, row.beta,
                    row.r_oc, row.r_ic, row.r_p, row.r_sum, row.stderr_sum);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"hrs-sim: two-tier precoded broadcast and hierarchical rate splitting "
                 "simulator with large-system analysis"};
    app.require_subcommand(1);

    CommonOptions sweep_opt, de_opt, split_opt;
    std::string sweep_out, de_out, plot_dir;

    CLI::App *sweep_cmd = app.add_subcommand("sweep", "run the configured schemes over the SNR list");
    add_common(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--out", sweep_out, "output CSV path");
    sweep_cmd->add_option("--plot-dir", plot_dir, "directory for two-column plot data per curve");

    CLI::App *de_cmd =
        app.add_subcommand("detequiv", "deterministic-equivalent-only fast sweep (no Monte Carlo)");
    add_common(de_cmd, de_opt);
    de_cmd->add_option("--out", de_out, "output CSV path");

    CLI::App *split_cmd = app.add_subcommand(
        "split", "print the interference coefficients and the closed-form power split");
    add_common(split_cmd, split_opt);

    try
    {
        app.parse(argc, argv);

        if (sweep_cmd->parsed())
        {
            hrs::ScenarioConfig config = resolve_config(sweep_opt);
            const hrs::Scenario scenario = hrs::assemble_scenario(config);
            const hrs::SweepResult result = hrs::run_sweep(scenario);
            print_rows(result);
            if (!sweep_out.empty())
                hrs::emit_csv(result, sweep_out);
            if (!plot_dir.empty())
                hrs::emit_plot_data(result, plot_dir);
        }
        else if (de_cmd->parsed())
        {
            hrs::ScenarioConfig config = resolve_config(de_opt);
            config.schemes = {"HRS_DetEquiv", "TTP_DetEquiv"};
            const hrs::Scenario scenario = hrs::assemble_scenario(config);
            const hrs::SweepResult result = hrs::run_sweep(scenario);
            print_rows(result);
            if (!de_out.empty())
                hrs::emit_csv(result, de_out);
        }
        else if (split_cmd->parsed())
        {
            hrs::ScenarioConfig config = resolve_config(split_opt);
            const hrs::Scenario scenario = hrs::assemble_scenario(config);
            const double kbar = static_cast<double>(config.users_per_group());
            const hrs::InterferenceSummary summary =
                hrs::interference_summary(scenario.rbar, config.tau2, config.groups, kbar,
                                          static_cast<double>(config.b), config.gamma_form);
            std::printf("form       : %s\n",
                        summary.form == hrs::SpectralForm::kLiteral ? "literal" : "zf_limit");
            std::printf("Gamma_OG   : %.8g\n", summary.inter_group);
            std::printf("Gamma_IG   : %.8g\n", summary.intra_group);
            std::printf("%8s %12s %12s %10s %10s\n", "snr_db", "P", "alpha", "beta", "P*a*b");
            for (double snr_db : config.snr_db)
            {
                const double p = std::pow(10.0, snr_db / 10.0);
                const hrs::PowerSplit split =
                    hrs::closed_form_split(summary, p, static_cast<double>(config.k), kbar);
                std::printf("%8.4g %12.6g %12.6g %10.6g %10.6g\n", snr_db, p, split.alpha,
                            split.beta, p * split.alpha * split.beta);
            }
        }
        return 0;
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
