// SPDX-License-Identifier: Apache-2.0
//
// risloc: simulator and estimators for RIS-assisted device-free drone localization
// Copyright (C) 2026 risloc developers
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

// Command-line front end. Links only the C interface of the library.

#include "risloc.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{
    enum Exit
    {
        exit_ok = 0,
        exit_config = 1,
        exit_numerical = 2
    };

    struct Options
    {
        std::string config;
        std::string out = "-";
        std::uint64_t seed = 0;
        bool seed_set = false;
        int trials = 0;
        int threads = -1;
        std::string snr, k, rcs;
        bool no_ris = false;
    };

    int report(risloc_status s)
    {
        std::cerr << "risloc: " << risloc_status_string(s) << ": " << risloc_last_error() << '\n';
        return s == RISLOC_ERR_NUMERICAL ? exit_numerical : exit_config;
    }

    std::vector<std::string> split(const std::string &list)
    {
        std::vector<std::string> out;
        std::stringstream ss(list);
        for (std::string item; std::getline(ss, item, ',');)
            out.push_back(item);
        return out;
    }

    // Strict numeric parsing; anything unparsable is a configuration error
    bool to_double(const std::string &s, double &v)
    {
        try
        {
            std::size_t used = 0;
            v = std::stod(s, &used);
            return used == s.size();
        }
        catch (const std::exception &)
        {
            return false;
        }
    }

    int load(const Options &o, risloc_config **cfg)
    {
        risloc_status s = o.config.empty() ? risloc_config_default(cfg) : risloc_config_load_file(o.config.c_str(), cfg);
        if (s != RISLOC_OK)
            return report(s);

        if (o.seed_set && (s = risloc_config_set_seed(*cfg, o.seed)) != RISLOC_OK)
            return report(s);
        if (o.trials != 0 && (s = risloc_config_set_trials(*cfg, o.trials)) != RISLOC_OK)
            return report(s);
        if (o.threads >= 0 && (s = risloc_config_set_threads(*cfg, o.threads)) != RISLOC_OK)
            return report(s);
        if (!o.snr.empty() && (s = risloc_config_set_snr_range(*cfg, o.snr.c_str())) != RISLOC_OK)
            return report(s);
        if (!o.k.empty())
        {
            std::vector<int> ks;
            for (const std::string &item : split(o.k))
            {
                double v = 0.0;
                if (!to_double(item, v) || v != double(int(v)))
                {
                    std::cerr << "risloc: --k expects a comma-separated list of integers, got '" << o.k << "'\n";
                    return exit_config;
                }
                ks.push_back(int(v));
            }
            if ((s = risloc_config_set_k_list(*cfg, ks.data(), ks.size())) != RISLOC_OK)
                return report(s);
        }
        if (!o.rcs.empty())
        {
            std::vector<double> zs;
            for (const std::string &item : split(o.rcs))
            {
                double v = 0.0;
                if (!to_double(item, v))
                {
                    std::cerr << "risloc: --rcs expects a comma-separated list of numbers, got '" << o.rcs << "'\n";
                    return exit_config;
                }
                zs.push_back(v);
            }
            if ((s = risloc_config_set_zeta_list(*cfg, zs.data(), zs.size())) != RISLOC_OK)
                return report(s);
        }
        if (o.no_ris && (s = risloc_config_set_ris_enabled(*cfg, 0)) != RISLOC_OK)
            return report(s);
        return exit_ok;
    }

    void progress(const risloc_sweep_row *r, void *)
    {
        std::fprintf(stderr, "snr=%6.2f dB  K=%3d  zeta=%.3g  ris=%d  peb=%.4g m  rmse=%.4g m  failures=%d\n", r->snr_db,
                     r->K, r->zeta, r->ris_enabled, r->peb_m, r->rmse_m, r->failures);
    }

    int sweep(const Options &o, bool monte_carlo)
    {
        risloc_config *cfg = nullptr;
        if (const int rc = load(o, &cfg); rc != exit_ok)
        {
            risloc_config_free(cfg);
            return rc;
        }
        risloc_sweep *sw = nullptr;
        risloc_status s = monte_carlo ? risloc_run_rmse_sweep(cfg, progress, nullptr, &sw) : risloc_run_crlb_sweep(cfg, &sw);
        risloc_config_free(cfg);
        if (s == RISLOC_OK)
            s = risloc_sweep_write_csv(sw, o.out.c_str());
        risloc_sweep_free(sw);
        return s == RISLOC_OK ? exit_ok : report(s);
    }

    int single(const Options &o)
    {
        risloc_config *cfg = nullptr;
        if (const int rc = load(o, &cfg); rc != exit_ok)
        {
            risloc_config_free(cfg);
            return rc;
        }
        risloc_single_result r{};
        const risloc_status s = risloc_single_run(cfg, o.seed_set ? o.seed : 1, &r);
        risloc_config_free(cfg);
        if (s != RISLOC_OK)
            return report(s);

        std::printf("snr_db       %.4g\n", r.snr_db);
        std::printf("K            %d\n", r.K);
        std::printf("p_hat_m      %.6f %.6f %.6f\n", r.p_hat[0], r.p_hat[1], r.p_hat[2]);
        std::printf("error_m      %.6g\n", r.error_m);
        std::printf("peb_m        %.6g\n", r.peb_m);
        std::printf("bs_deg       %.4f %.4f\n", r.angles_deg[0], r.angles_deg[1]);
        std::printf("ris_deg      %.4f %.4f\n", r.angles_deg[2], r.angles_deg[3]);
        std::printf("ue_deg       %.4f %.4f\n", r.angles_deg[4], r.angles_deg[5]);
        std::printf("iterations   %d\n", r.iterations);
        std::printf("best_restart %d\n", r.best_restart);
        return exit_ok;
    }

    void add_common(CLI::App &cmd, Options &o)
    {
        cmd.add_option("--config", o.config, "scenario JSON file (defaults reproduce the reference setup)");
        cmd.add_option("--seed", o.seed, "master seed")->each([&o](const std::string &) { o.seed_set = true; });
        cmd.add_option("--snr", o.snr, "SNR grid in dB, 'start:stop:step' or a single value");
        cmd.add_option("--k", o.k, "comma-separated slot counts K");
        cmd.add_option("--rcs", o.rcs, "comma-separated RCS magnitudes");
        cmd.add_flag("--no-ris", o.no_ris, "baseline without the RIS");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"risloc: RIS-assisted device-free drone localization (bounds and Monte Carlo)"};
    app.require_subcommand(1);
    Options o;

    CLI::App *crlb = app.add_subcommand("crlb-sweep", "position error bound over the sweep grid, CSV output");
    CLI::App *rmse = app.add_subcommand("rmse-sweep", "Monte Carlo RMSE and bound over the sweep grid, CSV output");
    CLI::App *one = app.add_subcommand("single-run", "one localization trial, summary on stdout");
    for (CLI::App *cmd : {crlb, rmse, one})
        add_common(*cmd, o);
    for (CLI::App *cmd : {crlb, rmse})
        cmd->add_option("--out", o.out, "output CSV path, '-' for stdout");
    rmse->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    rmse->add_option("--threads", o.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "risloc: " << e.what() << "\n\n" << app.help();
        return exit_config;
    }

    if (*crlb)
        return sweep(o, false);
    if (*rmse)
        return sweep(o, true);
    return single(o);
}
