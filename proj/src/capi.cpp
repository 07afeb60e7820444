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

#include "risloc.h"

#include "risloc/harness.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

struct risloc_config
{
    risloc::SimConfig cfg;
};

struct risloc_sweep
{
    std::vector<risloc::SweepRow> rows;
};

namespace
{
    thread_local std::string last_error;

    risloc_status fail(risloc_status s, const std::string &msg)
    {
        last_error = msg;
        return s;
    }

    // Runs f, translating exceptions into status codes
    template <typename F>
    risloc_status guarded(F &&f)
    {
        try
        {
            last_error.clear();
            return f();
        }
        catch (const risloc::Error &e)
        {
            return fail(e.is_config_error() ? RISLOC_ERR_CONFIG : RISLOC_ERR_NUMERICAL, e.what());
        }
        catch (const std::bad_alloc &)
        {
            return fail(RISLOC_ERR_NUMERICAL, "out of memory");
        }
        catch (const std::exception &e)
        {
            return fail(RISLOC_ERR_NUMERICAL, e.what());
        }
    }

    risloc_sweep_row to_c(const risloc::SweepRow &r)
    {
        return {r.snr_db, r.K, r.zeta, r.ris_enabled ? 1 : 0, r.peb_m, r.has_rmse ? 1 : 0,
                r.rmse_m, r.trials, r.mean_iterations, r.failures};
    }

    // Applies a change and re-validates, leaving cfg untouched on failure
    template <typename F>
    risloc_status modify(risloc_config *cfg, F &&f)
    {
        if (!cfg)
            return fail(RISLOC_ERR_INVALID_ARGUMENT, "null configuration handle");
        return guarded([&]
                       {
            risloc::SimConfig next = cfg->cfg;
            f(next);
            next.validate();
            cfg->cfg = std::move(next);
            return RISLOC_OK; });
    }

    template <typename T>
    std::vector<T> to_vector(const T *p, size_t n)
    {
        return p ? std::vector<T>(p, p + n) : std::vector<T>{};
    }
}

extern "C" {

const char *risloc_version(void) { return "0.1.0"; }

const char *risloc_status_string(risloc_status status)
{
    switch (status)
    {
    case RISLOC_OK:
        return "ok";
    case RISLOC_ERR_CONFIG:
        return "configuration error";
    case RISLOC_ERR_NUMERICAL:
        return "numerical error";
    case RISLOC_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case RISLOC_ERR_IO:
        return "i/o error";
    }
    return "unknown status";
}

const char *risloc_last_error(void) { return last_error.c_str(); }

void risloc_set_log_handler(risloc_log_fn fn) { risloc::set_log_sink(fn); }

risloc_status risloc_config_default(risloc_config **out)
{
    if (!out)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&]
                   {
        *out = new risloc_config{};
        return RISLOC_OK; });
}

risloc_status risloc_config_load_file(const char *path, risloc_config **out)
{
    if (!out || !path)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]
                   {
        *out = new risloc_config{risloc::load_config_file(path)};
        return RISLOC_OK; });
}

risloc_status risloc_config_load_string(const char *json, risloc_config **out)
{
    if (!out || !json)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]
                   {
        *out = new risloc_config{risloc::load_config_string(json)};
        return RISLOC_OK; });
}

void risloc_config_free(risloc_config *cfg) { delete cfg; }

risloc_status risloc_config_set_seed(risloc_config *cfg, uint64_t seed)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.seed = seed; });
}

risloc_status risloc_config_set_trials(risloc_config *cfg, int trials)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.trials = trials; });
}

risloc_status risloc_config_set_threads(risloc_config *cfg, int threads)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.threads = threads; });
}

risloc_status risloc_config_set_ris_enabled(risloc_config *cfg, int enabled)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.ris_enabled = enabled != 0; });
}

risloc_status risloc_config_set_snr_list(risloc_config *cfg, const double *snr_db, size_t n)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.snr_db = to_vector(snr_db, n); });
}

risloc_status risloc_config_set_k_list(risloc_config *cfg, const int *k, size_t n)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.K = to_vector(k, n); });
}

risloc_status risloc_config_set_zeta_list(risloc_config *cfg, const double *zeta, size_t n)
{
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.zeta = to_vector(zeta, n); });
}

risloc_status risloc_config_set_snr_range(risloc_config *cfg, const char *spec)
{
    if (!spec)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null SNR specification");
    return modify(cfg, [&](risloc::SimConfig &c) { c.sweep.snr_db = risloc::parse_range(spec); });
}

risloc_status risloc_run_crlb_sweep(const risloc_config *cfg, risloc_sweep **out)
{
    if (!cfg || !out)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]
                   {
        *out = new risloc_sweep{risloc::run_crlb_only(cfg->cfg)};
        return RISLOC_OK; });
}

risloc_status risloc_run_rmse_sweep(const risloc_config *cfg, risloc_progress_fn progress, void *user,
                                    risloc_sweep **out)
{
    if (!cfg || !out)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]
                   {
        risloc::ProgressFn fn;
        if (progress)
            fn = [&](const risloc::SweepRow &r)
            {
                const risloc_sweep_row c = to_c(r);
                progress(&c, user);
            };
        *out = new risloc_sweep{risloc::run_sweep(cfg->cfg, fn)};
        return RISLOC_OK; });
}

size_t risloc_sweep_row_count(const risloc_sweep *sweep) { return sweep ? sweep->rows.size() : 0; }

risloc_status risloc_sweep_get_row(const risloc_sweep *sweep, size_t index, risloc_sweep_row *out)
{
    if (!sweep || !out)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= sweep->rows.size())
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "row index out of range");
    *out = to_c(sweep->rows[index]);
    return RISLOC_OK;
}

risloc_status risloc_sweep_write_csv(const risloc_sweep *sweep, const char *path)
{
    if (!sweep)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null sweep handle");
    return guarded([&]
                   {
        if (!path || std::string(path) == "-")
        {
            risloc::write_csv(std::cout, sweep->rows);
            std::cout.flush();
            return std::cout ? RISLOC_OK : fail(RISLOC_ERR_IO, "cannot write to standard output");
        }
        std::ofstream f(path);
        if (!f)
            return fail(RISLOC_ERR_IO, std::string("cannot open '") + path + "' for writing");
        risloc::write_csv(f, sweep->rows);
        f.close();
        return f ? RISLOC_OK : fail(RISLOC_ERR_IO, std::string("write to '") + path + "' failed"); });
}

void risloc_sweep_free(risloc_sweep *sweep) { delete sweep; }

risloc_status risloc_single_run(const risloc_config *cfg, uint64_t seed, risloc_single_result *out)
{
    if (!cfg || !out)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]
                   {
        const risloc::SingleRunResult r = risloc::single_run(cfg->cfg, seed);
        const auto &a = r.result.angles;
        *out = risloc_single_result{r.snr_db, r.K, {r.result.p_hat.x, r.result.p_hat.y, r.result.p_hat.z},
            r.result.error_m, r.peb_m,
            {risloc::rad2deg(a.bs.azimuth), risloc::rad2deg(a.bs.elevation), risloc::rad2deg(a.ris.azimuth),
             risloc::rad2deg(a.ris.elevation), risloc::rad2deg(a.ue.azimuth), risloc::rad2deg(a.ue.elevation)},
            r.result.channels.iterations, r.result.channels.best_restart};
        return RISLOC_OK; });
}

risloc_status risloc_peb(const risloc_config *cfg, double snr_db, int K, double zeta, int ris_enabled, double *out_m)
{
    if (!cfg || !out_m)
        return fail(RISLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]
                   {
        risloc::SimConfig c = cfg->cfg;
        c.sweep.K = {K};
        c.sweep.zeta = {zeta};
        c.sweep.snr_db = {snr_db};
        *out_m = risloc::SweepEngine(c).peb(ris_enabled != 0, K, zeta, snr_db);
        return RISLOC_OK; });
}

} // extern "C"
