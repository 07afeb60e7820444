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

#ifndef RISLOC_HARNESS_HPP
#define RISLOC_HARNESS_HPP

#include "risloc/config.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <tuple>

namespace risloc
{
    struct SweepRow
    {
        double snr_db = 0.0;
        int K = 0;
        double zeta = 0.0;
        bool ris_enabled = true;
        double peb_m = 0.0;
        bool has_rmse = false; // false for bound-only rows
        double rmse_m = 0.0;   // NaN when every trial failed
        int trials = 0;
        double mean_iterations = 0.0;
        int failures = 0;
    };

    struct PointResult
    {
        SweepRow row;
        std::vector<double> sq_errors; // per trial; NaN for failed trials
    };

    // Caches frames, channels and localizers across sweep points. Thread-safe.
    class SweepEngine
    {
    public:
        explicit SweepEngine(SimConfig cfg);

        const SimConfig &config() const { return cfg_; }

        // Scenario at the given RCS magnitude (phase of the configured zeta kept)
        Scenario scenario(double zeta) const;

        // Frames of length K at the power belonging to snr_db; nested in K
        SoundingFrames frames(int K, double snr_db) const;

        double peb(bool ris, int K, double zeta, double snr_db) const;

        // Monte Carlo at one point. Trial t draws noise and restarts from streams keyed by
        // (seed, t) only, so different points share their random numbers.
        PointResult run_point(bool ris, int K, double zeta, double snr_db, int trials, std::uint64_t seed) const;

    private:
        const Localizer &localizer(bool ris, int K) const;

        SimConfig cfg_;
        SoundingFrames full_; // frames for the largest K at unit power
        mutable std::mutex mutex_;
        mutable std::map<std::pair<bool, int>, std::unique_ptr<Localizer>> localizers_;
    };

    using ProgressFn = std::function<void(const SweepRow &)>;

    // Bound and Monte Carlo for every grid point, rows sorted by (ris, K, zeta, snr)
    std::vector<SweepRow> run_sweep(const SimConfig &cfg, const ProgressFn &progress = {});

    // Bound only; rmse fields left empty
    std::vector<SweepRow> run_crlb_only(const SimConfig &cfg);

    inline constexpr const char *csv_header = "snr_db,K,zeta,ris,peb_m,rmse_m,trials,mean_iterations,failures";

    void write_csv(std::ostream &os, const std::vector<SweepRow> &rows);

    struct SingleRunResult
    {
        double snr_db = 0.0;
        int K = 0;
        double peb_m = 0.0;
        LocalizationResult result;
    };

    // One trial at the first SNR, K and zeta of the sweep lists
    SingleRunResult single_run(const SimConfig &cfg, std::uint64_t seed);

    // Runs f(i) for i in [0, n) on `threads` workers (0 = hardware concurrency); rethrows the first error
    void parallel_for(int n, int threads, const std::function<void(int)> &f);
}

#endif
