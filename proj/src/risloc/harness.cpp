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

#include "risloc/harness.hpp"
#include "risloc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace risloc
{
    void parallel_for(int n, int threads, const std::function<void(int)> &f)
    {
        if (threads <= 0)
            threads = int(std::max(1u, std::thread::hardware_concurrency()));
        threads = std::min(threads, n);
        if (threads <= 1)
        {
            for (int i = 0; i < n; ++i)
                f(i);
            return;
        }
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&]
                              {
                for (int i = next++; i < n; i = next++)
                {
                    try
                    {
                        f(i);
                    }
                    catch (...)
                    {
                        const std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        next = n;
                    }
                } });
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

    SweepEngine::SweepEngine(SimConfig cfg) : cfg_(std::move(cfg))
    {
        cfg_.validate();
        const int k_max = *std::max_element(cfg_.sweep.K.begin(), cfg_.sweep.K.end());
        full_ = design_frames(cfg_.scenario, cfg_.arrays, k_max, cfg_.sounding_seed, cfg_.sounding, 1.0);
    }

    Scenario SweepEngine::scenario(double zeta) const
    {
        Scenario s = cfg_.scenario;
        const double mag = std::abs(s.zeta);
        s.zeta = mag > 0.0 ? s.zeta * (zeta / mag) : cd(zeta, 0.0);
        return s;
    }

    SoundingFrames SweepEngine::frames(int K, double snr_db) const
    {
        SoundingFrames f = K == full_.K() ? full_ : full_.prefix(K);
        f.power.P = snr_to_power(snr_db, cfg_.scenario.sigma2());
        return f;
    }

    double SweepEngine::peb(bool ris, int K, double zeta, double snr_db) const
    {
        return position_bound(scenario(zeta), cfg_.arrays, frames(K, snr_db), {ris, cfg_.sweep.peb_method}).peb_m;
    }

    const Localizer &SweepEngine::localizer(bool ris, int K) const
    {
        const std::lock_guard<std::mutex> lock(mutex_);
        auto &slot = localizers_[{ris, K}];
        if (!slot)
        {
            EstimatorConfig ec = cfg_.estimator;
            ec.ris_enabled = ris;
            slot = std::make_unique<Localizer>(cfg_.scenario, cfg_.arrays, frames(K, 0.0), ec);
        }
        return *slot;
    }

    PointResult SweepEngine::run_point(bool ris, int K, double zeta, double snr_db, int trials, std::uint64_t seed) const
    {
        if (trials < 1)
            throw Error(ErrorKind::config, "sweep: trials must be >= 1");
        const Scenario s = scenario(zeta);
        const SoundingFrames fr = frames(K, snr_db);
        const ChannelSet ch = build_channels(s, cfg_.arrays);
        const SignalParts parts = clean_signal(s, ch, fr);
        const double amp = fr.amplitude(), sigma2 = s.sigma2();
        const Localizer &loc = localizer(ris, K);

        // Truth-perturbed initialization needs the true channels of this point
        EstimatorConfig ec = cfg_.estimator;
        const bool truth_init = ec.cgd.init_policy == InitPolicy::truth_perturbed;
        if (truth_init)
            ec.cgd.truth = true_channels(s, ch);
        std::unique_ptr<Localizer> truth_loc;
        if (truth_init)
        {
            ec.ris_enabled = ris;
            truth_loc = std::make_unique<Localizer>(s, cfg_.arrays, fr, ec);
        }
        const Localizer &use = truth_loc ? *truth_loc : loc;

        PointResult out;
        out.sq_errors.assign(std::size_t(trials), std::numeric_limits<double>::quiet_NaN());
        std::vector<int> iters(std::size_t(trials), 0);
        parallel_for(trials, cfg_.sweep.threads, [&](int t)
                     {
            const std::uint64_t key = derive_key(seed, stream::trial, std::uint64_t(t));
            const ReceivedBlock rx = synthesize(parts, amp, sigma2, derive_key(key, stream::noise));
            try
            {
                const LocalizationResult r = use.localize(rx, fr, derive_key(key, stream::cgd_init));
                out.sq_errors[std::size_t(t)] = r.error_m * r.error_m;
                iters[std::size_t(t)] = r.channels.iterations;
            }
            catch (const Error &e)
            {
                switch (e.kind())
                {
                case ErrorKind::degenerate_input:
                case ErrorKind::degenerate_geometry:
                case ErrorKind::divergence:
                    break; // counted as a failure below
                default:
                    throw;
                }
            } });

        SweepRow &row = out.row;
        row.snr_db = snr_db;
        row.K = K;
        row.zeta = zeta;
        row.ris_enabled = ris;
        row.peb_m = peb(ris, K, zeta, snr_db);
        row.has_rmse = true;
        row.trials = trials;
        double sum = 0.0, it_sum = 0.0;
        int ok = 0;
        for (int t = 0; t < trials; ++t)
        {
            if (std::isnan(out.sq_errors[std::size_t(t)]))
                continue;
            sum += out.sq_errors[std::size_t(t)];
            it_sum += iters[std::size_t(t)];
            ++ok;
        }
        row.failures = trials - ok;
        row.rmse_m = ok ? std::sqrt(sum / ok) : std::numeric_limits<double>::quiet_NaN();
        row.mean_iterations = ok ? it_sum / ok : 0.0;
        if (!ok)
        {
            std::ostringstream os;
            os << "all " << trials << " trials failed at snr=" << snr_db << " dB, K=" << K << ", zeta=" << zeta;
            log_warning(os.str());
        }
        return out;
    }

    namespace
    {
        template <typename F>
        std::vector<SweepRow> for_each_point(const SimConfig &cfg, F &&f)
        {
            std::vector<SweepRow> rows;
            for (int K : cfg.sweep.K)
                for (double zeta : cfg.sweep.zeta)
                    for (double snr : cfg.sweep.snr_db)
                        rows.push_back(f(cfg.sweep.ris_enabled, K, zeta, snr));
            std::stable_sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b)
                             { return std::tie(a.ris_enabled, a.K, a.zeta, a.snr_db) < std::tie(b.ris_enabled, b.K, b.zeta, b.snr_db); });
            return rows;
        }
    }

    std::vector<SweepRow> run_sweep(const SimConfig &cfg, const ProgressFn &progress)
    {
        const SweepEngine engine(cfg);
        return for_each_point(cfg, [&](bool ris, int K, double zeta, double snr)
                              {
            SweepRow row = engine.run_point(ris, K, zeta, snr, cfg.sweep.trials, cfg.sweep.seed).row;
            if (progress)
                progress(row);
            return row; });
    }

    std::vector<SweepRow> run_crlb_only(const SimConfig &cfg)
    {
        const SweepEngine engine(cfg);
        return for_each_point(cfg, [&](bool ris, int K, double zeta, double snr)
                              {
            SweepRow row;
            row.snr_db = snr;
            row.K = K;
            row.zeta = zeta;
            row.ris_enabled = ris;
            row.peb_m = engine.peb(ris, K, zeta, snr);
            return row; });
    }

    void write_csv(std::ostream &os, const std::vector<SweepRow> &rows)
    {
        os << csv_header << '\n';
        std::ostringstream line;
        line.imbue(std::locale::classic());
        for (const SweepRow &r : rows)
        {
            line.str("");
            line << std::setprecision(10) << r.snr_db << ',' << r.K << ',' << r.zeta << ',' << (r.ris_enabled ? 1 : 0) << ','
                 << std::setprecision(12) << r.peb_m << ',';
            if (r.has_rmse)
            {
                if (std::isnan(r.rmse_m))
                    line << "nan";
                else
                    line << r.rmse_m;
                line << ',' << r.trials << ',' << std::setprecision(6) << r.mean_iterations << ',' << r.failures;
            }
            else
                line << ",0,,0";
            os << line.str() << '\n';
        }
    }

    SingleRunResult single_run(const SimConfig &cfg, std::uint64_t seed)
    {
        const SweepEngine engine(cfg);
        const bool ris = cfg.sweep.ris_enabled;
        const int K = cfg.sweep.K.front();
        const double zeta = cfg.sweep.zeta.front(), snr = cfg.sweep.snr_db.front();

        const Scenario s = engine.scenario(zeta);
        const SoundingFrames fr = engine.frames(K, snr);
        const ChannelSet ch = build_channels(s, cfg.arrays);
        EstimatorConfig ec = cfg.estimator;
        ec.ris_enabled = ris;
        if (ec.cgd.init_policy == InitPolicy::truth_perturbed)
            ec.cgd.truth = true_channels(s, ch);
        const Localizer loc(s, cfg.arrays, fr, ec);

        // Same streams as trial 0 of a sweep with this master seed
        const std::uint64_t key = derive_key(seed, stream::trial, 0);
        const ReceivedBlock rx =
            synthesize(clean_signal(s, ch, fr), fr.amplitude(), s.sigma2(), derive_key(key, stream::noise));

        SingleRunResult out;
        out.snr_db = snr;
        out.K = K;
        out.peb_m = engine.peb(ris, K, zeta, snr);
        out.result = loc.localize(rx, fr, derive_key(key, stream::cgd_init));
        return out;
    }
}
