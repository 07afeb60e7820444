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

// Acceptance run: one PASS/FAIL line per criterion, tolerances and time budgets pinned below.
// Exit status is the number of failed criteria.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace risloc;

namespace
{
    using Clock = std::chrono::steady_clock;

    int failures = 0;

    double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

    void report(int id, bool ok, double elapsed, double budget, const std::string &detail)
    {
        const bool pass = ok && elapsed < budget;
        if (!pass)
            ++failures;
        std::printf("%s criterion %d: %s [%.1f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", id, detail.c_str(), elapsed,
                    budget);
        std::fflush(stdout);
    }

    std::string fmt(const char *f, double a, double b = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, f, a, b);
        return buf;
    }

    std::string series(const std::vector<double> &v)
    {
        std::string out;
        for (double x : v)
            out += fmt(out.empty() ? "%.4g" : " %.4g", x);
        return out;
    }

    // ---- 1: analytic mean derivatives vs central differences ----
    void derivatives()
    {
        constexpr double tol = 1e-6;
        const auto t0 = Clock::now();
        std::mt19937_64 rng(2024);
        const ArraySet arr = test::default_arrays();
        double worst = 0.0;
        for (int n = 0; n < 100; ++n)
        {
            const Scenario s = test::random_scenario(rng);
            const SoundingFrames fr = design_frames(s, arr, 60, 1 + std::uint64_t(n));
            const ParamVector eta = true_parameters(s);
            const CMat D = mean_derivatives(eta, arr, s.lambda, fr);
            for (int p = 0; p < 10; ++p)
            {
                const double h = p < 4 ? 1e-6 * std::max(1.0, std::abs(eta.v(p))) : 1e-6;
                const CVec fd = test::central_difference(
                    [&](double x) {
                        ParamVector e = eta;
                        e.v(p) = x;
                        return mean_signal(e, arr, s.lambda, fr);
                    },
                    eta.v(p), h);
                worst = std::max(worst, test::rel_err(D.col(p), fd));
            }
        }
        report(1, worst < tol, seconds_since(t0), 30, fmt("mean derivatives, 100 scenarios x 10 columns, max rel err %.2e (tol %.0e)", worst, tol));
    }

    // ---- 2: block gradients vs finite differences of the objective ----
    void gradients()
    {
        constexpr double tol = 1e-6;
        const auto t0 = Clock::now();
        std::mt19937_64 rng(77);
        std::normal_distribution<double> g;
        auto randc = [&](int n) {
            CVec v(n);
            for (auto &x : v)
                x = {g(rng), g(rng)};
            return v;
        };
        const ArraySet arr = test::small_arrays(2);
        double worst = 0.0;
        for (int n = 0; n < 50; ++n)
        {
            const Scenario s = test::random_scenario(rng);
            const SoundingFrames fr = design_frames(s, arr, 6, 10 + std::uint64_t(n));
            // Y and the point of evaluation are random; the objective is a plain polynomial in them
            CMat Y(4, fr.K());
            for (int k = 0; k < fr.K(); ++k)
                Y.col(k) = randc(4);
            const ChannelTriple h{randc(4), randc(4), randc(4)};
            for (bool kron_form : {true, false})
            {
                const CgdGradients gr = kron_form ? cgd_gradients_kron(Y, fr, h) : cgd_gradients(Y, fr, h);
                for (int b = 0; b < 3; ++b)
                {
                    const CVec &x0 = b == 0 ? h.h2 : b == 1 ? h.h3 : h.h4;
                    const CVec &an = b == 0 ? gr.g2 : b == 1 ? gr.g3 : gr.g4;
                    CVec fd(x0.size());
                    for (Eigen::Index i = 0; i < x0.size(); ++i)
                    {
                        auto f = [&](cd delta) {
                            ChannelTriple t = h;
                            CVec &x = b == 0 ? t.h2 : b == 1 ? t.h3 : t.h4;
                            x(i) += delta;
                            return cgd_objective(Y, fr, t);
                        };
                        const double e = 1e-5;
                        const double dre = (f({e, 0}) - f({-e, 0})) / (2 * e);
                        const double dim = (f({0, e}) - f({0, -e})) / (2 * e);
                        fd(i) = 0.5 * cd(dre, dim); // Wirtinger: d/dRe + j d/dIm = 2 grad
                    }
                    worst = std::max(worst, test::rel_err(an, fd));
                }
            }
        }
        report(2, worst < tol, seconds_since(t0), 10, fmt("CGD block gradients (Kronecker and factored), 2x2 arrays, max rel err %.2e (tol %.0e)", worst, tol));
    }

    // ---- 3: position Jacobian vs finite differences of the link angles ----
    void jacobian()
    {
        constexpr double tol = 1e-6;
        const auto t0 = Clock::now();
        std::mt19937_64 rng(5);
        double worst = 0.0;
        int entries = 0;
        for (int n = 0; n < 100; ++n)
        {
            const Scenario s = test::random_scenario(rng);
            const JacobianT T = jacobian_T(s);
            for (int r = 0; r < 3; ++r)
            {
                const double h = 1e-6;
                Scenario a = s, b = s;
                double *pa = r == 0 ? &a.drone.x : r == 1 ? &a.drone.y : &a.drone.z;
                double *pb = r == 0 ? &b.drone.x : r == 1 ? &b.drone.y : &b.drone.z;
                *pa += h;
                *pb -= h;
                const ParamVector ea = true_parameters(a), eb = true_parameters(b);
                for (int c = 4; c < 10; ++c)
                {
                    if (T(r, c) == 0.0)
                        continue;
                    const double fd = (ea.v(c) - eb.v(c)) / (2 * h);
                    worst = std::max(worst, std::abs(fd - T(r, c)) / std::abs(T(r, c)));
                    ++entries;
                }
            }
        }
        report(3, worst < tol, seconds_since(t0), 5, fmt("Jacobian T, %.0f nonzero entries, max rel err %.2e (tol 1e-6)", entries, worst));
    }

    // ---- 4: PEB scales as 1/sqrt(SNR) ----
    void scaling(const SweepEngine &eng)
    {
        constexpr double tol = 1e-9;
        const auto t0 = Clock::now();
        const SweepConfig &sw = eng.config().sweep;
        double worst = 0.0;
        for (bool ris : {true, false})
            for (int K : sw.K)
                for (double z : sw.zeta)
                    for (double snr : sw.snr_db)
                    {
                        const double ratio = eng.peb(ris, K, z, snr + 20.0) / eng.peb(ris, K, z, snr);
                        worst = std::max(worst, std::abs(ratio - 0.1) / 0.1);
                    }
        report(4, worst < tol, seconds_since(t0), 5, fmt("PEB(SNR+20 dB) / PEB(SNR) = 0.1, max rel dev %.2e (tol %.0e)", worst, tol));
    }

    struct Curve
    {
        std::vector<double> peb, rmse;
    };

    Curve curve(const SweepEngine &eng, bool ris, int K, double zeta, int trials, bool with_rmse = true)
    {
        Curve c;
        for (double snr : eng.config().sweep.snr_db)
        {
            c.peb.push_back(eng.peb(ris, K, zeta, snr));
            if (with_rmse)
                c.rmse.push_back(eng.run_point(ris, K, zeta, snr, trials, eng.config().sweep.seed).row.rmse_m);
        }
        return c;
    }

    // ---- 8: noise-free end-to-end ----
    void oracle_end_to_end()
    {
        const auto t0 = Clock::now();
        const Scenario s;
        const ArraySet arr = test::default_arrays();
        const ChannelSet ch = build_channels(s, arr);
        const SoundingFrames fr = design_frames(s, arr, 60, 1);
        const ReceivedBlock rx = synthesize(clean_signal(s, ch, fr), fr.amplitude(), 0.0, 0);
        EstimatorConfig cfg;
        cfg.cgd.init_policy = InitPolicy::truth_perturbed;
        cfg.cgd.truth = true_channels(s, ch);
        const LocalizationResult r = localize(rx, s, arr, fr, cfg, 1);

        const LinkAngles la = drone_link_angles(s);
        const Point3 tri = triangulate_ls({{s.bs, la.bs}, {s.ris, la.ris}, {s.ue, la.ue}});
        const double tri_err = distance(tri, s.drone);
        report(8, r.error_m < 0.1 && tri_err < 1e-9, seconds_since(t0), 10,
               fmt("noise-free truth-perturbed error %.3e m (tol 0.1), exact-angle triangulation error %.1e m (tol 1e-9)", r.error_m, tri_err));
    }

    // ---- 9: structural invariants ----
    void structure(const SimConfig &base)
    {
        const auto t0 = Clock::now();
        const Scenario &s = base.scenario;
        const ArraySet &arr = base.arrays;
        const SoundingFrames fr = design_frames(s, arr, 60, base.sounding_seed, base.sounding);
        const double mb = arr.bs.size();
        double orth = 0.0;
        for (int k = 0; k < fr.K(); ++k)
            orth = std::max({orth, std::abs(fr.f0.dot(fr.fk.col(k))), std::abs(fr.g0.dot(fr.fk.col(k)))});

        // random-phase profiles exercise the unit-modulus constraint on every element too
        SoundingPolicy rp = base.sounding;
        rp.ris_policy = RisPolicy::random_phase;
        const CMat om2 = design_ris_profiles(arr.ris, s, 60, 9, rp);
        const double unit = std::max((fr.omega.cwiseAbs().array() - 1.0).abs().maxCoeff(),
                                     (om2.cwiseAbs().array() - 1.0).abs().maxCoeff());

        const CascadePair cp = cascade(s, build_channels(s, arr));
        auto sv_ratio = [](const CMat &m) {
            const RVec sv = Eigen::JacobiSVD<CMat>(m).singularValues();
            return sv(1) / sv(0);
        };
        const double rank = std::max(sv_ratio(cp.H_tilde), sv_ratio(cp.H_hat));

        const BoundResult b = position_bound(s, arr, fr);
        const double asym = (b.J - b.J.transpose()).cwiseAbs().maxCoeff();
        const Eigen::SelfAdjointEigenSolver<RMat> es(b.J);
        const double min_eig = es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff();

        SimConfig c1 = base, c4 = base;
        c1.sweep.threads = 1;
        c4.sweep.threads = 4;
        const PointResult p1 = SweepEngine(c1).run_point(true, 60, 1.0, 0.0, 12, 99);
        const PointResult p4 = SweepEngine(c4).run_point(true, 60, 1.0, 0.0, 12, 99);
        bool same = p1.sq_errors.size() == p4.sq_errors.size();
        for (std::size_t i = 0; same && i < p1.sq_errors.size(); ++i)
            same = p1.sq_errors[i] == p4.sq_errors[i] || (std::isnan(p1.sq_errors[i]) && std::isnan(p4.sq_errors[i]));

        const bool ok = orth < 1e-10 * mb && unit < 1e-12 && rank < 1e-10 && asym == 0.0 && min_eig > -1e-12 && same;
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "beam orthogonality %.1e (tol %.1e), unit modulus %.1e (tol 1e-12), cascade sv2/sv1 %.1e (tol 1e-10), "
                      "J asymmetry %.1e, min eig/max eig %.1e (>= -1e-12), 1 vs 4 threads %s",
                      orth, 1e-10 * mb, unit, rank, asym, min_eig, same ? "identical" : "DIFFER");
        report(9, ok, seconds_since(t0), 60, buf);
    }
}

int main()
{
    set_log_sink(nullptr);
    derivatives();
    gradients();
    jacobian();

    SimConfig cfg; // the reference configuration: K = 60, zeta = 1, SNR -10..10 dB, 200 trials
    cfg.sweep.threads = 0;
    const SweepEngine eng(cfg);
    const int trials = cfg.sweep.trials;
    scaling(eng);

    // ---- 5: RIS versus no RIS, RMSE above the bound and falling ----
    auto t0 = Clock::now();
    const Curve ref = curve(eng, true, 60, 1.0, trials);
    const Curve base = curve(eng, false, 60, 1.0, trials, false);
    bool ok = true;
    for (std::size_t i = 0; i < ref.peb.size(); ++i)
    {
        const double snr = cfg.sweep.snr_db[i];
        ok = ok && ref.peb[i] < base.peb[i];
        if (snr >= 5.0)
            ok = ok && ref.rmse[i] >= ref.peb[i];
        if (i > 0)
            ok = ok && ref.rmse[i] <= ref.rmse[i - 1];
    }
    const double t5 = seconds_since(t0);
    report(5, ok, t5, 600,
           "PEB with RIS [" + series(ref.peb) + "] < without [" + series(base.peb) + "]; RMSE (" + std::to_string(trials) +
               " trials, common random numbers across SNR) [" + series(ref.rmse) + "] >= PEB at >= 5 dB and non-increasing");

    // ---- 6: training overhead ----
    t0 = Clock::now();
    const Curve k20 = curve(eng, true, 20, 1.0, trials);
    ok = true;
    for (std::size_t i = 0; i < ref.peb.size(); ++i)
        ok = ok && ref.peb[i] <= k20.peb[i] && ref.rmse[i] <= k20.rmse[i];
    report(6, ok, seconds_since(t0) + t5, 600,
           "nested frames, K=60 PEB [" + series(ref.peb) + "] <= K=20 PEB [" + series(k20.peb) + "]; K=60 RMSE [" +
               series(ref.rmse) + "] <= K=20 RMSE [" + series(k20.rmse) + "]");

    // ---- 7: radar cross section ----
    t0 = Clock::now();
    const Curve z05 = curve(eng, true, 60, 0.5, trials);
    const Curve z2 = curve(eng, true, 60, 2.0, trials);
    ok = true;
    for (std::size_t i = 0; i < ref.peb.size(); ++i)
    {
        ok = ok && z2.peb[i] < ref.peb[i] && ref.peb[i] < z05.peb[i];
        if (cfg.sweep.snr_db[i] >= 5.0)
            ok = ok && z2.rmse[i] <= ref.rmse[i] && ref.rmse[i] <= z05.rmse[i];
    }
    report(7, ok, seconds_since(t0) + t5, 600,
           "PEB zeta=2 [" + series(z2.peb) + "] < zeta=1 < zeta=0.5 [" + series(z05.peb) + "]; RMSE zeta=2 [" + series(z2.rmse) +
               "], zeta=0.5 [" + series(z05.rmse) + "], ordered at >= 5 dB");

    oracle_end_to_end();
    structure(cfg);

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
