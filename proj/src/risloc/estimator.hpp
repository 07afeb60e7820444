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

#ifndef RISLOC_ESTIMATOR_HPP
#define RISLOC_ESTIMATOR_HPP

#include "risloc/rxsignal.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace risloc
{
    enum class StepPolicy
    {
        backtracking, // start at initial_step x exact line minimizer, halve until sufficient decrease
        fixed         // initial_step / L with L the block Lipschitz constant
    };

    enum class InitPolicy
    {
        random,         // h4 ~ CN(0, I), h2 = h3 = 0
        truth_perturbed // truth plus 10% relative complex Gaussian perturbation; tests only
    };

    struct ChannelTriple
    {
        CVec h2, h3, h4; // h2, h3 hold the entries of the row channels; h4 carries zeta
    };

    struct CgdConfig
    {
        int max_iters = 500;
        StepPolicy step_policy = StepPolicy::backtracking;
        double initial_step = 1.0;
        double tol = 1e-8; // stop when the relative objective decrease falls below tol
        int restarts = 8;
        InitPolicy init_policy = InitPolicy::random;
        double perturbation = 0.1;         // relative size of the truth perturbation
        std::optional<ChannelTriple> truth; // required by truth_perturbed
        bool min_norm = true;              // project [h3, h2] onto the span excited by the frames

        void validate() const;
    };

    struct ChannelEstimates
    {
        CVec h2, h3, h4;
        std::vector<double> objective_trace; // best restart, one value per iteration (index 0 = init)
        int iterations = 0;
        int best_restart = 0;
        double objective = 0.0;
    };

    // f = || Y - a (h4 (h3 Omega_bar + h2 F_bar)) ||_F^2 with a = sqrt(P/2)
    double cgd_objective(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h, bool ris_enabled = true);

    // Gradients as written for the block updates: B^H B h - B^H vec(Y_1) and its C/D counterparts.
    // These are derivatives w.r.t. the conjugate variables, so d f/d Re + j d f/d Im = 2 x gradient.
    struct CgdGradients
    {
        CVec g2, g3, g4;
    };

    // Explicit Kronecker-product form (reference; builds B, C and D)
    CgdGradients cgd_gradients_kron(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h);

    // Factored form used by the solver, mathematically identical
    CgdGradients cgd_gradients(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h,
                               bool ris_enabled = true);

    // Orthonormal basis of the column space of [Omega_bar; F_bar] (or F_bar alone without the RIS).
    // Row channels [h3, h2] are only observable through this span.
    struct ObservableSpan
    {
        CMat U;   // (M_R + M_B) x r, or M_B x r
        int m_r = 0; // rows belonging to the RIS block (0 without the RIS)

        static ObservableSpan of(const SoundingFrames &frames, bool ris_enabled);
        CMat ris_block() const { return U.topRows(m_r); }
        CMat bs_block() const { return U.bottomRows(U.rows() - m_r); }
    };

    // Y is expected with the known interference already removed
    ChannelEstimates cgd_estimate(const CMat &Y, const SoundingFrames &frames, const CgdConfig &cfg,
                                  std::uint64_t seed, bool ris_enabled = true);

    enum class Link
    {
        bs_drone,
        ris_drone,
        ue_drone
    };

    enum class SearchWeighting
    {
        observability, // |h a| / ||U_link^H a||
        plain          // |h a|
    };

    struct SearchSector
    {
        double az_min, az_max, el_min, el_max; // radians; an azimuth span of 2 pi wraps around
    };

    struct SearchConfig
    {
        double coarse_step = deg2rad(1.0);
        std::vector<double> refine_steps{deg2rad(0.1), deg2rad(0.01)}; // each level spans +-1 previous step
        SearchSector bs{-pi / 2, pi / 2, 0.0, pi / 2};                 // y-z array: az and pi - az alias
        SearchSector ris{-pi, pi, 0.0, pi / 2};
        SearchSector ue{-pi, pi, 0.0, pi / 2};
        SearchWeighting weighting = SearchWeighting::plain;

        const SearchSector &sector(Link link) const;
        void validate() const;
    };

    // Two-stage matched-filter search over one link's sector. The coarse grid responses are cached,
    // so one searcher serves any number of channel estimates.
    class AngleSearcher
    {
    public:
        // `weight_basis` (M x r) enables the observability weighting; pass an empty matrix for |h a|
        AngleSearcher(const UpaConfig &array, double lambda, const SearchSector &sector, double coarse_step,
                      std::vector<double> refine_steps, CMat weight_basis = {});

        // Maximizes |sum_i h_i a_i(az, el)| / weight; throws Error(degenerate_input) for h = 0
        DirectionAngles search(const CVec &h) const;

        int coarse_points() const { return int(grid_.size()); }

    private:
        double score(const CVec &h, const CVec &a) const;

        UpaConfig array_;
        double lambda_;
        SearchSector sector_;
        bool full_circle_;
        double coarse_step_;
        std::vector<double> refine_;
        CMat basis_h_; // r x M, empty for no weighting
        std::vector<DirectionAngles> grid_;
        CMat coarse_;       // M x N responses
        RVec coarse_scale_; // 1 / weight per grid point
    };

    // Convenience wrapper building a throw-away searcher (plain weighting)
    DirectionAngles angle_search_2d(const CVec &h, Link link, const UpaConfig &array, double lambda,
                                    const SearchConfig &grid = {});

    // LS intersection of rays (anchor, direction); throws Error(degenerate_geometry) if all are parallel
    Point3 triangulate_ls(const std::vector<std::pair<Point3, DirectionAngles>> &rays);
    Point3 triangulate_ls(const std::vector<std::pair<Point3, DirectionAngles>> &rays, const std::vector<double> &weights);

    enum class InterferenceMode
    {
        subtract, // remove sqrt(P/2) H5 F_bar before factorization
        suppress  // rely on the beam design; leave Y untouched
    };

    struct EstimatorConfig
    {
        CgdConfig cgd;
        SearchConfig search;
        InterferenceMode interference = InterferenceMode::subtract;
        bool ris_enabled = true;

        void validate() const;
    };

    struct AngleEstimates
    {
        DirectionAngles bs, ris, ue; // ris is unused without the RIS
    };

    struct LocalizationResult
    {
        Point3 p_hat;
        ChannelEstimates channels;
        AngleEstimates angles;
        double error_m = 0.0; // distance to the scenario's drone position
    };

    // Three-stage localizer bound to one scenario, array set and frame design.
    // Construction precomputes the coarse search grids; localize() is const and thread-safe.
    class Localizer
    {
    public:
        Localizer(const Scenario &s, const ArraySet &arrays, const SoundingFrames &frames, EstimatorConfig cfg);

        LocalizationResult localize(const ReceivedBlock &rx, const SoundingFrames &frames, std::uint64_t seed) const;

        const ObservableSpan &span() const { return span_; }

    private:
        Scenario scenario_;
        EstimatorConfig cfg_;
        ObservableSpan span_;
        std::unique_ptr<AngleSearcher> bs_, ris_, ue_;
    };

    LocalizationResult localize(const ReceivedBlock &rx, const Scenario &s, const ArraySet &arrays,
                                const SoundingFrames &frames, const EstimatorConfig &cfg, std::uint64_t seed);

    // Noise-free truth of the estimator's model, (zeta h4, h2, h3)
    ChannelTriple true_channels(const Scenario &s, const ChannelSet &ch);
}

#endif
