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

#ifndef RISLOC_FISHER_HPP
#define RISLOC_FISHER_HPP

#include "risloc/sounding.hpp"

#include <array>
#include <vector>

namespace risloc
{
    // Unknowns in the order [Re et, Im et, Re eh, Im eh, az_bs, el_bs, az_ris, el_ris, az_ue, el_ue].
    // `et` is the gain that multiplies the supplied Omega_bar. Because Omega_bar carries the absorbed
    // BS->RIS constant c1, et = zeta g4 g3 here, i.e. the physical cascade gain divided by c1.
    struct ParamVector
    {
        Eigen::Matrix<double, 10, 1> v = Eigen::Matrix<double, 10, 1>::Zero();

        cd eps_tilde() const { return {v(0), v(1)}; }
        cd eps_hat() const { return {v(2), v(3)}; }
        DirectionAngles bs() const { return {v(4), v(5)}; }
        DirectionAngles ris() const { return {v(6), v(7)}; }
        DirectionAngles ue() const { return {v(8), v(9)}; }
    };

    ParamVector true_parameters(const Scenario &s);

    // Diagonals of the eleven phase-derivative matrices: 0..2 BS axes, 3..6 RIS axes, 7..10 UE axes.
    // Entry i of the diagonal for an axis with m elements and spacing d is
    //   +-j 2 pi d/lambda * (trig factor) * (i - (m-1)/2),
    // negated for the conjugated (transmit-side) BS and RIS responses.
    struct PhiMatrices
    {
        std::array<CVec, 11> diag;
    };

    PhiMatrices phi_matrices(const ParamVector &eta, const ArraySet &arrays, double lambda);

    // Noise- and interference-free received signal, vectorized column-major (M_U*K)
    CVec mean_signal(const ParamVector &eta, const ArraySet &arrays, double lambda, const SoundingFrames &frames);

    // Analytic derivatives of mean_signal, one column per entry of eta
    CMat mean_derivatives(const ParamVector &eta, const ArraySet &arrays, double lambda, const SoundingFrames &frames);

    // J = (2 / sigma2) Re(dmu^H dmu), symmetrized
    RMat fim(const CMat &dmu, double sigma2);

    enum class PebMethod
    {
        verbatim, // sqrt(tr((T J T^T)^-1)), nuisance parameters ignored
        schur     // invert J, keep the angle block, transform its inverse to position
    };

    // Parameter subset of the baseline without the RIS (eps_hat, BS angles, UE angles)
    inline constexpr std::array<int, 6> no_ris_indices{2, 3, 4, 5, 8, 9};

    // Position error bound; T has one column per parameter of J (10, or 6 for the baseline).
    // Throws Error(unidentifiable) when the 3x3 position information is singular.
    double peb(const RMat &J, const RMat &T, PebMethod method = PebMethod::verbatim);

    struct BoundOptions
    {
        bool ris_enabled = true;
        PebMethod method = PebMethod::verbatim;
    };

    struct BoundResult
    {
        RMat J; // full 10x10 (or 6x6 reduced) information matrix
        double peb_m = 0.0;
    };

    // PEB at the power stored in `frames` and the noise level of the scenario
    BoundResult position_bound(const Scenario &s, const ArraySet &arrays, const SoundingFrames &frames,
                               const BoundOptions &opt = {});

    // Rows and columns `idx` of J
    RMat select(const RMat &J, const std::vector<int> &idx);
}

#endif
