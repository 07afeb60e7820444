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

#ifndef RISLOC_SOUNDING_HPP
#define RISLOC_SOUNDING_HPP

#include "risloc/channel.hpp"

#include <cstdint>

namespace risloc
{
    enum class RisPolicy
    {
        codebook,    // conjugate-phase beams toward a grid over a sky sector, cycled over k
        random_phase // i.i.d. uniform phases
    };

    enum class SkyBeamPolicy
    {
        orthogonal, // seeded Gram-Schmidt inside blocks of M_B - 2 slots: mutually orthogonal beams
        iid         // independent random directions in the null space
    };

    struct SoundingPolicy
    {
        RisPolicy ris_policy = RisPolicy::codebook;
        SkyBeamPolicy sky_policy = SkyBeamPolicy::orthogonal;
        double az_min = 0.0, az_max = pi / 2; // codebook sector [rad]
        double el_min = pi / 4, el_max = pi / 2;
        int grid_az = 6, grid_el = 6; // codebook cells per axis; beams point at cell centers

        void validate() const;
    };

    // Transmit amplitude split between the fixed and the sky beam
    struct PilotPower
    {
        double P = 1.0; // total pilot power [W]

        double amplitude() const; // s0 = sk = sqrt(P/2)
    };

    // Training design of K slots plus the effective matrices seen by the estimator.
    // Omega_bar column k = c1 * diag(a_r1) * omega_k, with c1 = M_B exp(-j 2 pi d1/lambda) / sqrt(rho1)
    // and a_r1 the RIS response toward the BS. F_bar column k = f0 + f_k.
    struct SoundingFrames
    {
        CVec f0;        // BS beam toward the RIS (MRT)
        CVec g0;        // BS steering toward the UE (kept for orthogonality checks)
        CMat fk;        // sky beams, M_B x K
        CMat omega;     // RIS phase profiles, M_R x K
        CVec a_r1;      // RIS response toward the BS
        cd c1{};        // absorbed BS->RIS constant
        CMat Omega_bar; // M_R x K
        CMat F_bar;     // M_B x K
        PilotPower power;

        int K() const { return int(F_bar.cols()); }
        double amplitude() const { return power.amplitude(); }

        // Copy restricted to the first k slots
        SoundingFrames prefix(int k) const;
    };

    CVec design_f0(const UpaConfig &bs, const Scenario &s);

    // Random sky beams in the null space of [f0, g0]^H, each of norm sqrt(M_B).
    // Column k depends only on (seed, k, policy), so frame sets are nested in K.
    CMat design_sky_beams(const UpaConfig &bs, const Scenario &s, int K, std::uint64_t seed,
                          SkyBeamPolicy policy = SkyBeamPolicy::orthogonal);

    // Unit-modulus RIS profiles; column k depends only on (policy, seed, k)
    CMat design_ris_profiles(const UpaConfig &ris, const Scenario &s, int K, std::uint64_t seed,
                             const SoundingPolicy &policy = {});

    // Returns (Omega_bar, F_bar); omega, f0, fk, a_r1 and c1 are taken from `frames`
    std::pair<CMat, CMat> assemble_effective(const ChannelSet &ch, const SoundingFrames &frames);

    // Full design for one scenario: beams, profiles and effective matrices
    SoundingFrames design_frames(const Scenario &s, const ArraySet &arrays, int K, std::uint64_t seed,
                                 const SoundingPolicy &policy = {}, double power_w = 1.0);
}

#endif
