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

#ifndef RISLOC_CHANNEL_HPP
#define RISLOC_CHANNEL_HPP

#include "risloc/array.hpp"

namespace risloc
{
    // Ground-truth line-of-sight channels of one scenario.
    struct ChannelSet
    {
        CMat H1; // BS -> RIS, M_R x M_B
        CVec h2; // BS -> drone, entries of the 1 x M_B row
        CVec h3; // RIS -> drone, entries of the 1 x M_R row
        CVec h4; // drone -> UE, M_U x 1
        CMat H5; // BS -> UE, M_U x M_B
    };

    // Rank-one cascades through the drone and their complex gains
    struct CascadePair
    {
        CMat H_tilde; // BS -> RIS -> drone -> UE, M_U x M_R
        CMat H_hat;   // BS -> drone -> UE, M_U x M_B
        cd eps_tilde{};
        cd eps_hat{};
    };

    // Angles of the three anchor -> drone links, each measured at the anchor
    struct LinkAngles
    {
        DirectionAngles bs;
        DirectionAngles ris;
        DirectionAngles ue;
    };

    LinkAngles drone_link_angles(const Scenario &s);

    // exp(-j 2 pi d / lambda) / sqrt(rho(d))
    cd propagation_gain(double d, const Scenario &s);

    ChannelSet build_channels(const Scenario &s, const ArraySet &arrays);

    CascadePair cascade(const Scenario &s, const ChannelSet &ch);
}

#endif
