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

#include "risloc/channel.hpp"

#include <cmath>

namespace risloc
{
    LinkAngles drone_link_angles(const Scenario &s)
    {
        return {direction_angles(s.bs, s.drone), direction_angles(s.ris, s.drone), direction_angles(s.ue, s.drone)};
    }

    cd propagation_gain(double d, const Scenario &s)
    {
        const double phase = -2.0 * pi * d / s.lambda;
        return std::polar(1.0 / std::sqrt(path_loss(d, s.gamma)), phase);
    }

    ChannelSet build_channels(const Scenario &s, const ArraySet &arrays)
    {
        s.validate();
        arrays.validate();
        const double lambda = s.lambda;

        // Departure angles are taken at the BS, arrival angles at the receiving array.
        // For x-y arrays reversing a direction leaves the response unchanged.
        const CVec a_bs_ris = steering(arrays.bs, direction_angles(s.bs, s.ris), lambda);
        const CVec a_ris_bs = steering(arrays.ris, direction_angles(s.ris, s.bs), lambda);
        const CVec a_bs_drone = steering(arrays.bs, direction_angles(s.bs, s.drone), lambda);
        const CVec a_ris_drone = steering(arrays.ris, direction_angles(s.ris, s.drone), lambda);
        const CVec a_ue_drone = steering(arrays.ue, direction_angles(s.ue, s.drone), lambda);
        const CVec a_bs_ue = steering(arrays.bs, direction_angles(s.bs, s.ue), lambda);
        const CVec a_ue_bs = steering(arrays.ue, direction_angles(s.ue, s.bs), lambda);

        ChannelSet ch;
        ch.H1 = propagation_gain(distance(s.bs, s.ris), s) * a_ris_bs * a_bs_ris.adjoint();
        ch.h2 = propagation_gain(distance(s.bs, s.drone), s) * a_bs_drone.conjugate();
        ch.h3 = propagation_gain(distance(s.ris, s.drone), s) * a_ris_drone.conjugate();
        ch.h4 = propagation_gain(distance(s.ue, s.drone), s) * a_ue_drone;
        ch.H5 = propagation_gain(distance(s.bs, s.ue), s) * a_ue_bs * a_bs_ue.adjoint();
        return ch;
    }

    CascadePair cascade(const Scenario &s, const ChannelSet &ch)
    {
        const double m_b = double(ch.h2.size());
        const cd g1 = propagation_gain(distance(s.bs, s.ris), s);
        const cd g2 = propagation_gain(distance(s.bs, s.drone), s);
        const cd g3 = propagation_gain(distance(s.ris, s.drone), s);
        const cd g4 = propagation_gain(distance(s.ue, s.drone), s);

        CascadePair out;
        out.H_tilde = (s.zeta * m_b * g1) * ch.h4 * ch.h3.transpose();
        out.H_hat = s.zeta * ch.h4 * ch.h2.transpose();
        out.eps_tilde = s.zeta * m_b * g1 * g4 * g3;
        out.eps_hat = s.zeta * g4 * g2;
        return out;
    }
}
