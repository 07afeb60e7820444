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

#ifndef RISLOC_RXSIGNAL_HPP
#define RISLOC_RXSIGNAL_HPP

#include "risloc/sounding.hpp"

#include <cstdint>

namespace risloc
{
    // Noise-free received block per unit pilot amplitude (s0 = sk = 1), split by origin
    struct SignalParts
    {
        CMat target;       // reflections off the drone (RIS cascade + direct BS->drone->UE)
        CMat interference; // direct BS->UE leakage, H5 * F_bar
    };

    struct ReceivedBlock
    {
        CMat Y;                  // M_U x K
        double sigma2 = 0.0;     // per-entry noise variance [W]
        std::uint64_t noise_key = 0;
        CMat interference_known; // sqrt(P/2) H5 F_bar, known to the receiver
    };

    // Evaluates the per-slot model y_k = H5 x_k + zeta h4 h3 diag(omega_k) H1 x_k + zeta h4 h2 x_k
    // with x_k = f0 + f_k, directly from the physical channels.
    SignalParts clean_signal(const Scenario &s, const ChannelSet &ch, const SoundingFrames &frames);

    // Y = amplitude * (target + interference) + N, N_ij ~ CN(0, sigma2) drawn from the keyed stream.
    // Entry (i, k) uses counter (k, i), so the noise of slot k does not depend on K.
    ReceivedBlock synthesize(const SignalParts &parts, double amplitude, double sigma2, std::uint64_t noise_key);

    // Convenience: channels and frames -> block, with sigma2 taken from the scenario
    ReceivedBlock synthesize(const Scenario &s, const ChannelSet &ch, const SoundingFrames &frames,
                             std::uint64_t noise_key);

    // P = sigma2 * 10^(snr_db / 10)
    double snr_to_power(double snr_db, double sigma2);

    // max_k ||H5 f_k||, the slot-dependent part of the direct-link interference
    double interference_residual(const ChannelSet &ch, const SoundingFrames &frames);
}

#endif
