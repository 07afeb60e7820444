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

#include "risloc/rxsignal.hpp"
#include "risloc/rng.hpp"

#include <cmath>

namespace risloc
{
    SignalParts clean_signal(const Scenario &s, const ChannelSet &ch, const SoundingFrames &frames)
    {
        const Eigen::Index M_B = ch.h2.size(), M_R = ch.h3.size();
        if (frames.F_bar.rows() != M_B || frames.omega.rows() != M_R || ch.H1.rows() != M_R ||
            ch.H1.cols() != M_B || ch.H5.cols() != M_B || ch.H5.rows() != ch.h4.size())
            throw Error(ErrorKind::config, "rxsignal: frame dimensions do not match the channel set");

        const int K = frames.K();
        SignalParts out;
        out.interference = ch.H5 * frames.F_bar;

        // Scalar drone-side gains per slot, then one outer product with zeta h4
        const CMat at_ris = ch.H1 * frames.F_bar; // M_R x K, impinging field on the RIS
        Eigen::RowVectorXcd a(K);
        for (int k = 0; k < K; ++k)
        {
            cd via_ris = 0.0;
            for (Eigen::Index i = 0; i < M_R; ++i)
                via_ris += ch.h3(i) * frames.omega(i, k) * at_ris(i, k);
            a(k) = via_ris + ch.h2.cwiseProduct(frames.F_bar.col(k)).sum();
        }
        out.target = (s.zeta * ch.h4) * a;
        return out;
    }

    ReceivedBlock synthesize(const SignalParts &parts, double amplitude, double sigma2, std::uint64_t noise_key)
    {
        if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
            throw Error(ErrorKind::domain, "noise variance must be finite and non-negative");
        ReceivedBlock rb;
        rb.sigma2 = sigma2;
        rb.noise_key = noise_key;
        rb.interference_known = amplitude * parts.interference;
        rb.Y = amplitude * parts.target + rb.interference_known;
        if (sigma2 > 0.0)
        {
            const Philox gen(noise_key);
            for (Eigen::Index k = 0; k < rb.Y.cols(); ++k)
                for (Eigen::Index i = 0; i < rb.Y.rows(); ++i)
                    rb.Y(i, k) += gen.complex_normal(std::uint64_t(k), std::uint64_t(i), sigma2);
        }
        return rb;
    }

    ReceivedBlock synthesize(const Scenario &s, const ChannelSet &ch, const SoundingFrames &frames,
                             std::uint64_t noise_key)
    {
        return synthesize(clean_signal(s, ch, frames), frames.amplitude(), s.sigma2(), noise_key);
    }

    double snr_to_power(double snr_db, double sigma2)
    {
        if (!std::isfinite(snr_db))
            throw Error(ErrorKind::domain, "SNR must be finite");
        return sigma2 * std::pow(10.0, snr_db / 10.0);
    }

    double interference_residual(const ChannelSet &ch, const SoundingFrames &frames)
    {
        double worst = 0.0;
        for (Eigen::Index k = 0; k < frames.fk.cols(); ++k)
            worst = std::max(worst, (ch.H5 * frames.fk.col(k)).norm());
        return worst;
    }
}
