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

#include "risloc/sounding.hpp"
#include "risloc/rng.hpp"

#include <cmath>

namespace risloc
{
    void SoundingPolicy::validate() const
    {
        if (grid_az < 1 || grid_el < 1)
            throw Error(ErrorKind::config, "sounding: codebook grid must have at least one cell per axis");
        if (!(az_max >= az_min) || !(el_max >= el_min) || !std::isfinite(az_min) || !std::isfinite(az_max) ||
            !std::isfinite(el_min) || !std::isfinite(el_max))
            throw Error(ErrorKind::config, "sounding: invalid codebook sector");
        if (el_min < -pi / 2 || el_max > pi / 2)
            throw Error(ErrorKind::config, "sounding: codebook elevation outside [-90, 90] deg");
    }

    double PilotPower::amplitude() const
    {
        if (!(P >= 0.0) || !std::isfinite(P))
            throw Error(ErrorKind::domain, "pilot power must be finite and non-negative");
        return std::sqrt(0.5 * P);
    }

    SoundingFrames SoundingFrames::prefix(int k) const
    {
        if (k < 1 || k > K())
            throw Error(ErrorKind::domain, "frame prefix length out of range");
        SoundingFrames out = *this;
        out.fk = fk.leftCols(k);
        out.omega = omega.leftCols(k);
        out.Omega_bar = Omega_bar.leftCols(k);
        out.F_bar = F_bar.leftCols(k);
        return out;
    }

    CVec design_f0(const UpaConfig &bs, const Scenario &s)
    {
        return steering(bs, direction_angles(s.bs, s.ris), s.lambda);
    }

    CMat design_sky_beams(const UpaConfig &bs, const Scenario &s, int K, std::uint64_t seed, SkyBeamPolicy policy)
    {
        const int M = bs.size();
        if (M <= 2)
            throw Error(ErrorKind::infeasible_design, "sky beams need at least 3 BS antennas (null space of [f0, g0] is empty)");
        if (K < 1)
            throw Error(ErrorKind::domain, "number of slots K must be >= 1");

        CMat F(M, 2);
        F.col(0) = design_f0(bs, s);
        F.col(1) = steering(bs, direction_angles(s.bs, s.ue), s.lambda);

        // Columns 2.. of the full unitary factor span the orthogonal complement of span{f0, g0}
        const Eigen::HouseholderQR<CMat> qr(F);
        const CMat Q = qr.householderQ() * CMat::Identity(M, M);
        const CMat N = Q.rightCols(M - 2);

        const Philox gen(derive_key(seed, stream::sky_beams));
        const int block = M - 2;
        CMat coef(block, K); // null-space coordinates, orthonormalized per block
        for (int k = 0; k < K; ++k)
        {
            CVec c(block);
            for (int i = 0; i < block; ++i)
                c(i) = gen.complex_normal(std::uint64_t(k), std::uint64_t(i));
            if (policy == SkyBeamPolicy::orthogonal)
            {
                // Two passes of Gram-Schmidt against the earlier slots of the same block
                for (int pass = 0; pass < 2; ++pass)
                    for (int j = k - k % block; j < k; ++j)
                        c -= coef.col(j) * coef.col(j).dot(c);
            }
            coef.col(k) = c.normalized();
        }

        CMat out(M, K);
        for (int k = 0; k < K; ++k)
        {
            CVec v = N * coef.col(k);
            // Re-project to clear round-off leakage onto f0 and g0
            v = N * (N.adjoint() * v);
            out.col(k) = v * (std::sqrt(double(M)) / v.norm());
        }
        return out;
    }

    CMat design_ris_profiles(const UpaConfig &ris, const Scenario &s, int K, std::uint64_t seed,
                             const SoundingPolicy &policy)
    {
        if (K < 1)
            throw Error(ErrorKind::domain, "number of slots K must be >= 1");
        policy.validate();
        const int M = ris.size();
        CMat out(M, K);

        if (policy.ris_policy == RisPolicy::random_phase)
        {
            const Philox gen(derive_key(seed, stream::ris_phase));
            for (int k = 0; k < K; ++k)
                for (int i = 0; i < M; ++i)
                    out(i, k) = std::polar(1.0, 2.0 * pi * gen.uniform(std::uint64_t(k), std::uint64_t(i)));
            return out;
        }

        const CVec a_r1 = steering(ris, direction_angles(s.ris, s.bs), s.lambda);
        const int cells = policy.grid_az * policy.grid_el;
        const double step_az = (policy.az_max - policy.az_min) / policy.grid_az;
        const double step_el = (policy.el_max - policy.el_min) / policy.grid_el;
        for (int k = 0; k < K; ++k)
        {
            const int c = k % cells;
            const DirectionAngles dir{policy.az_min + (c % policy.grid_az + 0.5) * step_az,
                                      policy.el_min + (c / policy.grid_az + 0.5) * step_el};
            const CVec b = steering(ris, dir, s.lambda);
            for (int i = 0; i < M; ++i)
                out(i, k) = std::polar(1.0, std::arg(b(i)) - std::arg(a_r1(i)));
        }
        return out;
    }

    std::pair<CMat, CMat> assemble_effective(const ChannelSet &ch, const SoundingFrames &frames)
    {
        const Eigen::Index M_B = ch.h2.size(), M_R = ch.h3.size();
        if (frames.f0.size() != M_B || frames.fk.rows() != M_B || frames.omega.rows() != M_R ||
            frames.a_r1.size() != M_R || frames.fk.cols() != frames.omega.cols())
            throw Error(ErrorKind::config, "sounding: frame dimensions do not match the channel set");

        CMat Omega_bar = frames.c1 * (frames.a_r1.asDiagonal() * frames.omega);
        CMat F_bar = frames.fk.colwise() + frames.f0;
        return {std::move(Omega_bar), std::move(F_bar)};
    }

    SoundingFrames design_frames(const Scenario &s, const ArraySet &arrays, int K, std::uint64_t seed,
                                 const SoundingPolicy &policy, double power_w)
    {
        s.validate();
        arrays.validate();
        SoundingFrames fr;
        fr.f0 = design_f0(arrays.bs, s);
        fr.g0 = steering(arrays.bs, direction_angles(s.bs, s.ue), s.lambda);
        fr.fk = design_sky_beams(arrays.bs, s, K, seed, policy.sky_policy);
        fr.omega = design_ris_profiles(arrays.ris, s, K, seed, policy);
        fr.a_r1 = steering(arrays.ris, direction_angles(s.ris, s.bs), s.lambda);
        fr.c1 = double(arrays.bs.size()) * propagation_gain(distance(s.bs, s.ris), s);
        fr.power.P = power_w;
        fr.Omega_bar = fr.c1 * (fr.a_r1.asDiagonal() * fr.omega);
        fr.F_bar = fr.fk.colwise() + fr.f0;
        return fr;
    }
}
