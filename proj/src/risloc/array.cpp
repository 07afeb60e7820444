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

#include "risloc/array.hpp"

#include <cmath>

namespace risloc
{
    void UpaConfig::validate() const
    {
        if (m_a < 1 || m_b < 1)
            throw Error(ErrorKind::config, "UpaConfig: element counts must be at least 1");
        if (!(d_a > 0.0) || !(d_b > 0.0))
            throw Error(ErrorKind::config, "UpaConfig: element spacings must be positive");
    }

    UpaConfig UpaConfig::half_wavelength(int m_a, int m_b, ArrayPlane plane, double lambda)
    {
        return {m_a, m_b, 0.5 * lambda, 0.5 * lambda, plane};
    }

    ArraySet ArraySet::paper_default(double lambda)
    {
        return {UpaConfig::half_wavelength(8, 8, ArrayPlane::yz, lambda),
                UpaConfig::half_wavelength(6, 6, ArrayPlane::xy, lambda),
                UpaConfig::half_wavelength(4, 4, ArrayPlane::xy, lambda)};
    }

    void ArraySet::validate() const
    {
        bs.validate();
        ris.validate();
        ue.validate();
        if (bs.plane != ArrayPlane::yz)
            throw Error(ErrorKind::config, "ArraySet: the BS array must lie in the y-z plane");
        if (ris.plane != ArrayPlane::xy || ue.plane != ArrayPlane::xy)
            throw Error(ErrorKind::config, "ArraySet: RIS and UE arrays must lie in the x-y plane");
    }

    std::pair<double, double> geometry_factors(ArrayPlane plane, const DirectionAngles &ang)
    {
        const double se = std::sin(ang.elevation);
        if (plane == ArrayPlane::xy)
            return {std::cos(ang.azimuth) * se, std::sin(ang.azimuth) * se};
        return {std::sin(ang.azimuth) * se, std::cos(ang.elevation)};
    }

    RVec centered_offsets(int m)
    {
        RVec n(m);
        for (int i = 0; i < m; ++i)
            n[i] = double(i) - 0.5 * double(m - 1);
        return n;
    }

    CVec alpha_axis(int m, double d, double lambda, double g)
    {
        const double k = 2.0 * pi * d / lambda * g;
        CVec a(m);
        for (int i = 0; i < m; ++i)
        {
            const double phase = k * (double(i) - 0.5 * double(m - 1));
            a[i] = cd(std::cos(phase), std::sin(phase));
        }
        return a;
    }

    CVec kron(const CVec &a, const CVec &b)
    {
        CVec out(a.size() * b.size());
        for (Eigen::Index i = 0; i < a.size(); ++i)
            out.segment(i * b.size(), b.size()) = a[i] * b;
        return out;
    }

    CVec steering_xy(const UpaConfig &cfg, const DirectionAngles &ang, double lambda)
    {
        if (cfg.plane != ArrayPlane::xy)
            throw Error(ErrorKind::config, "steering_xy: array is not in the x-y plane");
        const auto [gx, gy] = geometry_factors(ArrayPlane::xy, ang);
        return kron(alpha_axis(cfg.m_a, cfg.d_a, lambda, gx), alpha_axis(cfg.m_b, cfg.d_b, lambda, gy));
    }

    CVec steering_yz(const UpaConfig &cfg, const DirectionAngles &ang, double lambda)
    {
        if (cfg.plane != ArrayPlane::yz)
            throw Error(ErrorKind::config, "steering_yz: array is not in the y-z plane");
        const auto [gy, gz] = geometry_factors(ArrayPlane::yz, ang);
        return kron(alpha_axis(cfg.m_a, cfg.d_a, lambda, gy), alpha_axis(cfg.m_b, cfg.d_b, lambda, gz));
    }

    CVec steering(const UpaConfig &cfg, const DirectionAngles &ang, double lambda)
    {
        return cfg.plane == ArrayPlane::xy ? steering_xy(cfg, ang, lambda) : steering_yz(cfg, ang, lambda);
    }
}
