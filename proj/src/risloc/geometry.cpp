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

#include "risloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace risloc
{
    namespace
    {
        LogSink g_log_sink = [](const char *message)
        { std::fprintf(stderr, "risloc: warning: %s\n", message); };

        void require_distinct(const Point3 &a, const Point3 &b, const char *what)
        {
            if (distance(a, b) <= 0.0)
                throw Error(ErrorKind::config, std::string("Scenario: coincident positions (") + what + ")");
        }
    }

    void set_log_sink(LogSink sink) { g_log_sink = sink; }

    void log_warning(const std::string &message)
    {
        if (g_log_sink != nullptr)
            g_log_sink(message.c_str());
    }

    bool Point3::is_finite() const
    {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    double Scenario::sigma2() const
    {
        return noise_power_w > 0.0 ? noise_power_w : thermal_noise_power_w(bandwidth_hz);
    }

    void Scenario::validate() const
    {
        for (const Point3 *p : {&bs, &ris, &ue, &drone})
            if (!p->is_finite())
                throw Error(ErrorKind::config, "Scenario: node position is not finite");
        if (!(lambda > 0.0))
            throw Error(ErrorKind::config, "Scenario: wavelength must be positive");
        if (!(gamma >= 0.0))
            throw Error(ErrorKind::config, "Scenario: path-loss exponent must be non-negative");
        if (!(bandwidth_hz > 0.0))
            throw Error(ErrorKind::config, "Scenario: bandwidth must be positive");
        if (!(noise_power_w >= 0.0) || !std::isfinite(noise_power_w))
            throw Error(ErrorKind::config, "Scenario: noise power must be non-negative and finite");
        if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()))
            throw Error(ErrorKind::config, "Scenario: RCS is not finite");
        require_distinct(bs, ris, "bs/ris");
        require_distinct(bs, ue, "bs/ue");
        require_distinct(bs, drone, "bs/drone");
        require_distinct(ris, ue, "ris/ue");
        require_distinct(ris, drone, "ris/drone");
        require_distinct(ue, drone, "ue/drone");
    }

    double distance(const Point3 &a, const Point3 &b)
    {
        return (b.vec() - a.vec()).norm();
    }

    double path_loss(double d, double gamma)
    {
        if (!(d > 0.0))
            throw Error(ErrorKind::domain, "path_loss: distance must be positive");
        return std::pow(d, gamma);
    }

    DirectionAngles direction_angles(const Point3 &from, const Point3 &to)
    {
        const Eigen::Vector3d delta = to.vec() - from.vec();
        const double d = delta.norm();
        if (!(d > 0.0))
            throw Error(ErrorKind::singular_geometry, "direction_angles: coincident points");

        double az = std::atan2(delta.y(), delta.x());
        if (az <= -pi) // atan2 may return -pi for a negative-zero y; the range is (-pi, pi]
            az = pi;
        const double el = std::asin(std::clamp(delta.z() / d, -1.0, 1.0));
        return {az, el};
    }

    Eigen::Vector3d unit_direction(const DirectionAngles &ang)
    {
        const double ce = std::cos(ang.elevation);
        return {std::cos(ang.azimuth) * ce, std::sin(ang.azimuth) * ce, std::sin(ang.elevation)};
    }

    Eigen::Matrix<double, 3, 2> angle_gradient(const Point3 &anchor, const Point3 &target)
    {
        const DirectionAngles a = direction_angles(anchor, target);
        const double d = distance(anchor, target);
        const double ct = std::cos(a.azimuth), st = std::sin(a.azimuth);
        const double cp = std::cos(a.elevation), sp = std::sin(a.elevation);
        if (std::abs(cp) < 1e-12)
        {
            std::ostringstream msg;
            msg << "angle_gradient: target is at zenith/nadir of anchor (" << anchor.x << ", " << anchor.y << ", "
                << anchor.z << "), azimuth undefined";
            throw Error(ErrorKind::singular_geometry, msg.str());
        }

        Eigen::Matrix<double, 3, 2> g;
        g(0, 0) = -st / (d * cp);
        g(1, 0) = ct / (d * cp);
        g(2, 0) = 0.0;
        g(0, 1) = -ct * sp / d;
        g(1, 1) = -st * sp / d;
        g(2, 1) = cp / d;
        return g;
    }

    JacobianT jacobian_T(const Scenario &s)
    {
        JacobianT T = JacobianT::Zero();
        T.block<3, 2>(0, 4) = angle_gradient(s.bs, s.drone);
        T.block<3, 2>(0, 6) = angle_gradient(s.ris, s.drone);
        T.block<3, 2>(0, 8) = angle_gradient(s.ue, s.drone);
        return T;
    }

    double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

    double thermal_noise_power_w(double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0))
            throw Error(ErrorKind::domain, "thermal_noise_power_w: bandwidth must be positive");
        return dbm_to_watt(-174.0 + 10.0 * std::log10(bandwidth_hz));
    }
}
