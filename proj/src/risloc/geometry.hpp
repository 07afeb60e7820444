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

#ifndef RISLOC_GEOMETRY_HPP
#define RISLOC_GEOMETRY_HPP

#include "risloc/common.hpp"

namespace risloc
{
    // Cartesian position in meters
    struct Point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        Eigen::Vector3d vec() const { return {x, y, z}; }
        static Point3 from(const Eigen::Vector3d &v) { return {v.x(), v.y(), v.z()}; }
        bool is_finite() const;
        friend bool operator==(const Point3 &, const Point3 &) = default;
    };

    // Direction of a ray leaving an array.
    // Azimuth is measured in the x-y plane from +x in (-pi, pi]; elevation from the x-y plane in [-pi/2, pi/2].
    struct DirectionAngles
    {
        double azimuth = 0.0;
        double elevation = 0.0;
    };

    // Geometric and link-budget truth of one simulation point.
    struct Scenario
    {
        Point3 bs{0.0, 0.0, 26.0};
        Point3 ris{0.0, 0.5, 25.5};
        Point3 ue{2.0, 2.0, 24.0};
        Point3 drone{3.0, 3.0, 30.0};
        double lambda = 0.01;      // carrier wavelength [m]
        double gamma = 2.0;        // path-loss exponent, rho = d^gamma
        cd zeta{1.0, 0.0};         // radar cross section (complex reflection coefficient)
        double bandwidth_hz = 20e6;
        double noise_power_w = 0.0; // sigma^2; 0 means "derive from bandwidth"

        // Noise power actually used: the stored value, or -174 dBm/Hz + 10 log10(B) when unset.
        double sigma2() const;

        // Throws Error(config) when an invariant is violated.
        void validate() const;
    };

    double distance(const Point3 &a, const Point3 &b);

    // rho = d^gamma; throws Error(domain) for d <= 0
    double path_loss(double d, double gamma);

    // Direction from `from` towards `to`; throws Error(singular_geometry) for coincident points.
    DirectionAngles direction_angles(const Point3 &from, const Point3 &to);

    // Unit vector [cos(az) cos(el), sin(az) cos(el), sin(el)]
    Eigen::Vector3d unit_direction(const DirectionAngles &ang);

    // Gradient of (azimuth, elevation) of the ray anchor -> target with respect to the target position.
    // Column 0 is d(azimuth)/d(x,y,z), column 1 is d(elevation)/d(x,y,z).
    Eigen::Matrix<double, 3, 2> angle_gradient(const Point3 &anchor, const Point3 &target);

    // Jacobian of the 10 unknowns [Re et, Im et, Re eh, Im eh, az_bs, el_bs, az_ris, el_ris, az_ue, el_ue]
    // with respect to the drone position (rows x, y, z). Columns 0..3 are zero.
    using JacobianT = Eigen::Matrix<double, 3, 10>;
    JacobianT jacobian_T(const Scenario &s);

    double dbm_to_watt(double dbm);
    double watt_to_dbm(double watt);

    // Thermal noise floor -174 dBm/Hz integrated over the bandwidth, in watts
    double thermal_noise_power_w(double bandwidth_hz);
}

#endif
