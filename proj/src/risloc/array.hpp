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

#ifndef RISLOC_ARRAY_HPP
#define RISLOC_ARRAY_HPP

#include "risloc/geometry.hpp"

#include <utility>

namespace risloc
{
    // Orientation of a uniform planar array. The BS array lies in the y-z plane, RIS and UE arrays
    // are parallel to the x-y plane (facing the sky).
    enum class ArrayPlane
    {
        yz,
        xy
    };

    // Uniform planar array. Elements are enumerated with the first-axis index varying slowest,
    // i.e. the response is alpha_first (x) alpha_second in Kronecker order.
    struct UpaConfig
    {
        int m_a = 1;      // elements along the first axis (y for yz, x for xy)
        int m_b = 1;      // elements along the second axis (z for yz, y for xy)
        double d_a = 0.0; // spacing along the first axis [m]
        double d_b = 0.0; // spacing along the second axis [m]
        ArrayPlane plane = ArrayPlane::xy;

        int size() const { return m_a * m_b; }
        void validate() const;

        static UpaConfig half_wavelength(int m_a, int m_b, ArrayPlane plane, double lambda);
    };

    struct ArraySet
    {
        UpaConfig bs, ris, ue;

        // 8x8 BS (y-z), 6x6 RIS (x-y), 4x4 UE (x-y), half-wavelength spacing
        static ArraySet paper_default(double lambda);
        void validate() const;
    };

    // Per-axis geometry factors (g_a, g_b) of the steering vector for a given plane:
    //   xy: (cos(az) sin(el), sin(az) sin(el))
    //   yz: (sin(az) sin(el), cos(el))
    std::pair<double, double> geometry_factors(ArrayPlane plane, const DirectionAngles &ang);

    // Centered element offsets i - (m-1)/2, i = 0..m-1
    RVec centered_offsets(int m);

    // Single-axis response: entry i is exp(j 2 pi d/lambda (i - (m-1)/2) g)
    CVec alpha_axis(int m, double d, double lambda, double g);

    // alpha_x (x) alpha_y for sky-facing arrays; throws Error(config) on a y-z array
    CVec steering_xy(const UpaConfig &cfg, const DirectionAngles &ang, double lambda);

    // alpha_y (x) alpha_z for the BS array; throws Error(config) on an x-y array
    CVec steering_yz(const UpaConfig &cfg, const DirectionAngles &ang, double lambda);

    // Dispatches on cfg.plane
    CVec steering(const UpaConfig &cfg, const DirectionAngles &ang, double lambda);

    // Kronecker product of two vectors, first argument varying slowest
    CVec kron(const CVec &a, const CVec &b);
}

#endif
