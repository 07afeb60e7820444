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

#include "support.hpp"

#include <doctest.h>

using namespace risloc;

TEST_CASE("single-element arrays respond with 1")
{
    const UpaConfig one = UpaConfig::half_wavelength(1, 1, ArrayPlane::xy, 0.01);
    const CVec a = steering(one, {0.3, 0.7}, 0.01);
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a(0) - cd(1.0)) < 1e-15);
}

TEST_CASE("steering vectors have unit-modulus entries")
{
    const ArraySet arr = test::default_arrays();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> az(-pi, pi), el(-pi / 2, pi / 2);
    for (int i = 0; i < 100; ++i)
    {
        const DirectionAngles d{az(rng), el(rng)};
        for (const UpaConfig *c : {&arr.bs, &arr.ris, &arr.ue})
        {
            const CVec a = steering(*c, d, 0.01);
            CHECK(a.size() == c->size());
            CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
            CHECK(a.norm() == doctest::Approx(std::sqrt(double(c->size()))).epsilon(1e-12));
        }
    }
}

TEST_CASE("x-y response entries match the explicit phase formula")
{
    const UpaConfig c = UpaConfig::half_wavelength(3, 4, ArrayPlane::xy, 0.02);
    const DirectionAngles d{0.4, 0.9};
    const CVec a = steering_xy(c, d, 0.02);
    const double gx = std::cos(d.azimuth) * std::sin(d.elevation), gy = std::sin(d.azimuth) * std::sin(d.elevation);
    for (int ix = 0; ix < 3; ++ix)
        for (int iy = 0; iy < 4; ++iy)
        {
            const cd expect = test::phase_term(0.5, ix - 1.0, gx) * test::phase_term(0.5, iy - 1.5, gy);
            CHECK(std::abs(a(ix * 4 + iy) - expect) < 1e-13);
        }
}

TEST_CASE("y-z response entries match the explicit phase formula")
{
    const UpaConfig c = UpaConfig::half_wavelength(4, 2, ArrayPlane::yz, 0.01);
    const DirectionAngles d{-0.7, 0.35};
    const CVec a = steering_yz(c, d, 0.01);
    const double gy = std::sin(d.azimuth) * std::sin(d.elevation), gz = std::cos(d.elevation);
    for (int iy = 0; iy < 4; ++iy)
        for (int iz = 0; iz < 2; ++iz)
        {
            const cd expect = test::phase_term(0.5, iy - 1.5, gy) * test::phase_term(0.5, iz - 0.5, gz);
            CHECK(std::abs(a(iy * 2 + iz) - expect) < 1e-13);
        }
}

TEST_CASE("non-half-wavelength spacing scales the phase progression")
{
    UpaConfig c = UpaConfig::half_wavelength(2, 1, ArrayPlane::xy, 0.01);
    c.d_a = 0.0075; // 0.75 lambda
    const DirectionAngles d{0.0, 0.5};
    const CVec a = steering(c, d, 0.01);
    CHECK(std::abs(a(1) / a(0) - test::phase_term(0.75, 1.0, std::sin(0.5))) < 1e-13);
}

TEST_CASE("reversed directions give the same x-y response")
{
    const UpaConfig c = UpaConfig::half_wavelength(6, 6, ArrayPlane::xy, 0.01);
    const Scenario s;
    const CVec fwd = steering(c, direction_angles(s.ris, s.bs), 0.01);
    const CVec rev = steering(c, direction_angles(s.bs, s.ris), 0.01);
    CHECK((fwd - rev).norm() < 1e-12);
}

TEST_CASE("plane mismatches and invalid arrays are rejected")
{
    const UpaConfig xy = UpaConfig::half_wavelength(2, 2, ArrayPlane::xy, 0.01);
    const UpaConfig yz = UpaConfig::half_wavelength(2, 2, ArrayPlane::yz, 0.01);
    CHECK_THROWS_AS(steering_yz(xy, {}, 0.01), Error);
    CHECK_THROWS_AS(steering_xy(yz, {}, 0.01), Error);
    UpaConfig bad = xy;
    bad.m_a = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = xy;
    bad.d_b = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    ArraySet set = test::default_arrays();
    std::swap(set.bs, set.ris);
    CHECK_THROWS_AS(set.validate(), Error);
}

TEST_CASE("Kronecker order: first axis varies slowest")
{
    CVec a(2), b(3);
    a << 1.0, 2.0;
    b << 1.0, 10.0, 100.0;
    const CVec k = kron(a, b);
    REQUIRE(k.size() == 6);
    CHECK(k(1).real() == 10.0);
    CHECK(k(3).real() == 2.0);
    CHECK(k(5).real() == 200.0);
    CHECK(centered_offsets(4)(0) == -1.5);
    CHECK(centered_offsets(1)(0) == 0.0);
}
