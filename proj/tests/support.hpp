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

// Shared fixtures and independent oracles for the unit tests
#ifndef RISLOC_TEST_SUPPORT_HPP
#define RISLOC_TEST_SUPPORT_HPP

#include "risloc/harness.hpp"
#include "risloc/rng.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace risloc::test
{
    inline ArraySet default_arrays() { return ArraySet::paper_default(0.01); }

    inline ArraySet small_arrays(int m = 2, double lambda = 0.01)
    {
        return {UpaConfig::half_wavelength(m, m, ArrayPlane::yz, lambda), UpaConfig::half_wavelength(m, m, ArrayPlane::xy, lambda),
                UpaConfig::half_wavelength(m, m, ArrayPlane::xy, lambda)};
    }

    // Random but well-conditioned geometry: drone 5..40 m above and away from every anchor
    inline Scenario random_scenario(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Scenario s;
        s.bs = {0.0, 0.0, 26.0};
        s.ris = {0.3 * u(rng), 0.5 + 0.3 * u(rng), 25.5 + 0.3 * u(rng)};
        s.ue = {2.0 + u(rng), 2.0 + u(rng), 24.0 + u(rng)};
        s.drone = {3.0 + 2.0 * u(rng), 3.0 + 2.0 * u(rng), 30.0 + 4.0 * u(rng)};
        s.zeta = {1.0 + 0.5 * u(rng), 0.5 * u(rng)};
        return s;
    }

    // Central difference of a complex-vector-valued function of one real parameter
    inline CVec central_difference(const std::function<CVec(double)> &f, double x, double h)
    {
        return (f(x + h) - f(x - h)) / (2.0 * h);
    }

    inline double rel_err(const CVec &a, const CVec &b)
    {
        const double scale = std::max(a.norm(), b.norm());
        return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
    }

    // Plain exponential for the single-axis response, written independently of the library
    inline cd phase_term(double spacing_over_lambda, double offset, double g)
    {
        return std::exp(cd(0.0, 2.0 * pi * spacing_over_lambda * offset * g));
    }
}

#endif
