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

#ifndef RISLOC_CONFIG_HPP
#define RISLOC_CONFIG_HPP

#include "risloc/estimator.hpp"
#include "risloc/fisher.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risloc
{
    struct SweepConfig
    {
        std::vector<double> snr_db{-10.0, -7.5, -5.0, -2.5, 0.0, 2.5, 5.0, 7.5, 10.0};
        std::vector<int> K{60};
        std::vector<double> zeta{1.0}; // real RCS magnitudes; the phase of target.zeta is kept
        int trials = 200;
        std::uint64_t seed = 1; // master seed of the Monte Carlo streams
        bool ris_enabled = true;
        int threads = 0; // 0 = hardware concurrency
        PebMethod peb_method = PebMethod::verbatim;

        void validate() const;
    };

    // Everything needed to reproduce one experiment
    struct SimConfig
    {
        Scenario scenario;
        ArraySet arrays = ArraySet::paper_default(0.01);
        SoundingPolicy sounding;
        std::uint64_t sounding_seed = 1; // fixes sky beams and random RIS phases
        EstimatorConfig estimator;
        SweepConfig sweep;

        void validate() const;
    };

    // Strict JSON parsing: unknown keys and wrong types are Error(config).
    SimConfig load_config_string(const std::string &json_text);
    SimConfig load_config_file(const std::string &path);

    // "a:b:step" (inclusive) or a single number
    std::vector<double> parse_range(const std::string &spec);
    // Comma-separated list
    std::vector<double> parse_list(const std::string &spec);
}

#endif
