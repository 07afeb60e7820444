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

#ifndef RISLOC_RNG_HPP
#define RISLOC_RNG_HPP

#include "risloc/common.hpp"

#include <array>
#include <cstdint>

namespace risloc
{
    // Counter-based generator (Philox4x32 with 10 rounds).
    // A stream is identified by a 64-bit key; the 128-bit counter addresses individual blocks,
    // so any draw can be reproduced without replaying the preceding ones.
    class Philox
    {
    public:
        using Block = std::array<std::uint32_t, 4>;

        explicit Philox(std::uint64_t key) : key_{std::uint32_t(key), std::uint32_t(key >> 32)} {}

        // Raw output block for counter (c_hi, c_lo)
        Block block(std::uint64_t c_hi, std::uint64_t c_lo) const;

        // Two independent standard normal values from counter (c_hi, c_lo)
        std::array<double, 2> normal_pair(std::uint64_t c_hi, std::uint64_t c_lo) const;

        // Circularly-symmetric complex normal with E|z|^2 = variance
        cd complex_normal(std::uint64_t c_hi, std::uint64_t c_lo, double variance = 1.0) const;

        // Uniform value in [0, 1)
        double uniform(std::uint64_t c_hi, std::uint64_t c_lo) const;

    private:
        std::array<std::uint32_t, 2> key_;
    };

    // Derive an independent stream key from a parent key and a tag (splitmix64 finalizer chain)
    std::uint64_t derive_key(std::uint64_t parent, std::uint64_t tag);

    template <typename... Tags>
    std::uint64_t derive_key(std::uint64_t parent, std::uint64_t tag, Tags... more)
    {
        return derive_key(derive_key(parent, tag), std::uint64_t(more)...);
    }

    // Stream tags, one per consumer of randomness
    namespace stream
    {
        constexpr std::uint64_t sky_beams = 0x736b79;
        constexpr std::uint64_t ris_phase = 0x726973;
        constexpr std::uint64_t noise = 0x6e6f6973;
        constexpr std::uint64_t cgd_init = 0x636764;
        constexpr std::uint64_t trial = 0x7472;
    }
}

#endif
