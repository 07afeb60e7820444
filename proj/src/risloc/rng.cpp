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

#include "risloc/rng.hpp"

#include <cmath>

namespace risloc
{
    namespace
    {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            const std::uint64_t p = std::uint64_t(a) * b;
            hi = std::uint32_t(p >> 32);
            lo = std::uint32_t(p);
        }

        // 53-bit uniform in (0, 1], never zero so log() is safe
        inline double to_unit_open(std::uint32_t hi, std::uint32_t lo)
        {
            const std::uint64_t u = (std::uint64_t(hi) << 21) ^ (lo >> 11);
            return (double(u & ((1ull << 53) - 1)) + 1.0) * 0x1.0p-53;
        }
    }

    Philox::Block Philox::block(std::uint64_t c_hi, std::uint64_t c_lo) const
    {
        Block c{std::uint32_t(c_lo), std::uint32_t(c_lo >> 32), std::uint32_t(c_hi), std::uint32_t(c_hi >> 32)};
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int r = 0; r < 10; ++r)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(M0, c[0], hi0, lo0);
            mulhilo(M1, c[2], hi1, lo1);
            c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
            k0 += W0;
            k1 += W1;
        }
        return c;
    }

    std::array<double, 2> Philox::normal_pair(std::uint64_t c_hi, std::uint64_t c_lo) const
    {
        const Block b = block(c_hi, c_lo);
        const double u1 = to_unit_open(b[0], b[1]);
        const double u2 = to_unit_open(b[2], b[3]);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    cd Philox::complex_normal(std::uint64_t c_hi, std::uint64_t c_lo, double variance) const
    {
        const auto n = normal_pair(c_hi, c_lo);
        const double s = std::sqrt(0.5 * variance);
        return {s * n[0], s * n[1]};
    }

    double Philox::uniform(std::uint64_t c_hi, std::uint64_t c_lo) const
    {
        const Block b = block(c_hi, c_lo);
        return 1.0 - to_unit_open(b[0], b[1]);
    }

    std::uint64_t derive_key(std::uint64_t parent, std::uint64_t tag)
    {
        auto mix = [](std::uint64_t z)
        {
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        };
        return mix(mix(parent + 0x9E3779B97F4A7C15ull) ^ (tag * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
    }
}
