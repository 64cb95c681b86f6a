// SPDX-License-Identifier: Apache-2.0
//
// nfisac: near-field sensing and communication simulation library
// Copyright (C) 2026 The nfisac authors
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

#ifndef NFISAC_RNG_HPP
#define NFISAC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace nfisac
{
    // Counter-based generator: draw i of stream s under seed k is mix(k, s, i), so streams are
    // independent of draw order and identical on every platform with IEEE doubles.
    class CounterRng
    {
    public:
        CounterRng(std::uint64_t seed, std::uint64_t stream)
            : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

        std::uint64_t next_u64()
        {
            return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
        }

        // Uniform on [0, 1) with 53 random bits.
        double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Standard normal via Box-Muller; one draw per call.
        double normal()
        {
            const double u1 = 1.0 - uniform(); // (0, 1]
            const double u2 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }

        // Circularly symmetric complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance = 1.0)
        {
            const double s = std::sqrt(0.5 * variance);
            const double re = normal();
            const double im = normal();
            return {s * re, s * im};
        }

        std::uint64_t counter() const { return counter_; }

    private:
        static std::uint64_t mix64(std::uint64_t z)
        {
            // splitmix64 finalizer
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

        std::uint64_t key_;
        std::uint64_t counter_ = 0;
    };
}

#endif
