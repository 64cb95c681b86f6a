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

#ifndef NFISAC_NUMERIC_HPP
#define NFISAC_NUMERIC_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nfisac
{
    // count points from lo to hi inclusive
    inline std::vector<double> linspace(double lo, double hi, int count)
    {
        if (count < 1)
            return {};
        if (count == 1)
            return {lo};
        std::vector<double> out(count);
        const double step = (hi - lo) / (count - 1);
        for (int i = 0; i < count; ++i)
            out[i] = lo + step * i;
        out.back() = hi;
        return out;
    }

    // count points from lo to hi inclusive, uniformly spaced in log10
    inline std::vector<double> logspace(double lo, double hi, int count)
    {
        if (!(lo > 0.0 && hi > 0.0))
            throw std::invalid_argument("logspace: bounds must be positive");
        std::vector<double> out = linspace(std::log10(lo), std::log10(hi), count);
        for (double &v : out)
            v = std::pow(10.0, v);
        if (count >= 1)
            out.front() = lo;
        if (count >= 2)
            out.back() = hi;
        return out;
    }
}

#endif
