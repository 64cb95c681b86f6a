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

#ifndef NFISAC_CSV_HPP
#define NFISAC_CSV_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nfisac
{
    // Floating point values are written with 9 significant digits.
    std::string format_number(double value);

    class CsvWriter
    {
    public:
        using Cell = std::variant<double, long long, std::string>;

        // "# " + text
        CsvWriter &comment(std::string_view text);
        CsvWriter &header(std::initializer_list<std::string_view> columns);
        CsvWriter &row(std::initializer_list<Cell> cells);

        const std::string &str() const { return out_; }

    private:
        std::string out_;
    };

    // "# nfisac <runner> seed=<seed> scenario_hash=<16 hex digits>"
    std::string provenance_line(std::string_view runner, std::uint64_t seed, std::uint64_t scenario_hash);
}

#endif
