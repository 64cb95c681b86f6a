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

#include "nfisac/csv.hpp"

#include <cinttypes>
#include <cstdio>

namespace nfisac
{
    std::string format_number(double value)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.9g", value);
        return buf;
    }

    CsvWriter &CsvWriter::comment(std::string_view text)
    {
        out_ += "# ";
        out_ += text;
        out_ += '\n';
        return *this;
    }

    CsvWriter &CsvWriter::header(std::initializer_list<std::string_view> columns)
    {
        bool first = true;
        for (auto c : columns)
        {
            if (!first)
                out_ += ',';
            out_ += c;
            first = false;
        }
        out_ += '\n';
        return *this;
    }

    CsvWriter &CsvWriter::row(std::initializer_list<Cell> cells)
    {
        bool first = true;
        for (const auto &c : cells)
        {
            if (!first)
                out_ += ',';
            first = false;
            if (const double *d = std::get_if<double>(&c))
                out_ += format_number(*d);
            else if (const long long *i = std::get_if<long long>(&c))
                out_ += std::to_string(*i);
            else
                out_ += std::get<std::string>(c);
        }
        out_ += '\n';
        return *this;
    }

    std::string provenance_line(std::string_view runner, std::uint64_t seed, std::uint64_t scenario_hash)
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, "nfisac %.*s seed=%" PRIu64 " scenario_hash=%016" PRIx64, int(runner.size()),
                      runner.data(), seed, scenario_hash);
        return buf;
    }
}
